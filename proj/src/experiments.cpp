#include "ncv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ncv/analysis.hpp"
#include "ncv/random_states.hpp"

namespace ncv {

namespace {

unsigned log2_or_fail(std::uint64_t dim) {
  unsigned k = 0;
  std::uint64_t d = 1;
  while (d < dim) {
    d <<= 1;
    ++k;
  }
  if (d != dim) fail(Errc::dim_mismatch, "value register dimension is not a power of two");
  return k;
}

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

json instance_summary(const GapInstance& inst) {
  return json{{"N", inst.system.n_vars},
              {"R", inst.system.r()},
              {"q", inst.system.arity},
              {"sigma", inst.system.alphabet},
              {"delta", inst.delta},
              {"label", gap_label_name(inst.label)},
              {"local_value", local_value(inst.system)}};
}

}  // namespace

ResolvedSetup resolve_setup(const std::string& preset, DetectorKind kind, std::uint32_t kappa, double xi,
                            double c_yes) {
  ResolvedSetup out;
  out.preset = preset;
  if (preset == "diagnostic") {
    if (kappa != 4) fail(Errc::bad_argument, "the diagnostic preset is pinned to kappa = 4");
    out.params = diagnostic_params(kind);
  } else if (preset == "proof") {
    out.params = proof_params(kappa, xi, c_yes, kind);
  } else {
    fail(Errc::parse_error, "unknown preset '" + preset + "' (expected \"diagnostic\" or \"proof\")");
  }
  out.det = DetectorSpec{kind, log2_or_fail(kappa), out.params.epsilon, out.params.delta};
  return out;
}

namespace {

std::string case_csv_row(const AcceptanceProfile& profile, const CaseResult& c) {
  char buf[200];
  std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%s\n", c.case_id, profile.w_d, profile.w_q,
                profile.w_c, c.p_no, c.bound, c.holds ? "true" : "false");
  return buf;
}

}  // namespace

VerifyResult run_verify(const VerifyOptions& opts) {
  const GapInstance& inst = opts.instance;
  inst.system.validate();
  const std::uint32_t kappa = static_cast<std::uint32_t>(inst.system.kappa());
  const ResolvedSetup setup = resolve_setup(opts.preset, opts.kind, kappa);

  BipartiteWitness witness;
  std::string source;
  json search = json();
  if (opts.witness) {
    witness = *opts.witness;
    if (witness.r != inst.system.r() || witness.kappa != kappa)
      fail(Errc::dim_mismatch, "witness shape does not match the instance");
    source = "file";
  } else if (inst.label == GapLabel::yes) {
    const auto assignment = find_satisfying_assignment(inst.system);
    if (!assignment) fail(Errc::bad_argument, "instance is labeled yes but has no satisfying assignment");
    witness = build_rigid_witness(induced_sigma(inst.system, *assignment), inst.system.r(), kappa);
    source = "planted";
  } else {
    std::vector<std::uint32_t> best_sigma;
    const double max_accept = exhaustive_rigid_search(inst.system, setup.params, setup.det, &best_sigma);
    witness = build_rigid_witness(best_sigma, inst.system.r(), kappa);
    source = "rigid_search";
    search = json{{"max_accept", max_accept},
                  {"measured_gap", setup.params.p_yes - max_accept},
                  {"sigma", best_sigma}};
  }

  AcceptanceProfile profile;
  const double analytic = protocol_accept_prob(witness, inst.system, setup.params, setup.det, &profile);

  Rng rng(opts.seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < opts.samples; ++i)
    hits += static_cast<std::size_t>(protocol_sample(witness, inst.system, setup.params, setup.det, rng));
  const double empirical = static_cast<double>(hits) / static_cast<double>(opts.samples);
  const double sigma = std::sqrt(std::max(0.0, analytic * (1.0 - analytic)) / static_cast<double>(opts.samples));
  const bool divergent = sigma > 0.0 ? std::abs(empirical - analytic) > 4.0 * sigma : empirical != analytic;

  const CaseResult c = classify_soundness_case(profile, setup.params);

  std::string cases_csv = "case,w_d,w_q,w_c,p_no,bound,holds\n";
  cases_csv += case_csv_row(profile, c);
  if (source == "rigid_search" && std::pow(static_cast<double>(kappa), inst.system.r()) <= 4096.0) {
    std::vector<std::uint32_t> sigma(inst.system.r(), 0);
    for (;;) {
      const BipartiteWitness rigid = build_rigid_witness(sigma, inst.system.r(), kappa);
      AcceptanceProfile p;
      protocol_accept_prob(rigid, inst.system, setup.params, setup.det, &p);
      cases_csv += case_csv_row(p, classify_soundness_case(p, setup.params));
      std::size_t pos = 0;
      while (pos < inst.system.r() && ++sigma[pos] == kappa) sigma[pos++] = 0;
      if (pos == inst.system.r()) break;
    }
  }

  json report{{"preset", setup.preset},
              {"detector", detector_to_json(setup.det)},
              {"params", params_to_json(setup.params)},
              {"instance", instance_summary(inst)},
              {"witness_source", source},
              {"analytic", analytic},
              {"empirical", empirical},
              {"samples", opts.samples},
              {"seed", opts.seed},
              {"sigma", sigma},
              {"divergent", divergent},
              {"profile", profile_to_json(profile)},
              {"case", json{{"id", c.case_id}, {"p_no", c.p_no}, {"bound", c.bound}, {"holds", c.holds}}}};
  if (!search.is_null()) report["rigid_search"] = search;
  return VerifyResult{std::move(report), std::move(cases_csv)};
}

namespace {

struct ScatterPoint {
  double w_d, w_q;
};

std::string region_svg(double kappa, const std::vector<std::pair<double, double>>& boundary,
                       const std::vector<ScatterPoint>& scatter) {
  constexpr double size = 640.0, margin = 64.0;
  const double span = size - 2.0 * margin;
  const auto px = [&](double x) { return margin + x * span; };
  const auto py = [&](double y) { return size - margin - y * span; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
  svg += "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";

  // forbidden region: above the boundary for w_D >= 1/kappa
  std::string poly;
  for (const auto& [wd, wq] : boundary) poly += fmt("%.3f", px(wd)) + "," + fmt("%.3f", py(wq)) + " ";
  poly += fmt("%.3f", px(1.0)) + "," + fmt("%.3f", py(1.0)) + " ";
  poly += fmt("%.3f", px(1.0 / kappa)) + "," + fmt("%.3f", py(1.0)) + " ";
  svg += "<polygon points=\"" + poly + "\" fill=\"#d62728\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";

  std::string line;
  for (const auto& [wd, wq] : boundary) line += fmt("%.3f", px(wd)) + "," + fmt("%.3f", py(wq)) + " ";
  svg += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";

  for (const ScatterPoint& p : scatter)
    svg += "<circle cx=\"" + fmt("%.3f", px(p.w_d)) + "\" cy=\"" + fmt("%.3f", py(p.w_q)) +
           "\" r=\"2\" fill=\"#1f77b4\" fill-opacity=\"0.6\"/>\n";

  // rigid states live at (1/kappa, 1)
  const double rx = px(1.0 / kappa), ry = py(1.0);
  svg += "<path d=\"M " + fmt("%.3f", rx - 6) + " " + fmt("%.3f", ry - 6) + " L " + fmt("%.3f", rx + 6) + " " +
         fmt("%.3f", ry + 6) + " M " + fmt("%.3f", rx - 6) + " " + fmt("%.3f", ry + 6) + " L " +
         fmt("%.3f", rx + 6) + " " + fmt("%.3f", ry - 6) + "\" stroke=\"black\" stroke-width=\"2.5\"/>\n";

  // axes with ticks at 0, 1/2, 1
  svg += "<line x1=\"" + fmt("%.1f", margin) + "\" y1=\"" + fmt("%.1f", size - margin) + "\" x2=\"" +
         fmt("%.1f", size - margin) + "\" y2=\"" + fmt("%.1f", size - margin) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt("%.1f", margin) + "\" y1=\"" + fmt("%.1f", size - margin) + "\" x2=\"" +
         fmt("%.1f", margin) + "\" y2=\"" + fmt("%.1f", margin) + "\" stroke=\"black\"/>\n";
  for (double tick : {0.0, 0.5, 1.0}) {
    svg += "<text x=\"" + fmt("%.1f", px(tick)) + "\" y=\"" + fmt("%.1f", size - margin + 20) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + fmt("%.1f", tick) + "</text>\n";
    svg += "<text x=\"" + fmt("%.1f", margin - 10) + "\" y=\"" + fmt("%.1f", py(tick) + 4) +
           "\" font-size=\"12\" text-anchor=\"end\">" + fmt("%.1f", tick) + "</text>\n";
  }
  svg += "<text x=\"320\" y=\"620\" font-size=\"14\" text-anchor=\"middle\">Density acceptance w_D</text>\n";
  svg += "<text x=\"18\" y=\"320\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 320)\">"
         "QuasiCheck acceptance w_Q</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace

RegionResult run_region(const RegionOptions& opts) {
  if (opts.kappa < 2) fail(Errc::bad_argument, "region needs kappa >= 2");
  const double epsilon = opts.epsilon;
  if (!(epsilon >= 0.0 && epsilon < 1.0)) fail(Errc::bad_argument, "region epsilon out of range");
  if (!(opts.delta > 0.0 && opts.delta <= 1.0)) fail(Errc::bad_argument, "region delta out of range");

  const auto boundary = region_boundary(opts.kappa, epsilon, opts.delta, opts.grid);

  // scatter uses the collision detector: its acceptance never exceeds the
  // boundary for any (epsilon, delta) in range
  const DetectorSpec det{DetectorKind::analytic_collision, log2_or_fail(opts.kappa),
                         std::max(epsilon, 1e-12), opts.delta};
  Rng rng(opts.seed);
  std::vector<ScatterPoint> scatter;
  scatter.reserve(opts.scatter);
  std::size_t violations = 0;
  double max_excess = 0.0;
  const double lo = 1.0 / static_cast<double>(opts.kappa);
  for (std::size_t i = 0; i < opts.scatter; ++i) {
    const BipartiteWitness w = sample_witness_mixed(opts.scatter_r, opts.kappa, rng);
    const double w_d = density_accept_prob(w);
    const double w_q = quasicheck_accept_prob(w, det);
    scatter.push_back({w_d, w_q});
    if (w_d >= lo) {
      const double cap = std::clamp((1.0 - opts.delta) + opts.delta * (1.0 - (w_d - lo) * (w_d - lo)) / (1.0 - epsilon),
                                    0.0, 1.0);
      const double excess = w_q - cap;
      max_excess = std::max(max_excess, excess);
      if (excess > 1e-10) ++violations;
    }
  }

  std::string csv = "w_d,w_q_max\n";
  for (const auto& [wd, wq] : boundary) csv += fmt("%.12g", wd) + "," + fmt("%.12g", wq) + "\n";

  RegionResult out;
  out.csv = std::move(csv);
  out.svg = region_svg(opts.kappa, boundary, scatter);
  out.report = json{{"kappa", opts.kappa},     {"epsilon", epsilon},        {"delta", opts.delta},
                    {"grid", opts.grid},       {"scatter", opts.scatter},   {"scatter_r", opts.scatter_r},
                    {"seed", opts.seed},       {"violations", violations},  {"max_excess", max_excess}};
  return out;
}

json run_distinguish(unsigned k, std::size_t n, std::uint64_t seed) {
  if (k == 0 || k > 3) fail(Errc::bad_argument, "distinguish supports k in {1, 2, 3}");
  if (n < 10000) fail(Errc::bad_argument, "distinguish needs at least 10^4 samples");
  Rng rng(seed);
  const EnsembleReport r = distinguish_ensembles_experiment(k, n, rng);
  const double d = static_cast<double>(static_cast<std::size_t>(1) << k);
  return json{{"k", k},
              {"n", n},
              {"seed", seed},
              {"acc_computational", r.acc_computational},
              {"acc_fourier", r.acc_fourier},
              {"density_gap", r.density_gap},
              {"acc_computational_analytic", 1.0},
              {"acc_fourier_analytic", 1.0 / d}};
}

json run_constants(const ConstantsOptions& opts) {
  const ResolvedSetup setup = resolve_setup(opts.preset, opts.kind, opts.kappa, opts.xi, opts.c_yes);
  const ConstantInequalities ineq = check_constant_inequalities(setup.params);
  json warnings = json::array();
  if (setup.params.gap < 1e-12)
    warnings.push_back("final promise gap " + fmt("%.6g", setup.params.gap) +
                       " is below 1e-12; the end-to-end gap is not measurable in double precision");
  return json{{"preset", setup.preset},
              {"detector", detector_to_json(setup.det)},
              {"params", params_to_json(setup.params)},
              {"inequalities",
               json{{"ordering", ineq.ordering}, {"ratio", ineq.ratio}, {"transfer", ineq.transfer}}},
              {"warnings", warnings}};
}

OptimizeResult run_optimize(const OptimizeOptions& opts) {
  const GapInstance& inst = opts.instance;
  inst.system.validate();
  const std::uint32_t kappa = static_cast<std::uint32_t>(inst.system.kappa());
  const ResolvedSetup setup = resolve_setup(opts.preset, opts.kind, kappa);
  const auto objective = [&](const BipartiteWitness& w) {
    return protocol_accept_prob(w, inst.system, setup.params, setup.det);
  };
  const OptimizerResult r = optimize_witness(objective, inst.system.r(), kappa, opts.restarts, opts.seed);

  OptimizeResult out;
  out.best = r.best_state;
  out.report = json{{"preset", setup.preset},
                    {"detector", detector_to_json(setup.det)},
                    {"instance", instance_summary(inst)},
                    {"restarts", r.restarts_used},
                    {"seed", opts.seed},
                    {"best_value", r.best_value},
                    {"p_yes", setup.params.p_yes},
                    {"deficit", setup.params.p_yes - r.best_value},
                    {"trace", r.trace}};
  return out;
}

}  // namespace ncv
