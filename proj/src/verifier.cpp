#include "ncv/verifier.hpp"

#include <algorithm>
#include <cmath>

namespace ncv {

namespace {

constexpr double kZeroRowWeight = 1e-300;

unsigned log2_exact(std::size_t dim) {
  unsigned k = 0;
  std::size_t d = 1;
  while (d < dim) {
    d <<= 1;
    ++k;
  }
  if (d != dim) fail(Errc::dim_mismatch, "value register dimension is not a power of two");
  return k;
}

void check_detector_register(const DetectorSpec& det, std::size_t kappa) {
  if (det.dim() != kappa) fail(Errc::dim_mismatch, "detector register size does not match the value register");
}

}  // namespace

BipartiteWitness BipartiteWitness::from_state(const StateVector& s, std::size_t r, std::size_t kappa) {
  if (r * kappa != s.dim()) fail(Errc::dim_mismatch, "witness shape does not match state dimension");
  return BipartiteWitness{r, kappa, s.amps};
}

BipartiteWitness build_rigid_witness(const std::vector<std::uint32_t>& sigma, std::size_t r, std::size_t kappa) {
  if (sigma.size() != r) fail(Errc::bad_assignment, "sigma map must cover every constraint index");
  BipartiteWitness w{r, kappa, std::vector<cplx>(r * kappa, cplx(0.0, 0.0))};
  const double coeff = 1.0 / std::sqrt(static_cast<double>(r));
  for (std::size_t j = 0; j < r; ++j) {
    if (sigma[j] >= kappa) fail(Errc::bad_assignment, "sigma map value out of range");
    w.at(j, sigma[j]) = cplx(coeff, 0.0);
  }
  return w;
}

BipartiteWitness build_quasirigid_witness(const RigidDescriptor& desc, std::size_t kappa) {
  const std::size_t r = desc.sigma.size();
  if (desc.b.size() != r) fail(Errc::bad_assignment, "coefficient vector length must equal the sigma map length");
  double n2 = 0.0;
  for (const cplx& b : desc.b) n2 += std::norm(b);
  if (std::abs(n2 - 1.0) > kNormTol) fail(Errc::bad_assignment, "quasirigid coefficients must be unit-norm");
  BipartiteWitness w{r, kappa, std::vector<cplx>(r * kappa, cplx(0.0, 0.0))};
  for (std::size_t j = 0; j < r; ++j) {
    if (desc.sigma[j] >= kappa) fail(Errc::bad_assignment, "sigma map value out of range");
    w.at(j, desc.sigma[j]) = desc.b[j];
  }
  return w;
}

bool is_quasirigid(const BipartiteWitness& w, double tol) {
  for (std::size_t j = 0; j < w.r; ++j) {
    double best = 0.0, rest = 0.0;
    for (std::size_t x = 0; x < w.kappa; ++x) {
      const double p = std::norm(w.at(j, x));
      if (p > best) {
        rest += best;
        best = p;
      } else {
        rest += p;
      }
    }
    if (rest > tol) return false;
  }
  return true;
}

bool is_rigid(const BipartiteWitness& w, double tol) {
  if (!is_quasirigid(w, tol)) return false;
  const double target = 1.0 / static_cast<double>(w.r);
  for (std::size_t j = 0; j < w.r; ++j) {
    double best = 0.0;
    for (std::size_t x = 0; x < w.kappa; ++x) best = std::max(best, std::norm(w.at(j, x)));
    if (std::abs(best - target) > tol) return false;
  }
  return true;
}

double density_accept_prob(const BipartiteWitness& w) {
  cplx sum(0.0, 0.0);
  for (const cplx& a : w.amps) sum += a;
  return std::clamp(std::norm(sum) / static_cast<double>(w.dim()), 0.0, 1.0);
}

int density_sample(const BipartiteWitness& w, Rng& rng) {
  return fourier_measure(w.to_state(), rng) == 0 ? 1 : 0;
}

double quasicheck_accept_prob(const BipartiteWitness& w, const DetectorSpec& det, QuasiCheckBreakdown* breakdown) {
  check_detector_register(det, w.kappa);
  if (breakdown) {
    breakdown->row_weight.assign(w.r, 0.0);
    breakdown->c_flag.assign(w.r, 1.0);
    breakdown->row_accept.assign(w.r, 0.0);
  }
  double total = 0.0;
  for (std::size_t j = 0; j < w.r; ++j) {
    const cplx* row = w.amps.data() + j * w.kappa;
    double weight = 0.0, max_p = 0.0;
    for (std::size_t x = 0; x < w.kappa; ++x) {
      const double p = std::norm(row[x]);
      weight += p;
      max_p = std::max(max_p, p);
    }
    if (breakdown) breakdown->row_weight[j] = weight;
    if (weight <= kZeroRowWeight) continue;
    const double accept = detector_accept_prob_conditional(det, row, w.kappa, weight);
    if (breakdown) {
      breakdown->c_flag[j] = (max_p <= (1.0 - det.epsilon) * weight) ? 1.0 - det.delta : 1.0;
      breakdown->row_accept[j] = accept;
    }
    total += weight * accept;
  }
  return std::clamp(total, 0.0, 1.0);
}

double quasicheck_upper_bound(const QuasiCheckBreakdown& breakdown) {
  double bound = 0.0;
  for (std::size_t j = 0; j < breakdown.row_weight.size(); ++j) bound += breakdown.row_weight[j] * breakdown.c_flag[j];
  return bound;
}

int quasicheck_sample(const BipartiteWitness& w, const DetectorSpec& det, Rng& rng) {
  check_detector_register(det, w.kappa);
  const MeasurementRecord rec = collapse_measure(w.to_state(), RegisterSplit{w.r, w.kappa}, rng);
  return detector_sample(det, rec.post_state, rng);
}

double constraintcheck_accept_prob(const BipartiteWitness& w, const CSPSystem& c, double c_yes) {
  if (c.r() != w.r || c.kappa() != w.kappa) fail(Errc::dim_mismatch, "witness shape does not match the constraint system");
  double mass = 0.0;
  for (std::size_t j = 0; j < w.r; ++j)
    for (std::size_t x = 0; x < w.kappa; ++x)
      if (c.allows(static_cast<std::uint32_t>(j), x)) mass += std::norm(w.at(j, x));
  return c_yes * std::clamp(mass, 0.0, 1.0);
}

int constraintcheck_sample(const BipartiteWitness& w, const CSPSystem& c, double c_yes, Rng& rng) {
  if (c.r() != w.r || c.kappa() != w.kappa) fail(Errc::dim_mismatch, "witness shape does not match the constraint system");
  const std::size_t outcome = sample_outcome(w.to_state(), rng);
  const std::size_t j = outcome / w.kappa;
  const std::size_t x = outcome % w.kappa;
  const bool damp = rng.uniform01() < c_yes;  // independent rejection with probability 1 - C_YES
  return (damp && c.allows(static_cast<std::uint32_t>(j), x)) ? 1 : 0;
}

Mixture mixture(double epsilon, double nu_low, double nu_high, double delta, double c_yes, std::uint32_t kappa) {
  if (!(nu_high * nu_high > epsilon)) fail(Errc::degenerate_constants, "mixture requires epsilon < nu_high^2");
  if (!(delta > 0.0)) fail(Errc::degenerate_constants, "mixture requires a positive detector margin");
  if (!(c_yes > 0.0 && c_yes < 1.0)) fail(Errc::degenerate_constants, "mixture requires 0 < C_YES < 1");
  if (kappa == 0) fail(Errc::bad_argument, "mixture requires kappa >= 1");
  const double n1 = 1.0;
  const double n2 = (nu_low + nu_high) * (1.0 - epsilon) / (delta * (nu_high * nu_high - epsilon));
  const double n3 = nu_low / (2.0 * (1.0 - c_yes));
  Mixture m;
  m.z = n1 + n2 + n3;
  m.p1 = n1 / m.z;
  m.p2 = n2 / m.z;
  m.p3 = n3 / m.z;
  m.p_yes = m.p1 / static_cast<double>(kappa) + m.p2 + m.p3 * c_yes;
  m.gap = nu_high / (2.0 * m.z);
  return m;
}

ConstantChoice choose_constants(std::uint32_t kappa, double xi, double c_yes,
                                const std::function<double(double)>& delta_of_eps) {
  if (!(xi > 0.0 && xi <= c_yes && c_yes < 1.0)) fail(Errc::bad_argument, "need 0 < xi <= C_YES < 1");
  const double kd = static_cast<double>(kappa);
  const double budget = xi * xi / 4.0;  // transfer inequality, squared
  const auto transfer_ok = [&](double nu_low, double eps) {
    return kd * nu_low + (kd + 1.0) * std::sqrt(eps + nu_low) <= budget;
  };
  const double ratio = std::min(1.0, xi / (6.0 * (1.0 - c_yes)));
  const auto derive = [&](double nu_low) {
    ConstantChoice c;
    c.nu_low = nu_low;
    c.nu_high = nu_low * ratio;
    c.epsilon = 0.5 * c.nu_high * c.nu_high;
    return c;
  };
  const auto feasible = [&](double nu_low) {
    const ConstantChoice c = derive(nu_low);
    return c.epsilon > 0.0 && transfer_ok(c.nu_low, c.epsilon);
  };
  const auto gap_of = [&](double nu_low) {
    const ConstantChoice c = derive(nu_low);
    if (!transfer_ok(c.nu_low, c.epsilon)) return 0.0;
    const double delta = delta_of_eps(c.epsilon);
    if (!(delta > 0.0)) return 0.0;
    return mixture(c.epsilon, c.nu_low, c.nu_high, delta, c_yes, kappa).gap;
  };

  // the quoted order: all constants equal and small enough for the transfer
  // inequality, then nu_high via the ratio, then epsilon below nu_high^2
  double seed = 1.0;
  while (seed > 1e-300 && !(transfer_ok(seed, seed) && feasible(seed))) seed *= 0.5;
  if (seed <= 1e-300) fail(Errc::infeasible, "no feasible constant triple found");

  // largest feasible nu_low by bisection (the transfer constraint is monotone)
  double lo = seed, hi = 1.0;
  if (feasible(hi)) {
    lo = hi;
  } else {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? lo : hi) = mid;
    }
  }

  // golden-section refinement of the final gap over nu_low
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = seed * 1e-3, b = lo;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = gap_of(x1), f2 = gap_of(x2);
  for (int i = 0; i < 120; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = gap_of(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = gap_of(x1);
    }
  }
  double best = 0.5 * (a + b);
  if (!feasible(best) || gap_of(best) <= 0.0) best = lo;  // fall back to the bisection point
  if (gap_of(lo) > gap_of(best)) best = lo;
  return derive(best);
}

ProtocolParams make_params(std::uint32_t kappa, double xi, double c_yes, const ConstantChoice& constants,
                           double delta) {
  ProtocolParams p;
  p.kappa = kappa;
  p.epsilon = constants.epsilon;
  p.nu_low = constants.nu_low;
  p.nu_high = constants.nu_high;
  p.c_yes = c_yes;
  p.xi = xi;
  p.delta = delta;
  const Mixture m = mixture(p.epsilon, p.nu_low, p.nu_high, p.delta, p.c_yes, kappa);
  p.p1 = m.p1;
  p.p2 = m.p2;
  p.p3 = m.p3;
  p.z = m.z;
  p.p_yes = m.p_yes;
  p.gap = m.gap;
  validate_params(p);
  return p;
}

ConstantInequalities check_constant_inequalities(const ProtocolParams& p) {
  ConstantInequalities out;
  out.ordering = p.epsilon < p.nu_high * p.nu_high && p.nu_high <= p.nu_low && p.nu_low <= 1.0;
  out.ratio = p.nu_high / p.nu_low <= p.xi / (6.0 * (1.0 - p.c_yes)) + kNormTol;
  const double kd = static_cast<double>(p.kappa);
  out.transfer = std::sqrt(kd * p.nu_low + (kd + 1.0) * std::sqrt(p.epsilon + p.nu_low)) <= p.xi / 2.0 + kNormTol;
  return out;
}

void validate_params(const ProtocolParams& p) {
  if (p.kappa == 0) fail(Errc::degenerate_constants, "params: kappa must be positive");
  // p2 can round to exactly 1.0 in double precision when the proof constants
  // make Z astronomically large; the open interval is a real-number statement
  if (!(p.p1 > 0.0 && p.p1 < 1.0 && p.p2 > 0.0 && p.p2 <= 1.0 && p.p3 > 0.0 && p.p3 < 1.0))
    fail(Errc::degenerate_constants, "params: mixture probabilities must lie in (0, 1]");
  if (std::abs(p.p1 + p.p2 + p.p3 - 1.0) > kNormTol)
    fail(Errc::degenerate_constants, "params: mixture probabilities must sum to 1");
  if (!(p.xi > 0.0 && p.xi <= p.c_yes && p.c_yes < 1.0))
    fail(Errc::degenerate_constants, "params: need 0 < xi <= C_YES < 1");
  if (!(p.delta > 0.0 && p.delta <= 1.0)) fail(Errc::degenerate_constants, "params: detector margin out of range");
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) fail(Errc::degenerate_constants, "params: epsilon out of range");
  if (!(p.nu_low > 0.0 && p.nu_low <= 1.0 && p.nu_high > 0.0 && p.nu_high <= 1.0))
    fail(Errc::degenerate_constants, "params: distance thresholds out of range");
}

std::function<double(double)> delta_function(DetectorKind kind, unsigned k) {
  if (kind == DetectorKind::non_negative_fourier)
    return [k](double eps) { return delta_nonneg_chain(k, eps); };
  return [k](double eps) { return delta_noncollapsing(k, eps); };
}

ProtocolParams diagnostic_params(DetectorKind kind) {
  // measurable-gap preset; violates the ratio inequality by design
  constexpr std::uint32_t kappa = 4;
  ConstantChoice c{0.0025, 0.1, 0.1};
  const double delta = delta_function(kind, 2)(c.epsilon);
  return make_params(kappa, 0.5, 0.75, c, delta);
}

ProtocolParams proof_params(std::uint32_t kappa, double xi, double c_yes, DetectorKind kind) {
  const unsigned k = log2_exact(kappa);
  const auto delta_of_eps = delta_function(kind, k);
  const ConstantChoice c = choose_constants(kappa, xi, c_yes, delta_of_eps);
  return make_params(kappa, xi, c_yes, c, delta_of_eps(c.epsilon));
}

double protocol_accept_prob(const BipartiteWitness& w, const CSPSystem& c, const ProtocolParams& params,
                            const DetectorSpec& det, AcceptanceProfile* profile) {
  AcceptanceProfile prof;
  prof.w_d = density_accept_prob(w);
  prof.w_q = quasicheck_accept_prob(w, det);
  prof.w_c = constraintcheck_accept_prob(w, c, params.c_yes);
  prof.d = prof.w_d - 1.0 / static_cast<double>(params.kappa);
  prof.d_q = (1.0 - prof.w_q) / params.delta;
  if (profile) *profile = prof;
  return std::clamp(params.p1 * prof.w_d + params.p2 * prof.w_q + params.p3 * prof.w_c, 0.0, 1.0);
}

int protocol_sample(const BipartiteWitness& w, const CSPSystem& c, const ProtocolParams& params,
                    const DetectorSpec& det, Rng& rng) {
  const double u = rng.uniform01();
  if (u < params.p1) return density_sample(w, rng);
  if (u < params.p1 + params.p2) return quasicheck_sample(w, det, rng);
  return constraintcheck_sample(w, c, params.c_yes, rng);
}

}  // namespace ncv
