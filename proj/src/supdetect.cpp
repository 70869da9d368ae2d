#include "ncv/supdetect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ncv {

std::string detector_kind_name(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::non_collapsing: return "noncollapsing";
    case DetectorKind::non_negative_fourier: return "nonneg";
    case DetectorKind::analytic_collision: return "analytic";
  }
  fail(Errc::bad_argument, "unknown detector kind");
}

DetectorKind detector_kind_from_name(const std::string& name) {
  if (name == "noncollapsing") return DetectorKind::non_collapsing;
  if (name == "nonneg") return DetectorKind::non_negative_fourier;
  if (name == "analytic") return DetectorKind::analytic_collision;
  fail(Errc::parse_error, "unknown detector kind '" + name + "'");
}

double delta_noncollapsing_dim(std::size_t dim, double epsilon) {
  if (dim < 2) fail(Errc::bad_argument, "detector dimension must be at least 2");
  const double inv_dim = 1.0 / static_cast<double>(dim);
  if (!(epsilon > 0.0) || epsilon > 1.0 - inv_dim + kNormTol)
    fail(Errc::invalid_threshold, "epsilon must lie in (0, 1 - 1/dim]");
  const double x = std::min(epsilon, inv_dim);
  return 2.0 * (x - x * x);
}

double delta_noncollapsing(unsigned k, double epsilon) {
  return delta_noncollapsing_dim(static_cast<std::size_t>(1) << k, epsilon);
}

double delta_nonneg_chain(unsigned k, double epsilon) {
  const double d = static_cast<double>(static_cast<std::size_t>(1) << k);
  if (!(epsilon > 0.0) || epsilon > 1.0 - 1.0 / d + kNormTol)
    fail(Errc::invalid_threshold, "epsilon must lie in (0, 1 - 1/dim]");
  return std::sqrt(epsilon) / (d * std::sqrt(d));
}

DetectorSpec make_detector(DetectorKind kind, unsigned k, double epsilon) {
  DetectorSpec spec;
  spec.kind = kind;
  spec.k = k;
  spec.epsilon = epsilon;
  spec.delta = (kind == DetectorKind::non_negative_fourier) ? delta_nonneg_chain(k, epsilon)
                                                            : delta_noncollapsing(k, epsilon);
  return spec;
}

double collision_accept_prob(const StateVector& psi) {
  double acc = 0.0;
  for (const cplx& a : psi.amps) {
    const double p = std::norm(a);
    acc += p * p;
  }
  return std::clamp(acc, 0.0, 1.0);
}

int noncollapsing_detect(const StateVector& psi, Rng& rng) {
  const MeasurementRecord nc = noncollapse_measure(psi, rng);
  const std::size_t collapsed = sample_outcome(psi, rng);
  return nc.outcome == collapsed ? 1 : 0;
}

double verify_plus_accept_prob(const StateVector& psi) {
  cplx sum(0.0, 0.0);
  for (const cplx& a : psi.amps) sum += a;
  return std::clamp(1.0 - std::norm(sum) / static_cast<double>(psi.dim()), 0.0, 1.0);
}

int nonneg_detect(const StateVector& psi, Rng& rng) { return fourier_measure(psi, rng) == 0 ? 0 : 1; }

namespace {

// acceptance of the normalized row a[0..d) with total squared weight w2 > 0
double accept_prob_raw(const DetectorSpec& spec, const cplx* a, std::size_t d, double w2) {
  switch (spec.kind) {
    case DetectorKind::non_collapsing:
    case DetectorKind::analytic_collision: {
      double acc = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double p = std::norm(a[i]);
        acc += p * p;
      }
      return std::clamp(acc / (w2 * w2), 0.0, 1.0);
    }
    case DetectorKind::non_negative_fourier: {
      cplx sum(0.0, 0.0);
      for (std::size_t i = 0; i < d; ++i) sum += a[i];
      const double p0 = std::norm(sum) / (w2 * static_cast<double>(d));
      // Verify+ plus the 1/d SupDetect normalization, clamped
      return std::clamp(1.0 - p0 + 1.0 / static_cast<double>(d), 0.0, 1.0);
    }
  }
  fail(Errc::bad_argument, "unknown detector kind");
}

}  // namespace

double detector_accept_prob(const DetectorSpec& spec, const StateVector& psi) {
  if (spec.dim() != psi.dim()) fail(Errc::dim_mismatch, "detector_accept_prob: spec dimension does not match state");
  return accept_prob_raw(spec, psi.amps.data(), psi.dim(), norm_squared(psi));
}

double detector_accept_prob_conditional(const DetectorSpec& spec, const cplx* amps, std::size_t d, double weight) {
  return accept_prob_raw(spec, amps, d, weight);
}

int detector_sample(const DetectorSpec& spec, const StateVector& psi, Rng& rng) {
  if (spec.dim() != psi.dim()) fail(Errc::dim_mismatch, "detector_sample: spec dimension does not match state");
  switch (spec.kind) {
    case DetectorKind::non_collapsing:
    case DetectorKind::analytic_collision:
      return noncollapsing_detect(psi, rng);
    case DetectorKind::non_negative_fourier: {
      // Nonzero frequencies always accept. On the zero frequency an extra coin
      // with success 2^-k / p0 restores the +2^-k SupDetect normalization, so
      // the mean matches detector_accept_prob exactly (clamp included).
      if (fourier_measure(psi, rng) != 0) return 1;
      cplx sum(0.0, 0.0);
      for (const cplx& a : psi.amps) sum += a;
      const double p0 = std::norm(sum) / static_cast<double>(psi.dim());
      const double q = std::min(1.0, 1.0 / (static_cast<double>(psi.dim()) * std::max(p0, 1e-300)));
      return rng.uniform01() < q ? 1 : 0;
    }
  }
  fail(Errc::bad_argument, "unknown detector kind");
}

DetectorAnalysis analyze_state(const DetectorSpec& spec, const StateVector& psi) {
  if (spec.dim() != psi.dim()) fail(Errc::dim_mismatch, "analyze_state: spec dimension does not match state");
  DetectorAnalysis out;
  out.t = 0.0;
  for (const cplx& a : psi.amps) out.t = std::max(out.t, std::norm(a));
  out.x = std::min(spec.epsilon, 1.0 / static_cast<double>(spec.dim()));
  out.accept_prob = detector_accept_prob(spec, psi);
  return out;
}

EnsembleReport distinguish_ensembles_experiment(unsigned k, std::size_t n, Rng& rng) {
  const std::size_t d = static_cast<std::size_t>(1) << k;
  std::vector<StateVector> computational, fourier;
  computational.reserve(d);
  fourier.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    computational.push_back(basis_state(d, i));
    fourier.push_back(fourier_basis_state(d, i));
  }
  const std::vector<double> weights(d, 1.0 / static_cast<double>(d));

  EnsembleReport report;
  report.density_gap = max_entry_distance(ensemble_density(computational, weights), ensemble_density(fourier, weights));
  std::size_t acc_c = 0, acc_f = 0;
  for (std::size_t i = 0; i < n; ++i) acc_c += static_cast<std::size_t>(noncollapsing_detect(computational[rng.below(d)], rng));
  for (std::size_t i = 0; i < n; ++i) acc_f += static_cast<std::size_t>(noncollapsing_detect(fourier[rng.below(d)], rng));
  report.acc_computational = static_cast<double>(acc_c) / static_cast<double>(n);
  report.acc_fourier = static_cast<double>(acc_f) / static_cast<double>(n);
  return report;
}

NonnegGridReport nonneg_grid_scan(unsigned k, double epsilon, double step) {
  const std::size_t d = static_cast<std::size_t>(1) << k;
  const auto total = static_cast<std::size_t>(std::llround(1.0 / step));
  if (total == 0 || total > 100000) fail(Errc::bad_argument, "nonneg_grid_scan: unusable step");
  const double inv_d = 1.0 / static_cast<double>(d);
  // far states have every squared amplitude at most 1 - epsilon
  const auto far_cap = static_cast<std::size_t>(std::floor((1.0 - epsilon) * static_cast<double>(total) + 1e-9));

  NonnegGridReport report;
  report.k = k;
  report.epsilon = epsilon;
  report.step = step;
  report.chain_delta = delta_nonneg_chain(k, epsilon);
  report.headline_delta = std::sqrt(epsilon * inv_d);

  std::vector<std::size_t> parts(d, 0);
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t idx, std::size_t remaining) {
    if (idx + 1 == d) {
      parts[idx] = remaining;
      ++report.states_scanned;
      double sum_sqrt = 0.0;
      std::size_t max_part = 0;
      for (std::size_t c : parts) {
        sum_sqrt += std::sqrt(static_cast<double>(c) / static_cast<double>(total));
        max_part = std::max(max_part, c);
      }
      const double vp = 1.0 - inv_d * sum_sqrt * sum_sqrt;
      if (vp > 1.0 - inv_d - kNormTol && max_part != total) report.only_basis_saturate = false;
      if (max_part <= far_cap) report.max_far_accept = std::max(report.max_far_accept, std::min(1.0, vp + inv_d));
      return;
    }
    for (std::size_t c = 0; c <= remaining; ++c) {
      parts[idx] = c;
      walk(idx + 1, remaining - c);
    }
  };
  walk(0, total);
  report.verified_delta = 1.0 - report.max_far_accept;
  return report;
}

}  // namespace ncv
