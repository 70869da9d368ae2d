#include "ncv/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace ncv {

QuasirigidProjection nearest_quasirigid(const BipartiteWitness& psi) {
  QuasirigidProjection out;
  out.f.resize(psi.r, 0);
  double gamma = 0.0;
  for (std::size_t j = 0; j < psi.r; ++j) {
    double best = -1.0;
    for (std::size_t x = 0; x < psi.kappa; ++x) {
      const double p = std::norm(psi.at(j, x));
      if (p > best) {  // strict: ties stay at the smallest x
        best = p;
        out.f[j] = static_cast<std::uint32_t>(x);
      }
    }
    gamma += best;
  }
  out.gamma = gamma;
  out.phi = BipartiteWitness{psi.r, psi.kappa, std::vector<cplx>(psi.r * psi.kappa, cplx(0.0, 0.0))};
  const double inv = 1.0 / std::sqrt(gamma);  // gamma > 0 for any unit vector
  for (std::size_t j = 0; j < psi.r; ++j) out.phi.at(j, out.f[j]) = psi.at(j, out.f[j]) * inv;
  return out;
}

BipartiteWitness nearest_rigid(const BipartiteWitness& psi) {
  return build_rigid_witness(nearest_quasirigid(psi).f, psi.r, psi.kappa);
}

bool quadratic_feasible(double w_d, double w_q, double epsilon, double delta, double kappa) {
  const double baseline = 1.0 / kappa;
  if (w_d < baseline) fail(Errc::hypothesis_not_met, "quadratic_feasible requires w_D >= 1/kappa");
  const double lhs = (w_d - baseline) * (w_d - baseline) + (1.0 - epsilon) * (w_q - (1.0 - delta)) / delta;
  return lhs <= 1.0 + 1e-10;
}

std::vector<std::pair<double, double>> region_boundary(double kappa, double epsilon, double delta,
                                                       std::size_t grid_points) {
  if (grid_points < 2) fail(Errc::bad_argument, "region_boundary needs at least two grid points");
  std::vector<std::pair<double, double>> out;
  out.reserve(grid_points);
  const double lo = 1.0 / kappa;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double w_d = lo + (1.0 - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    const double slack = 1.0 - (w_d - lo) * (w_d - lo);
    const double w_q_max = std::clamp((1.0 - delta) + delta * slack / (1.0 - epsilon), 0.0, 1.0);
    out.emplace_back(w_d, w_q_max);
  }
  return out;
}

CaseResult classify_soundness_case(const AcceptanceProfile& profile, const ProtocolParams& params) {
  CaseResult out;
  if (profile.d <= -params.nu_low) {
    out.case_id = 1;
  } else if (profile.d >= params.nu_high) {
    out.case_id = 2;
  } else if (profile.w_q <= 1.0 - params.delta * params.nu_low) {
    out.case_id = 3;
  } else {
    out.case_id = 4;
  }
  out.p_no = params.p1 * profile.w_d + params.p2 * profile.w_q + params.p3 * profile.w_c;
  const double margin = (out.case_id == 4 ? params.nu_high : params.nu_low) / (2.0 * params.z);
  out.bound = params.p_yes - margin;
  out.holds = out.p_no <= out.bound + 1e-10;
  return out;
}

namespace {

BipartiteWitness witness_from_reals(const std::vector<double>& v, std::size_t r, std::size_t kappa) {
  std::vector<cplx> amps(r * kappa);
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = cplx(v[2 * i], v[2 * i + 1]);
  const StateVector s = normalize(amps);
  return BipartiteWitness{r, kappa, s.amps};
}

void renormalize(std::vector<double>& v) {
  double n2 = 0.0;
  for (double x : v) n2 += x * x;
  const double inv = 1.0 / std::sqrt(n2);
  for (double& x : v) x *= inv;
}

}  // namespace

OptimizerResult optimize_witness(const std::function<double(const BipartiteWitness&)>& objective, std::size_t r,
                                 std::size_t kappa, std::size_t restarts, std::uint64_t seed) {
  if (r * kappa > 64) fail(Errc::too_large, "optimizer dimension cap is R * kappa <= 64");
  if (restarts == 0) fail(Errc::bad_argument, "optimizer needs at least one restart");
  const std::size_t n = 2 * r * kappa;
  constexpr double kFdStep = 1e-5;
  constexpr double kImprovementStop = 1e-10;
  constexpr std::size_t kMaxIters = 10000;

  const auto eval = [&](const std::vector<double>& v) {
    const double value = objective(witness_from_reals(v, r, kappa));
    if (!std::isfinite(value)) fail(Errc::objective_error, "objective returned a non-finite value");
    return value;
  };

  OptimizerResult result;
  result.restarts_used = restarts;
  result.trace.reserve(restarts);
  double global_best = -1.0;

  std::vector<double> x(n), trial(n), grad(n);
  for (std::size_t restart = 0; restart < restarts; ++restart) {
    Rng rng(Rng::derive(seed, restart));
    for (double& c : x) c = rng.gaussian();
    renormalize(x);
    double value = eval(x);
    double step = 0.1;

    for (std::size_t iter = 0; iter < kMaxIters; ++iter) {
      for (std::size_t i = 0; i < n; ++i) {
        const double keep = x[i];
        x[i] = keep + kFdStep;
        const double up = eval(x);
        x[i] = keep - kFdStep;
        const double down = eval(x);
        x[i] = keep;
        grad[i] = (up - down) / (2.0 * kFdStep);
      }
      double gnorm2 = 0.0;
      for (double g : grad) gnorm2 += g * g;
      if (gnorm2 == 0.0) break;

      trial = x;
      for (std::size_t i = 0; i < n; ++i) trial[i] += step * grad[i];
      renormalize(trial);
      const double tval = eval(trial);
      if (tval > value) {
        const double gain = tval - value;
        x = trial;
        value = tval;
        if (gain < kImprovementStop) break;
      } else {
        step *= 0.5;
        if (step < 1e-12) break;
      }
    }

    result.trace.push_back(value);
    if (value > global_best) {
      global_best = value;
      result.best_state = witness_from_reals(x, r, kappa);
    }
  }
  result.best_value = global_best;
  return result;
}

double exhaustive_rigid_search(const CSPSystem& c, const ProtocolParams& params, const DetectorSpec& det,
                               std::vector<std::uint32_t>* best_sigma) {
  const std::size_t r = c.r();
  const std::size_t kappa = static_cast<std::size_t>(c.kappa());
  double combos = 1.0;
  for (std::size_t j = 0; j < r; ++j) {
    combos *= static_cast<double>(kappa);
    if (combos > 1e6) fail(Errc::too_large, "rigid enumeration exceeds the desk-scale cap");
  }
  std::vector<std::uint32_t> sigma(r, 0);
  double best = -1.0;
  for (;;) {
    const BipartiteWitness w = build_rigid_witness(sigma, r, kappa);
    const double value = protocol_accept_prob(w, c, params, det);
    if (value > best) {
      best = value;
      if (best_sigma) *best_sigma = sigma;
    }
    std::size_t pos = 0;  // odometer over sigma maps
    while (pos < r) {
      if (++sigma[pos] < kappa) break;
      sigma[pos] = 0;
      ++pos;
    }
    if (pos == r) break;
  }
  return best;
}

}  // namespace ncv
