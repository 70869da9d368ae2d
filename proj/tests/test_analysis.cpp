#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncv/analysis.hpp"
#include "ncv/random_states.hpp"
#include "testutil.hpp"

using namespace ncv;

TEST_CASE("nearest_quasirigid") {
  Rng rng(3);
  // quasirigid inputs are fixed points
  const BipartiteWitness q = random_quasirigid_witness(4, 4, rng);
  const QuasirigidProjection proj = nearest_quasirigid(q);
  CHECK(proj.gamma == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(squared_overlap(proj.phi.to_state(), q.to_state()) == doctest::Approx(1.0).epsilon(1e-13));

  // uniform witness: per-row max weight is 1/kappa of the row weight, ties at x = 0
  const BipartiteWitness u = BipartiteWitness::from_state(uniform_state(16), 4, 4);
  const QuasirigidProjection up = nearest_quasirigid(u);
  CHECK(up.gamma == doctest::Approx(0.25).epsilon(1e-13));
  for (std::uint32_t f : up.f) CHECK(f == 0);

  // the squared overlap with the input equals gamma
  for (int trial = 0; trial < 200; ++trial) {
    const BipartiteWitness psi = sample_witness_mixed(4, 4, rng);
    const QuasirigidProjection p = nearest_quasirigid(psi);
    CHECK(squared_overlap(psi.to_state(), p.phi.to_state()) == doctest::Approx(p.gamma).epsilon(1e-11));
    CHECK(is_quasirigid(p.phi));
  }
}

TEST_CASE("quasirigid overlap bound") {
  Rng rng(7);
  for (const double epsilon : {0.01, 0.1, 0.25}) {
    for (const DetectorKind kind : {DetectorKind::non_collapsing, DetectorKind::non_negative_fourier}) {
      const bool nonneg = kind == DetectorKind::non_negative_fourier;
      const DetectorSpec det = make_detector(kind, 2, epsilon);
      for (int trial = 0; trial < 1000; ++trial) {
        const BipartiteWitness psi = sample_witness_mixed(4, 4, rng, nonneg);
        const double w = quasicheck_accept_prob(psi, det);
        const double gamma = nearest_quasirigid(psi).gamma;
        CHECK(gamma >= (1.0 - epsilon) * (w - (1.0 - det.delta)) / det.delta - 1e-10);
      }
    }
  }
}

TEST_CASE("nearest_rigid") {
  Rng rng(11);
  const BipartiteWitness rigid = build_rigid_witness({1, 2, 0, 3}, 4, 4);
  CHECK(squared_overlap(nearest_rigid(rigid).to_state(), rigid.to_state()) == doctest::Approx(1.0).epsilon(1e-13));

  // |<chi|phi>|^2 = kappa |<+|phi>|^2 for the projected pair
  const StateVector plus = uniform_state(16);
  for (int trial = 0; trial < 1000; ++trial) {
    const BipartiteWitness psi = sample_witness_mixed(4, 4, rng);
    const QuasirigidProjection proj = nearest_quasirigid(psi);
    const BipartiteWitness chi = nearest_rigid(psi);
    const double lhs = squared_overlap(chi.to_state(), proj.phi.to_state());
    const double rhs = 4.0 * squared_overlap(plus, proj.phi.to_state());
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("rigid overlap bound under the quasicheck hypothesis") {
  Rng rng(13);
  const double epsilon = 0.01;
  for (const DetectorKind kind : {DetectorKind::non_collapsing, DetectorKind::non_negative_fourier}) {
    const bool nonneg = kind == DetectorKind::non_negative_fourier;
    const DetectorSpec det = make_detector(kind, 2, epsilon);
    for (const double d_q : {0.01, 0.1}) {
      std::size_t hit = 0;
      for (int trial = 0; trial < 4000 && hit < 200; ++trial) {
        BipartiteWitness psi = random_quasirigid_witness(4, 4, rng, nonneg);
        if (trial % 2 == 0) psi = perturb_witness(psi, 1e-4 * rng.uniform01(), rng, nonneg);
        const double w_q = quasicheck_accept_prob(psi, det);
        if (w_q < 1.0 - det.delta * d_q) continue;
        ++hit;
        const double w_d = density_accept_prob(psi);
        const double overlap = squared_overlap(nearest_rigid(psi).to_state(), psi.to_state());
        CHECK(overlap >= 4.0 * w_d - 5.0 * std::sqrt(epsilon + d_q) - 1e-10);
      }
      CHECK(hit > 0);
    }
  }
}

TEST_CASE("quadratic feasibility") {
  // the rigid point (1/kappa, 1) is feasible
  CHECK(quadratic_feasible(0.25, 1.0, 0.01, 0.5, 4.0));
  // the upper-right corner is forbidden at delta = 1, eps = 0
  const double lhs = (1.0 - 0.25) * (1.0 - 0.25) + 1.0;
  CHECK(lhs == doctest::Approx(1.5625));
  CHECK_FALSE(quadratic_feasible(1.0, 1.0, 0.0, 1.0, 4.0));
  CHECK_THROWS_AS(quadratic_feasible(0.1, 0.5, 0.01, 0.5, 4.0), Error);

  Rng rng(17);
  const double epsilon = 0.01;
  const DetectorSpec det = make_detector(DetectorKind::non_collapsing, 2, epsilon);
  std::size_t tested = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const BipartiteWitness psi = sample_witness_mixed(4, 4, rng);
    const double w_d = density_accept_prob(psi);
    if (w_d < 0.25) continue;
    ++tested;
    CHECK(quadratic_feasible(w_d, quasicheck_accept_prob(psi, det), epsilon, det.delta, 4.0));
  }
  CHECK(tested > 500);
}

TEST_CASE("region boundary") {
  const auto curve = region_boundary(4.0, 0.0, 1.0, 33);
  CHECK(curve.size() == 33);
  CHECK(curve.front().first == doctest::Approx(0.25));
  CHECK(curve.front().second == doctest::Approx(1.0));
  CHECK(curve.back().first == doctest::Approx(1.0));
  CHECK(curve.back().second == doctest::Approx(0.4375));
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].second <= curve[i - 1].second + 1e-14);

  const auto clamped = region_boundary(4.0, 0.5, 1.0, 9);
  for (const auto& [wd, wq] : clamped) {
    CHECK(wq <= 1.0);
    CHECK(wq >= 0.0);
  }
}

TEST_CASE("soundness case classifier") {
  const ProtocolParams params = diagnostic_params();

  // all weight on one basis element: w_D = 1/16, case 1
  BipartiteWitness basis{4, 4, std::vector<cplx>(16, cplx(0, 0))};
  basis.amps[3] = cplx(1, 0);
  const DetectorSpec det{DetectorKind::non_collapsing, 2, params.epsilon, params.delta};
  const GapInstance no = gen_no_instance(4, 4, 2, 1.0 / 3.0, 5);
  AcceptanceProfile profile;
  protocol_accept_prob(basis, no.system, params, det, &profile);
  CHECK(classify_soundness_case(profile, params).case_id == 1);

  // the uniform witness maxes the density test: case 2
  const BipartiteWitness uniform = BipartiteWitness::from_state(uniform_state(16), 4, 4);
  protocol_accept_prob(uniform, no.system, params, det, &profile);
  CHECK(classify_soundness_case(profile, params).case_id == 2);

  // rigid witness on a No instance: case 4 and the bound holds
  const BipartiteWitness rigid = build_rigid_witness({0, 1, 2, 3}, 4, 4);
  protocol_accept_prob(rigid, no.system, params, det, &profile);
  const CaseResult c4 = classify_soundness_case(profile, params);
  CHECK(c4.case_id == 4);
  CHECK(c4.holds);

  // every witness lands in exactly one case by construction; spot-check coverage
  Rng rng(23);
  int seen[5] = {0, 0, 0, 0, 0};
  for (int trial = 0; trial < 2000; ++trial) {
    const BipartiteWitness psi = sample_witness_mixed(4, 4, rng);
    protocol_accept_prob(psi, no.system, params, det, &profile);
    const int id = classify_soundness_case(profile, params).case_id;
    REQUIRE(id >= 1);
    REQUIRE(id <= 4);
    ++seen[id];
  }
  CHECK(seen[1] > 0);
  CHECK(seen[2] > 0);
}

TEST_CASE("optimizer reaches known optima") {
  const OptimizerResult density_run =
      optimize_witness([](const BipartiteWitness& w) { return density_accept_prob(w); }, 4, 4, 6, 91);
  CHECK(density_run.best_value >= 1.0 - 1e-6);
  CHECK(density_run.trace.size() == 6);

  const DetectorSpec det = make_detector(DetectorKind::analytic_collision, 2, 0.1);
  const OptimizerResult quasi_run =
      optimize_witness([&](const BipartiteWitness& w) { return quasicheck_accept_prob(w, det); }, 4, 4, 6, 92);
  CHECK(quasi_run.best_value >= 1.0 - 1e-6);

  // objective value of the reported state matches best_value
  CHECK(density_accept_prob(density_run.best_state) == doctest::Approx(density_run.best_value).epsilon(1e-10));
}

TEST_CASE("optimizer matches a grid-search oracle at R=1, kappa=2") {
  // objective mixing both tests; 3-parameter polar grid over the unit sphere
  const DetectorSpec det = make_detector(DetectorKind::non_negative_fourier, 1, 0.1);
  const auto objective = [&](const BipartiteWitness& w) {
    return 0.3 * density_accept_prob(w) + 0.7 * quasicheck_accept_prob(w, det);
  };
  double grid_best = 0.0;
  constexpr double kPi = 3.14159265358979323846;
  for (double a = 0.0; a <= kPi / 2 + 1e-12; a += 0.01) {
    for (double phi = 0.0; phi < 2 * kPi; phi += 0.01) {
      const BipartiteWitness w{1, 2, {cplx(std::cos(a), 0), std::polar(std::sin(a), phi)}};
      grid_best = std::max(grid_best, objective(w));
    }
  }
  const OptimizerResult run = optimize_witness(objective, 1, 2, 8, 17);
  CHECK(run.best_value == doctest::Approx(grid_best).epsilon(2e-3));
}

TEST_CASE("optimizer never exceeds proven ceilings for its objective") {
  // QuasiCheck objective: the reported optimum respects the c-weighted bound
  const DetectorSpec det = make_detector(DetectorKind::non_collapsing, 2, 0.1);
  const auto objective = [&](const BipartiteWitness& w) { return quasicheck_accept_prob(w, det); };
  const OptimizerResult run = optimize_witness(objective, 4, 4, 5, 63);
  QuasiCheckBreakdown breakdown;
  const double value = quasicheck_accept_prob(run.best_state, det, &breakdown);
  CHECK(run.best_value == doctest::Approx(value).epsilon(1e-10));
  CHECK(run.best_value <= quasicheck_upper_bound(breakdown) + 1e-10);

  // full protocol objective on a Yes instance: the planted rigid optimum P_YES
  const GapInstance yes = gen_yes_instance(4, 4, 2, 63);
  const ProtocolParams params = diagnostic_params();
  const DetectorSpec pdet{DetectorKind::non_collapsing, 2, params.epsilon, params.delta};
  const auto protocol_objective = [&](const BipartiteWitness& w) {
    return protocol_accept_prob(w, yes.system, params, pdet);
  };
  const OptimizerResult prun = optimize_witness(protocol_objective, 4, 4, 8, 64);
  CHECK(prun.best_value <= params.p_yes + 1e-9);
}

TEST_CASE("optimizer determinism and caps") {
  const auto objective = [](const BipartiteWitness& w) { return density_accept_prob(w); };
  const OptimizerResult a = optimize_witness(objective, 2, 4, 3, 5);
  const OptimizerResult b = optimize_witness(objective, 2, 4, 3, 5);
  CHECK(a.best_value == b.best_value);
  CHECK(a.trace == b.trace);
  for (std::size_t i = 0; i < a.best_state.amps.size(); ++i) CHECK(a.best_state.amps[i] == b.best_state.amps[i]);

  CHECK_THROWS_AS(optimize_witness(objective, 9, 8, 1, 1), Error);
  CHECK_THROWS_AS(optimize_witness([](const BipartiteWitness&) { return std::nan(""); }, 2, 2, 1, 1), Error);
}

TEST_CASE("finite differences track the analytic density gradient") {
  // density as a function of the raw real parameter vector, normalization
  // included: f(v) = |sum_i a_i|^2 / (d |v|^2)
  const std::size_t r = 2, kappa = 2, n = 2 * r * kappa;
  const auto eval = [&](const std::vector<double>& v) {
    std::vector<cplx> amps(r * kappa);
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = cplx(v[2 * i], v[2 * i + 1]);
    return density_accept_prob(BipartiteWitness{r, kappa, normalize(amps).amps});
  };
  Rng rng(41);
  std::vector<double> v(n);
  for (double& x : v) x = rng.gaussian();

  double re_sum = 0.0, im_sum = 0.0, n2 = 0.0;
  for (std::size_t i = 0; i < r * kappa; ++i) {
    re_sum += v[2 * i];
    im_sum += v[2 * i + 1];
  }
  for (double x : v) n2 += x * x;
  const double d = static_cast<double>(r * kappa);
  const double z2 = re_sum * re_sum + im_sum * im_sum;
  for (std::size_t i = 0; i < r * kappa; ++i) {
    const double g_re = 2.0 * re_sum / (d * n2) - z2 * 2.0 * v[2 * i] / (d * n2 * n2);
    const double g_im = 2.0 * im_sum / (d * n2) - z2 * 2.0 * v[2 * i + 1] / (d * n2 * n2);
    for (const auto& [idx, expected] : {std::pair<std::size_t, double>{2 * i, g_re}, {2 * i + 1, g_im}}) {
      std::vector<double> up = v, down = v;
      up[idx] += 1e-5;
      down[idx] -= 1e-5;
      const double fd = (eval(up) - eval(down)) / 2e-5;
      CHECK(fd == doctest::Approx(expected).epsilon(1e-6));
    }
  }
}

TEST_CASE("exhaustive rigid search") {
  const GapInstance yes = gen_yes_instance(4, 4, 2, 31);
  const ProtocolParams params = diagnostic_params();
  const DetectorSpec det{DetectorKind::non_collapsing, 2, params.epsilon, params.delta};
  std::vector<std::uint32_t> best_sigma;
  const double yes_max = exhaustive_rigid_search(yes.system, params, det, &best_sigma);
  CHECK(yes_max == doctest::Approx(params.p_yes).epsilon(1e-12));
  const auto planted = find_satisfying_assignment(yes.system);
  REQUIRE(planted.has_value());
  // the found sigma satisfies every constraint
  for (std::uint32_t j = 0; j < yes.system.r(); ++j) CHECK(yes.system.allows(j, best_sigma[j]));

  const GapInstance no = gen_no_instance(4, 4, 2, 1.0 / 3.0, 31);
  const double no_max = exhaustive_rigid_search(no.system, params, det);
  CHECK(no_max < params.p_yes - 1e-6 * params.p3);

  // R = 1 enumerates exactly kappa maps
  CSPSystem tiny;
  tiny.n_vars = 2;
  tiny.arity = 2;
  tiny.alphabet = 2;
  tiny.constraints.push_back(Constraint{{0, 1}, {{0, 1}}});
  const double tiny_max = exhaustive_rigid_search(tiny, params, det);
  CHECK(tiny_max == doctest::Approx(params.p1 * 0.25 + params.p2 + params.p3 * params.c_yes).epsilon(1e-12));
}
