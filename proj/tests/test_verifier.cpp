#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncv/random_states.hpp"
#include "ncv/serialize.hpp"
#include "ncv/verifier.hpp"
#include "testutil.hpp"

using namespace ncv;

namespace {

const std::vector<DetectorKind> kAllKinds{DetectorKind::non_collapsing, DetectorKind::non_negative_fourier,
                                          DetectorKind::analytic_collision};

BipartiteWitness uniform_witness(std::size_t r, std::size_t kappa) {
  return BipartiteWitness::from_state(uniform_state(r * kappa), r, kappa);
}

}  // namespace

TEST_CASE("rigid witnesses") {
  const BipartiteWitness single = build_rigid_witness({2}, 1, 4);
  CHECK(squared_overlap(single.to_state(), basis_state(4, 2)) == doctest::Approx(1.0).epsilon(1e-14));

  const BipartiteWitness rigid = build_rigid_witness({1, 3, 0, 2}, 4, 4);
  CHECK(is_rigid(rigid));
  CHECK(density_accept_prob(rigid) == doctest::Approx(0.25).epsilon(1e-13));
  for (const DetectorKind kind : kAllKinds) {
    const DetectorSpec det = make_detector(kind, 2, 0.1);
    CHECK(quasicheck_accept_prob(rigid, det) == doctest::Approx(1.0).epsilon(1e-13));
  }

  CHECK_THROWS_AS(build_rigid_witness({5}, 1, 4), Error);
  CHECK_THROWS_AS(build_rigid_witness({0, 1}, 3, 4), Error);
}

TEST_CASE("density test") {
  CHECK(density_accept_prob(uniform_witness(4, 4)) == doctest::Approx(1.0).epsilon(1e-13));
  BipartiteWitness basis{4, 4, std::vector<cplx>(16, cplx(0, 0))};
  basis.amps[5] = cplx(1, 0);
  CHECK(density_accept_prob(basis) == doctest::Approx(1.0 / 16).epsilon(1e-13));
}

TEST_CASE("quasicheck values and the c-weighted upper bound") {
  const DetectorSpec collision = make_detector(DetectorKind::analytic_collision, 2, 0.1);
  CHECK(quasicheck_accept_prob(uniform_witness(4, 4), collision) == doctest::Approx(0.25).epsilon(1e-13));

  // c_{j,eps} flag definition on a handmade two-row witness
  const double eps = 0.2;
  const DetectorSpec det = make_detector(DetectorKind::analytic_collision, 1, eps);
  BipartiteWitness w{2, 2, std::vector<cplx>(4, cplx(0, 0))};
  w.amps[0] = cplx(std::sqrt(0.45), 0);  // row 0: conditional max 0.9 > 1 - eps -> near
  w.amps[1] = cplx(std::sqrt(0.05), 0);
  w.amps[2] = cplx(std::sqrt(0.25), 0);  // row 1: conditional max 0.5 <= 1 - eps -> far
  w.amps[3] = cplx(std::sqrt(0.25), 0);
  QuasiCheckBreakdown breakdown;
  quasicheck_accept_prob(w, det, &breakdown);
  CHECK(breakdown.c_flag[0] == doctest::Approx(1.0));
  CHECK(breakdown.c_flag[1] == doctest::Approx(1.0 - det.delta));

  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    for (const DetectorKind kind : kAllKinds) {
      const bool nonneg = kind == DetectorKind::non_negative_fourier;
      const BipartiteWitness psi = sample_witness_mixed(4, 4, rng, nonneg);
      const DetectorSpec d = make_detector(kind, 2, 0.1);
      QuasiCheckBreakdown b;
      const double value = quasicheck_accept_prob(psi, d, &b);
      CHECK(value <= quasicheck_upper_bound(b) + 1e-12);
    }
  }
}

TEST_CASE("constraint check") {
  const GapInstance yes = gen_yes_instance(4, 6, 2, 21);
  const auto planted = find_satisfying_assignment(yes.system);
  REQUIRE(planted.has_value());
  const BipartiteWitness rigid = build_rigid_witness(induced_sigma(yes.system, *planted), 6, 4);
  CHECK(constraintcheck_accept_prob(rigid, yes.system, 0.75) == doctest::Approx(0.75).epsilon(1e-13));
  // dampening is linear in C_YES
  CHECK(constraintcheck_accept_prob(rigid, yes.system, 0.375) ==
        doctest::Approx(0.5 * constraintcheck_accept_prob(rigid, yes.system, 0.75)).epsilon(1e-13));

  // all-empty system rejects everything
  CSPSystem empty = yes.system;
  for (auto& c : empty.constraints) c.allowed.clear();
  Rng rng(5);
  const BipartiteWitness any = random_witness(6, 4, rng);
  CHECK(constraintcheck_accept_prob(any, empty, 0.75) == doctest::Approx(0.0));

  // rigid witnesses on a No instance never beat C_YES * delta
  const GapInstance no = gen_no_instance(4, 4, 2, 1.0 / 3.0, 77);
  std::vector<std::uint32_t> sigma(4, 0);
  double best = 0.0;
  for (;;) {
    best = std::max(best, constraintcheck_accept_prob(build_rigid_witness(sigma, 4, 4), no.system, 0.75));
    std::size_t pos = 0;
    while (pos < 4 && ++sigma[pos] == 4) sigma[pos++] = 0;
    if (pos == 4) break;
  }
  CHECK(best <= 0.75 * no.delta + 1e-12);

  CHECK_THROWS_AS(constraintcheck_accept_prob(uniform_witness(3, 4), no.system, 0.75), Error);
}

TEST_CASE("mixture") {
  // worked diagnostic constants
  const double delta = delta_noncollapsing(2, 0.0025);
  CHECK(delta == doctest::Approx(0.0049875).epsilon(1e-12));
  const Mixture m = mixture(0.0025, 0.1, 0.1, delta, 0.75, 4);
  CHECK(m.p1 + m.p2 + m.p3 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.z == doctest::Approx(5334.533).epsilon(1e-4));
  CHECK(m.p2 * m.z == doctest::Approx(5333.333).epsilon(1e-4));
  CHECK(m.p3 * m.z == doctest::Approx(0.2).epsilon(1e-12));

  // p2 Delta >= 2 p1 whenever nu_high <= 1
  Rng rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    const double nu_high = 0.01 + 0.99 * rng.uniform01();
    const double nu_low = nu_high + (1.0 - nu_high) * rng.uniform01();
    const double eps = nu_high * nu_high * rng.uniform01() * 0.99;
    if (!(eps > 0.0)) continue;
    const double dd = 0.01 + 0.49 * rng.uniform01();
    const double c_yes = 0.05 + 0.9 * rng.uniform01();
    const Mixture mm = mixture(eps, nu_low, nu_high, dd, c_yes, 4);
    CHECK(mm.p2 * dd >= 2.0 * mm.p1 - 1e-12);
    CHECK(mm.p1 + mm.p2 + mm.p3 == doctest::Approx(1.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(mixture(0.5, 0.5, 0.5, 0.1, 0.75, 4), Error);  // nu_high^2 <= eps
}

TEST_CASE("choose_constants satisfies the three displayed inequalities") {
  for (const auto& [xi, c_yes] : std::vector<std::pair<double, double>>{{0.5, 0.75}, {0.25, 0.5}, {0.1, 0.9}}) {
    const ProtocolParams p = proof_params(4, xi, c_yes, DetectorKind::non_collapsing);
    const ConstantInequalities ineq = check_constant_inequalities(p);
    CHECK(ineq.ordering);
    CHECK(ineq.ratio);
    CHECK(ineq.transfer);
    CHECK(p.gap > 0.0);
  }
  // the diagnostic preset deliberately violates the ratio inequality
  const ConstantInequalities diag = check_constant_inequalities(diagnostic_params());
  CHECK(diag.ordering);
  CHECK_FALSE(diag.ratio);
}

TEST_CASE("completeness identity") {
  const GapInstance yes = gen_yes_instance(4, 6, 2, 3);
  const auto planted = find_satisfying_assignment(yes.system);
  REQUIRE(planted.has_value());
  const BipartiteWitness rigid = build_rigid_witness(induced_sigma(yes.system, *planted), 6, 4);
  for (const std::string& preset : {"diagnostic", "proof"}) {
    const ProtocolParams params =
        preset == "diagnostic" ? diagnostic_params() : proof_params(4, 0.5, 0.75, DetectorKind::non_collapsing);
    const DetectorSpec det{DetectorKind::non_collapsing, 2, params.epsilon, params.delta};
    AcceptanceProfile profile;
    const double accept = protocol_accept_prob(rigid, yes.system, params, det, &profile);
    CHECK(std::abs(accept - params.p_yes) <= 1e-12);
    CHECK(profile.w_c == doctest::Approx(params.c_yes).epsilon(1e-13));
  }
}

TEST_CASE("sampled operations agree with their analytic twins") {
  const GapInstance yes = gen_yes_instance(4, 6, 2, 3);
  const auto planted = find_satisfying_assignment(yes.system);
  const BipartiteWitness rigid = build_rigid_witness(induced_sigma(yes.system, *planted), 6, 4);
  Rng source(101);
  const BipartiteWitness random = sample_witness_mixed(6, 4, source);
  const ProtocolParams params = diagnostic_params();
  const DetectorSpec det{DetectorKind::non_collapsing, 2, params.epsilon, params.delta};

  const std::size_t n = 20000;
  Rng rng(55);
  for (const BipartiteWitness* w : {&rigid, &random}) {
    const double d_emp = ncvtest::empirical_mean(n, [&](Rng& r) { return density_sample(*w, r); }, rng);
    CHECK(ncvtest::within_4sigma(d_emp, density_accept_prob(*w), n));

    const double q_emp = ncvtest::empirical_mean(n, [&](Rng& r) { return quasicheck_sample(*w, det, r); }, rng);
    CHECK(ncvtest::within_4sigma(q_emp, quasicheck_accept_prob(*w, det), n));

    const double c_emp = ncvtest::empirical_mean(
        n, [&](Rng& r) { return constraintcheck_sample(*w, yes.system, params.c_yes, r); }, rng);
    CHECK(ncvtest::within_4sigma(c_emp, constraintcheck_accept_prob(*w, yes.system, params.c_yes), n));

    const double p_emp = ncvtest::empirical_mean(
        n, [&](Rng& r) { return protocol_sample(*w, yes.system, params, det, r); }, rng);
    CHECK(ncvtest::within_4sigma(p_emp, protocol_accept_prob(*w, yes.system, params, det), n));
  }
}

TEST_CASE("params JSON round trip") {
  const ProtocolParams p = diagnostic_params();
  const json doc = params_to_json(p);
  CHECK(doc.at("epsilon").get<double>() == doctest::Approx(0.0025));
  CHECK(doc.at("nu_low").get<double>() == doctest::Approx(0.1));
  CHECK(doc.at("c_yes").get<double>() == doctest::Approx(0.75));
  const ProtocolParams back = params_from_json(doc);
  CHECK(params_to_json(back) == doc);

  const DetectorSpec det = make_detector(DetectorKind::non_negative_fourier, 2, 0.04);
  const json dj = detector_to_json(det);
  CHECK(dj.at("kind") == "nonneg");
  const DetectorSpec dback = detector_from_json(dj);
  CHECK(detector_to_json(dback) == dj);
}

TEST_CASE("quasirigid construction and recognition") {
  Rng rng(71);
  const BipartiteWitness q = random_quasirigid_witness(5, 4, rng);
  CHECK(is_quasirigid(q));
  const DetectorSpec det = make_detector(DetectorKind::analytic_collision, 2, 0.05);
  CHECK(quasicheck_accept_prob(q, det) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(density_accept_prob(q) <= 0.25 + 1e-12);

  const BipartiteWitness r = build_rigid_witness({0, 1, 2, 3}, 4, 4);
  CHECK(is_rigid(r));
}
