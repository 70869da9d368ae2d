// analysis.hpp — quantitative bound predicates and constructions: nearest
// quasirigid/rigid states, the feasible acceptance region, the four-case
// soundness classifier, and a sphere-constrained witness optimizer.
#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ncv/verifier.hpp"

namespace ncv {

// Per-row argmax projection of a witness onto the quasirigid set. Ties break
// toward the smallest value-register index.
struct QuasirigidProjection {
  BipartiteWitness phi;
  std::vector<std::uint32_t> f;  // [R] -> value index, per-row argmax
  double gamma = 0.0;            // |<psi|phi>|^2 = sum_j |a_{j,f(j)}|^2
};

QuasirigidProjection nearest_quasirigid(const BipartiteWitness& psi);

// Rigid state over the rows/columns selected by nearest_quasirigid's f, with
// all coefficients 1/sqrt(R).
BipartiteWitness nearest_rigid(const BipartiteWitness& psi);

// (w_D - 1/kappa)^2 + (1 - eps) (w_Q - (1 - Delta)) / Delta <= 1, with
// additive tolerance 1e-10. Requires w_D >= 1/kappa (HypothesisNotMet below).
bool quadratic_feasible(double w_d, double w_q, double epsilon, double delta, double kappa);

// Largest QuasiCheck acceptance compatible with each Density value on a
// uniform grid over [1/kappa, 1]; clamped to [0, 1].
std::vector<std::pair<double, double>> region_boundary(double kappa, double epsilon, double delta,
                                                       std::size_t grid_points);

struct CaseResult {
  int case_id = 0;      // 1..4
  double p_no = 0.0;    // p1 w_D + p2 w_Q + p3 w_C
  double bound = 0.0;   // P_YES - nu_low/(2Z) for cases 1-3, P_YES - nu_high/(2Z) for case 4
  bool holds = false;   // p_no <= bound + 1e-10
};

// Case 1: d <= -nu_low. Case 2: d >= nu_high. Case 3: otherwise and
// w_Q <= 1 - Delta nu_low. Case 4: the rest. The case-4 bound is only
// guaranteed when the profile comes from a witness on a No instance.
CaseResult classify_soundness_case(const AcceptanceProfile& profile, const ProtocolParams& params);

struct OptimizerResult {
  BipartiteWitness best_state;
  double best_value = 0.0;
  std::size_t restarts_used = 0;
  std::vector<double> trace;  // final value of each restart
};

// Multi-restart projected gradient ascent on the unit sphere in R^{2 R kappa}:
// central finite differences (step 1e-5), renormalization after every step,
// step halving on non-improvement, stop below 1e-10 improvement or at 10^4
// iterations. Restart seeds derive deterministically from (seed, index).
OptimizerResult optimize_witness(const std::function<double(const BipartiteWitness&)>& objective, std::size_t r,
                                 std::size_t kappa, std::size_t restarts, std::uint64_t seed);

// Exact maximum of protocol_accept_prob over all kappa^R rigid witnesses.
double exhaustive_rigid_search(const CSPSystem& c, const ProtocolParams& params, const DetectorSpec& det,
                               std::vector<std::uint32_t>* best_sigma = nullptr);

}  // namespace ncv
