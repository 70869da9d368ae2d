// verifier.hpp — the Density / QuasiCheck / dampened ConstraintCheck tests,
// protocol constant selection, the three-branch probability mixture, and
// end-to-end protocol execution (analytic and sampled).
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ncv/csp.hpp"
#include "ncv/quantum.hpp"
#include "ncv/supdetect.hpp"

namespace ncv {

// Witness over a constraint-index register of dimension R and a value
// register of dimension kappa, stored row-major: amps[j * kappa + x].
struct BipartiteWitness {
  std::size_t r = 0;
  std::size_t kappa = 0;
  std::vector<cplx> amps;

  std::size_t dim() const { return r * kappa; }
  cplx& at(std::size_t j, std::size_t x) { return amps[j * kappa + x]; }
  const cplx& at(std::size_t j, std::size_t x) const { return amps[j * kappa + x]; }
  StateVector to_state() const { return StateVector{amps}; }
  static BipartiteWitness from_state(const StateVector& s, std::size_t r, std::size_t kappa);
};

// Quasirigid witness description: one value per constraint index with
// coefficients b; rigid iff every b_j = 1/sqrt(R).
struct RigidDescriptor {
  std::vector<std::uint32_t> sigma;  // [R] -> value index
  std::vector<cplx> b;
};

BipartiteWitness build_rigid_witness(const std::vector<std::uint32_t>& sigma, std::size_t r, std::size_t kappa);
BipartiteWitness build_quasirigid_witness(const RigidDescriptor& desc, std::size_t kappa);

bool is_quasirigid(const BipartiteWitness& w, double tol = kNormTol);
bool is_rigid(const BipartiteWitness& w, double tol = kNormTol);

// A(Density, psi) = |<+|psi>|^2
double density_accept_prob(const BipartiteWitness& w);
// Fourier-basis measurement of the joint register; accept on zero frequency
int density_sample(const BipartiteWitness& w, Rng& rng);

// Per-branch QuasiCheck data: row weights sum_x |a_{j,x}|^2 together with the
// c_{j,epsilon} flags (1-Delta when the conditional max overlap is at most
// 1-epsilon, else 1) and the detector acceptance of each conditional row.
struct QuasiCheckBreakdown {
  std::vector<double> row_weight;
  std::vector<double> c_flag;
  std::vector<double> row_accept;
};

// sum_j weight_j * detector acceptance of the normalized row j; zero-weight
// rows are skipped (they are never sampled)
double quasicheck_accept_prob(const BipartiteWitness& w, const DetectorSpec& det,
                              QuasiCheckBreakdown* breakdown = nullptr);
int quasicheck_sample(const BipartiteWitness& w, const DetectorSpec& det, Rng& rng);

// the c-weighted upper bound sum_j weight_j * c_{j,epsilon}
double quasicheck_upper_bound(const QuasiCheckBreakdown& breakdown);

// C_YES * sum over satisfying (j, x) of |a_{j,x}|^2
double constraintcheck_accept_prob(const BipartiteWitness& w, const CSPSystem& c, double c_yes);
int constraintcheck_sample(const BipartiteWitness& w, const CSPSystem& c, double c_yes, Rng& rng);

// All protocol constants plus the resolved mixture.
struct ProtocolParams {
  std::uint32_t kappa = 0;
  double epsilon = 0.0;
  double nu_low = 0.0;
  double nu_high = 0.0;
  double c_yes = 0.0;
  double xi = 0.0;
  double delta = 0.0;  // detector margin at epsilon
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
  double z = 0.0;
  double p_yes = 0.0;
  double gap = 0.0;  // nu_high / (2 Z)
};

struct Mixture {
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
  double z = 0.0;
  double p_yes = 0.0;
  double gap = 0.0;
};

// p1 = 1/Z, p2 = (nu_low + nu_high)(1 - eps) / (Delta (nu_high^2 - eps) Z),
// p3 = nu_low / (2 (1 - C_YES) Z); requires eps < nu_high^2.
Mixture mixture(double epsilon, double nu_low, double nu_high, double delta, double c_yes, std::uint32_t kappa);

struct ConstantChoice {
  double epsilon = 0.0;
  double nu_low = 0.0;
  double nu_high = 0.0;
};

// Selection of (epsilon, nu_low, nu_high): all constants equal and shrunk
// until the transfer inequality holds, then nu_high reduced for the ratio
// inequality, then epsilon reduced below nu_high^2; finally a golden-section
// refinement over nu_low maximizing nu_high/(2Z), re-deriving nu_high and
// epsilon at every step.
ConstantChoice choose_constants(std::uint32_t kappa, double xi, double c_yes,
                                const std::function<double(double)>& delta_of_eps);

ProtocolParams make_params(std::uint32_t kappa, double xi, double c_yes, const ConstantChoice& constants,
                           double delta);

// The three displayed constant inequalities from the soundness analysis.
struct ConstantInequalities {
  bool ordering = false;  // eps < nu_high^2 <= nu_low^2 <= 1
  bool ratio = false;     // nu_high/nu_low <= xi / (6 (1 - C_YES))
  bool transfer = false;  // (kappa nu_low + (kappa+1) sqrt(eps + nu_low))^(1/2) <= xi/2
};

ConstantInequalities check_constant_inequalities(const ProtocolParams& p);

// structural invariants only (probability ranges, normalization); the proof
// inequalities are reported separately because the diagnostic preset violates
// the ratio inequality by design
void validate_params(const ProtocolParams& p);

// Fixed measurable-gap preset: epsilon = 0.0025, nu_low = nu_high = 0.1,
// C_YES = 3/4, xi = 1/2, kappa = 4, detector margin derived from the kind.
ProtocolParams diagnostic_params(DetectorKind kind = DetectorKind::non_collapsing);

// Preset satisfying all three constant inequalities; the resulting promise
// gap sits far below double precision at kappa = 4.
ProtocolParams proof_params(std::uint32_t kappa, double xi, double c_yes,
                            DetectorKind kind = DetectorKind::non_collapsing);

struct AcceptanceProfile {
  double w_d = 0.0;  // Density acceptance
  double w_q = 0.0;  // QuasiCheck acceptance
  double w_c = 0.0;  // ConstraintCheck acceptance
  double d = 0.0;    // signed Density deviation w_d - 1/kappa
  double d_q = 0.0;  // QuasiCheck deficit (1 - w_q) / Delta
};

double protocol_accept_prob(const BipartiteWitness& w, const CSPSystem& c, const ProtocolParams& params,
                            const DetectorSpec& det, AcceptanceProfile* profile = nullptr);
int protocol_sample(const BipartiteWitness& w, const CSPSystem& c, const ProtocolParams& params,
                    const DetectorSpec& det, Rng& rng);

// detector margin function for a kind at register size kappa = 2^k
std::function<double(double)> delta_function(DetectorKind kind, unsigned k);

}  // namespace ncv
