// supdetect.hpp — superposition detectors: the one-non-collapsing-measurement
// detector, the Fourier-basis detector for non-negative-amplitude states, and
// their exact analytic acceptance oracles.
#pragma once

#include <cstddef>
#include <string>

#include "ncv/quantum.hpp"

namespace ncv {

enum class DetectorKind {
  non_collapsing,        // one non-collapsing + one collapsing measurement, accept on agreement
  non_negative_fourier,  // Fourier-basis measurement, reject only the zero frequency
  analytic_collision,    // ideal detector: acceptance equals the collision probability exactly
};

std::string detector_kind_name(DetectorKind kind);
DetectorKind detector_kind_from_name(const std::string& name);

// A detector instance on a 2^k-dimensional value register with far-state
// threshold epsilon and soundness margin delta: basis states accept with
// probability 1, states with max basis overlap <= 1-epsilon accept with
// probability at most 1-delta.
struct DetectorSpec {
  DetectorKind kind = DetectorKind::analytic_collision;
  unsigned k = 1;  // register size 2^k
  double epsilon = 0.0;
  double delta = 0.0;

  std::size_t dim() const { return static_cast<std::size_t>(1) << k; }
};

// Builds a spec with the margin appropriate to the kind: 2(x - x^2) with
// x = min(epsilon, 2^-k) for the collision-based kinds, and the derivation
// chain value sqrt(epsilon) * 2^(-3k/2) for the non-negative Fourier kind.
DetectorSpec make_detector(DetectorKind kind, unsigned k, double epsilon);

// Margin of the one-non-collapsing-measurement detector. Requires
// 0 < epsilon <= 1 - 2^-k; the result lies in (0, 1/2].
double delta_noncollapsing(unsigned k, double epsilon);
double delta_noncollapsing_dim(std::size_t dim, double epsilon);

// Proven margin of the Fourier detector on non-negative states, from the
// cross-term bound sqrt(epsilon) * 2^(-k/2) scaled by the 2^-k acceptance
// prefactor. Deliberately not the headline sqrt(epsilon / 2^k), which the
// grid scan below shows can exceed the true margin.
double delta_nonneg_chain(unsigned k, double epsilon);

// sum over basis outcomes of p^2; the exact acceptance probability of the
// non-collapsing detector
double collision_accept_prob(const StateVector& psi);

// one non-collapsing measurement followed by one collapsing measurement;
// returns 1 iff the outcomes agree
int noncollapsing_detect(const StateVector& psi, Rng& rng);

// acceptance of Verify+: 1 - (1/d) |sum_i a_i|^2
double verify_plus_accept_prob(const StateVector& psi);

// Fourier-basis sample; returns 0 on the zero-frequency outcome, 1 otherwise.
// The empirical mean converges to verify_plus_accept_prob.
int nonneg_detect(const StateVector& psi, Rng& rng);

// Analytic acceptance of the detector named by the spec. The non-negative
// Fourier kind carries the +2^-k SupDetect normalization, clamped to [0, 1].
double detector_accept_prob(const DetectorSpec& spec, const StateVector& psi);

// Sampled path with mean exactly detector_accept_prob(spec, psi).
int detector_sample(const DetectorSpec& spec, const StateVector& psi, Rng& rng);

// Acceptance of the normalized restriction of a raw amplitude block with
// total squared weight `weight` > 0; avoids materializing the conditional
// state inside QuasiCheck loops.
double detector_accept_prob_conditional(const DetectorSpec& spec, const cplx* amps, std::size_t d, double weight);

struct DetectorAnalysis {
  double t = 0.0;           // largest squared basis overlap
  double x = 0.0;           // the clamp min(epsilon, 2^-k)
  double accept_prob = 0.0;
};

DetectorAnalysis analyze_state(const DetectorSpec& spec, const StateVector& psi);

// Identical-ensemble distinguishing experiment: uniform draws from the
// computational basis versus the Fourier basis on k qubits.
struct EnsembleReport {
  double acc_computational = 0.0;
  double acc_fourier = 0.0;
  double density_gap = 0.0;
};

EnsembleReport distinguish_ensembles_experiment(unsigned k, std::size_t n, Rng& rng);

// Brute-force certification of the Fourier detector on the grid of
// non-negative states with squared amplitudes stepping by `step`.
struct NonnegGridReport {
  unsigned k = 1;
  double epsilon = 0.0;
  double step = 0.01;
  double max_far_accept = 0.0;    // largest SupDetect acceptance among far grid states
  double verified_delta = 0.0;    // 1 - max_far_accept
  double chain_delta = 0.0;       // sqrt(epsilon) * 2^(-3k/2)
  double headline_delta = 0.0;    // sqrt(epsilon / 2^k)
  bool only_basis_saturate = true;  // verify_plus == 1 - 2^-k only at basis states
  std::size_t states_scanned = 0;
};

NonnegGridReport nonneg_grid_scan(unsigned k, double epsilon, double step = 0.01);

}  // namespace ncv
