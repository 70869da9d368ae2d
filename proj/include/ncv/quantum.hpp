// quantum.hpp — finite-dimensional statevector core: Born-rule sampling,
// collapsing and non-collapsing measurement, generalized Fourier utilities,
// density matrices and the Fuchs–van de Graaf effect bound.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ncv/errors.hpp"
#include "ncv/rng.hpp"

namespace ncv {

using cplx = std::complex<double>;

// unit-norm / Hermiticity tolerance used everywhere at desk scale
inline constexpr double kNormTol = 1e-12;

// Unit-norm amplitude vector over an arbitrary finite dimension. Register
// dimensions are not restricted to powers of two.
struct StateVector {
  std::vector<cplx> amps;
  std::size_t dim() const { return amps.size(); }
};

// Split of a state into a left (constraint-index) and right (value) register;
// left_dim * right_dim must equal the dimension of the state it splits.
struct RegisterSplit {
  std::size_t left_dim = 1;
  std::size_t right_dim = 1;
};

// Dense row-major complex square matrix; used for density operators and
// measurement effects alike.
struct Matrix {
  std::size_t dim = 0;
  std::vector<cplx> entries;  // row-major, dim*dim

  cplx& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  static Matrix zero(std::size_t d) { return Matrix{d, std::vector<cplx>(d * d)}; }
};

struct MeasurementRecord {
  std::size_t outcome = 0;
  bool collapsed = false;
  // identical to the input when collapsed == false; the value-register
  // conditional state when collapsed == true
  StateVector post_state;
};

StateVector normalize(const std::vector<cplx>& raw);
StateVector uniform_state(std::size_t d);
StateVector basis_state(std::size_t d, std::size_t index);

double norm_squared(const StateVector& s);
bool is_normalized(const StateVector& s, double tol = kNormTol);
void validate_state(const StateVector& s, double tol = kNormTol);

cplx inner_product(const StateVector& a, const StateVector& b);  // <a|b>
double squared_overlap(const StateVector& a, const StateVector& b);

std::vector<double> born_probabilities(const StateVector& s);

// Collapsing measurement of the left register: outcome j has probability
// sum_x |a_{j,x}|^2 and the post state is the normalized right-register
// conditional (right_dim-dimensional).
MeasurementRecord collapse_measure(const StateVector& s, const RegisterSplit& split, Rng& rng);

// Full computational-basis measurement outcome (no post state needed).
std::size_t sample_outcome(const StateVector& s, Rng& rng);

// Non-collapsing measurement: a Born-rule sample of the full state that
// leaves the amplitudes bitwise unchanged.
MeasurementRecord noncollapse_measure(const StateVector& s, Rng& rng);

// Generalized discrete Fourier basis over Z_d; frequency 0 is the uniform
// superposition |+>.
StateVector fourier_basis_state(std::size_t d, std::size_t freq);
std::vector<double> fourier_probabilities(const StateVector& s);
std::size_t fourier_measure(const StateVector& s, Rng& rng);

// <psi|Op|psi> (real part; exact for Hermitian Op)
double expectation(const Matrix& op, const StateVector& psi);

// True iff |<psi1|E|psi1> - <psi2|E|psi2>| <= sqrt(1 - |<psi1|psi2>|^2) + 1e-10.
// The effect must be Hermitian with eigenvalues in [0, 1]; anything else is
// rejected with InvalidEffect.
bool fuchs_bound_holds(const Matrix& effect, const StateVector& psi1, const StateVector& psi2);

Matrix ensemble_density(const std::vector<StateVector>& states, const std::vector<double>& weights);
double max_entry_distance(const Matrix& a, const Matrix& b);
bool is_valid_density(const Matrix& m, double tol = kNormTol);

}  // namespace ncv
