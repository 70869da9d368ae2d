#include "ncv/quantum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace ncv {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Eigen::MatrixXcd to_eigen(const Matrix& m) {
  Eigen::MatrixXcd out(m.dim, m.dim);
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m.at(i, j);
  return out;
}

}  // namespace

StateVector normalize(const std::vector<cplx>& raw) {
  double n2 = 0.0;
  for (const cplx& a : raw) n2 += std::norm(a);
  if (!(n2 > 0.0)) fail(Errc::zero_vector, "normalize: input vector has zero norm");
  const double inv = 1.0 / std::sqrt(n2);
  StateVector s;
  s.amps.reserve(raw.size());
  for (const cplx& a : raw) s.amps.push_back(a * inv);
  return s;
}

StateVector uniform_state(std::size_t d) {
  if (d == 0) fail(Errc::bad_argument, "uniform_state: dimension must be positive");
  return StateVector{std::vector<cplx>(d, cplx(1.0 / std::sqrt(static_cast<double>(d)), 0.0))};
}

StateVector basis_state(std::size_t d, std::size_t index) {
  if (index >= d) fail(Errc::bad_index, "basis_state: index out of range");
  StateVector s{std::vector<cplx>(d, cplx(0.0, 0.0))};
  s.amps[index] = cplx(1.0, 0.0);
  return s;
}

double norm_squared(const StateVector& s) {
  double n2 = 0.0;
  for (const cplx& a : s.amps) n2 += std::norm(a);
  return n2;
}

bool is_normalized(const StateVector& s, double tol) { return std::abs(norm_squared(s) - 1.0) <= tol; }

void validate_state(const StateVector& s, double tol) {
  if (s.dim() == 0) fail(Errc::bad_argument, "state has dimension zero");
  if (!is_normalized(s, tol)) fail(Errc::bad_argument, "state is not unit-norm");
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) fail(Errc::dim_mismatch, "inner_product: dimensions differ");
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amps[i]) * b.amps[i];
  return acc;
}

double squared_overlap(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }

std::vector<double> born_probabilities(const StateVector& s) {
  std::vector<double> p(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) p[i] = std::norm(s.amps[i]);
  return p;
}

MeasurementRecord collapse_measure(const StateVector& s, const RegisterSplit& split, Rng& rng) {
  if (split.left_dim * split.right_dim != s.dim())
    fail(Errc::dim_mismatch, "collapse_measure: register split does not match state dimension");
  std::vector<double> weights(split.left_dim, 0.0);
  for (std::size_t j = 0; j < split.left_dim; ++j)
    for (std::size_t x = 0; x < split.right_dim; ++x) weights[j] += std::norm(s.amps[j * split.right_dim + x]);
  const std::size_t j = rng.pick(weights);
  std::vector<cplx> row(s.amps.begin() + static_cast<std::ptrdiff_t>(j * split.right_dim),
                        s.amps.begin() + static_cast<std::ptrdiff_t>((j + 1) * split.right_dim));
  MeasurementRecord rec;
  rec.outcome = j;
  rec.collapsed = true;
  rec.post_state = normalize(row);  // weights[j] > 0 by the sampler contract
  return rec;
}

std::size_t sample_outcome(const StateVector& s, Rng& rng) { return rng.pick(born_probabilities(s)); }

MeasurementRecord noncollapse_measure(const StateVector& s, Rng& rng) {
  MeasurementRecord rec;
  rec.outcome = sample_outcome(s, rng);
  rec.collapsed = false;
  rec.post_state = s;
  return rec;
}

StateVector fourier_basis_state(std::size_t d, std::size_t freq) {
  if (freq >= d) fail(Errc::bad_index, "fourier_basis_state: frequency out of range");
  StateVector s{std::vector<cplx>(d)};
  const double inv = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t n = 0; n < d; ++n) {
    const double angle = kTwoPi * static_cast<double>((freq * n) % d) / static_cast<double>(d);
    s.amps[n] = cplx(inv * std::cos(angle), inv * std::sin(angle));
  }
  return s;
}

std::vector<double> fourier_probabilities(const StateVector& s) {
  const std::size_t d = s.dim();
  std::vector<double> p(d);
  const double inv = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t m = 0; m < d; ++m) {
    cplx acc(0.0, 0.0);
    for (std::size_t n = 0; n < d; ++n) {
      const double angle = -kTwoPi * static_cast<double>((m * n) % d) / static_cast<double>(d);
      acc += cplx(std::cos(angle), std::sin(angle)) * s.amps[n];
    }
    p[m] = std::norm(acc * inv);
  }
  return p;
}

std::size_t fourier_measure(const StateVector& s, Rng& rng) { return rng.pick(fourier_probabilities(s)); }

double expectation(const Matrix& op, const StateVector& psi) {
  if (op.dim != psi.dim()) fail(Errc::dim_mismatch, "expectation: operator and state dimensions differ");
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < op.dim; ++i) {
    cplx row(0.0, 0.0);
    for (std::size_t j = 0; j < op.dim; ++j) row += op.at(i, j) * psi.amps[j];
    acc += std::conj(psi.amps[i]) * row;
  }
  return acc.real();
}

bool fuchs_bound_holds(const Matrix& effect, const StateVector& psi1, const StateVector& psi2) {
  if (effect.dim != psi1.dim() || psi1.dim() != psi2.dim())
    fail(Errc::dim_mismatch, "fuchs_bound_holds: dimensions differ");
  const Eigen::MatrixXcd e = to_eigen(effect);
  if ((e - e.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    fail(Errc::invalid_effect, "fuchs_bound_holds: effect is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  if (ev.minCoeff() < -1e-10 || ev.maxCoeff() > 1.0 + 1e-10)
    fail(Errc::invalid_effect, "fuchs_bound_holds: effect eigenvalues outside [0, 1]");
  const double lhs = std::abs(expectation(effect, psi1) - expectation(effect, psi2));
  const double fid = squared_overlap(psi1, psi2);
  const double rhs = std::sqrt(std::max(0.0, 1.0 - fid));
  return lhs <= rhs + 1e-10;
}

Matrix ensemble_density(const std::vector<StateVector>& states, const std::vector<double>& weights) {
  if (states.empty() || states.size() != weights.size())
    fail(Errc::invalid_weights, "ensemble_density: states and weights must be nonempty and equal-length");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) fail(Errc::invalid_weights, "ensemble_density: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kNormTol) fail(Errc::invalid_weights, "ensemble_density: weights do not sum to 1");
  const std::size_t d = states.front().dim();
  for (const StateVector& s : states)
    if (s.dim() != d) fail(Errc::dim_mismatch, "ensemble_density: state dimensions differ");
  Matrix rho = Matrix::zero(d);
  for (std::size_t k = 0; k < states.size(); ++k) {
    const StateVector& s = states[k];
    const double w = weights[k];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) rho.at(i, j) += w * s.amps[i] * std::conj(s.amps[j]);
  }
  return rho;
}

double max_entry_distance(const Matrix& a, const Matrix& b) {
  if (a.dim != b.dim) fail(Errc::dim_mismatch, "max_entry_distance: dimensions differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
  return m;
}

bool is_valid_density(const Matrix& m, double tol) {
  if (m.dim == 0 || m.entries.size() != m.dim * m.dim) return false;
  cplx tr(0.0, 0.0);
  for (std::size_t i = 0; i < m.dim; ++i) tr += m.at(i, i);
  if (std::abs(tr - cplx(1.0, 0.0)) > tol) return false;
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j)
      if (std::abs(m.at(i, j) - std::conj(m.at(j, i))) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -1e-10;
}

}  // namespace ncv
