#include "ncv/random_states.hpp"

#include <cmath>

namespace ncv {

StateVector haar_state(std::size_t dim, Rng& rng) {
  std::vector<cplx> raw(dim);
  for (cplx& a : raw) a = cplx(rng.gaussian(), rng.gaussian());
  return normalize(raw);
}

StateVector nonneg_state(std::size_t dim, Rng& rng) {
  std::vector<cplx> raw(dim);
  for (cplx& a : raw) a = cplx(std::abs(rng.gaussian()), 0.0);
  return normalize(raw);
}

BipartiteWitness random_witness(std::size_t r, std::size_t kappa, Rng& rng) {
  return BipartiteWitness::from_state(haar_state(r * kappa, rng), r, kappa);
}

BipartiteWitness random_nonneg_witness(std::size_t r, std::size_t kappa, Rng& rng) {
  return BipartiteWitness::from_state(nonneg_state(r * kappa, rng), r, kappa);
}

BipartiteWitness random_quasirigid_witness(std::size_t r, std::size_t kappa, Rng& rng, bool nonneg) {
  RigidDescriptor desc;
  desc.sigma.resize(r);
  for (auto& s : desc.sigma) s = static_cast<std::uint32_t>(rng.below(kappa));
  std::vector<cplx> raw(r);
  for (cplx& b : raw) b = nonneg ? cplx(std::abs(rng.gaussian()), 0.0) : cplx(rng.gaussian(), rng.gaussian());
  desc.b = normalize(raw).amps;
  return build_quasirigid_witness(desc, kappa);
}

BipartiteWitness perturb_witness(const BipartiteWitness& w, double eta, Rng& rng, bool nonneg) {
  const StateVector noise = nonneg ? nonneg_state(w.dim(), rng) : haar_state(w.dim(), rng);
  std::vector<cplx> raw(w.dim());
  const double a = std::sqrt(1.0 - eta), b = std::sqrt(eta);
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = a * w.amps[i] + b * noise.amps[i];
  return BipartiteWitness::from_state(normalize(raw), w.r, w.kappa);
}

BipartiteWitness plus_biased_witness(std::size_t r, std::size_t kappa, double s, Rng& rng, bool nonneg) {
  const std::size_t dim = r * kappa;
  const StateVector h = nonneg ? nonneg_state(dim, rng) : haar_state(dim, rng);
  const double plus_amp = std::sqrt((1.0 - s) / static_cast<double>(dim));
  std::vector<cplx> raw(dim);
  const double b = std::sqrt(s);
  for (std::size_t i = 0; i < dim; ++i) raw[i] = cplx(plus_amp, 0.0) + b * h.amps[i];
  return BipartiteWitness::from_state(normalize(raw), r, kappa);
}

BipartiteWitness sample_witness_mixed(std::size_t r, std::size_t kappa, Rng& rng, bool nonneg) {
  switch (rng.below(5)) {
    case 0:
      return nonneg ? random_nonneg_witness(r, kappa, rng) : random_witness(r, kappa, rng);
    case 1:
      return plus_biased_witness(r, kappa, rng.uniform01(), rng, nonneg);
    case 2:
      return random_quasirigid_witness(r, kappa, rng, nonneg);
    case 3: {
      // log-uniform perturbation strength in [1e-6, ~0.3]
      const double eta = std::pow(10.0, -6.0 + 5.5 * rng.uniform01());
      return perturb_witness(random_quasirigid_witness(r, kappa, rng, nonneg), std::min(eta, 0.3), rng, nonneg);
    }
    default: {
      // mass concentrated on one basis element plus light noise
      BipartiteWitness w{r, kappa, std::vector<cplx>(r * kappa, cplx(0.0, 0.0))};
      w.amps[rng.below(r * kappa)] = cplx(1.0, 0.0);
      return perturb_witness(w, 0.05 * rng.uniform01(), rng, nonneg);
    }
  }
}

}  // namespace ncv
