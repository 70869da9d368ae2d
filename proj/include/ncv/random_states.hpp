// random_states.hpp — seeded samplers for witnesses and states used by the
// certification suites and the region scatter.
#pragma once

#include "ncv/verifier.hpp"

namespace ncv {

StateVector haar_state(std::size_t dim, Rng& rng);
// Haar-like with all amplitudes real nonnegative
StateVector nonneg_state(std::size_t dim, Rng& rng);

BipartiteWitness random_witness(std::size_t r, std::size_t kappa, Rng& rng);
BipartiteWitness random_nonneg_witness(std::size_t r, std::size_t kappa, Rng& rng);

// quasirigid with random sigma and random unit coefficient vector
BipartiteWitness random_quasirigid_witness(std::size_t r, std::size_t kappa, Rng& rng, bool nonneg = false);

// witness mixed with noise: normalize(sqrt(1-eta) psi + sqrt(eta) noise)
BipartiteWitness perturb_witness(const BipartiteWitness& w, double eta, Rng& rng, bool nonneg = false);

// normalize(sqrt(1-s) |+> + sqrt(s) h) for Haar h; larger Density overlap as
// s decreases
BipartiteWitness plus_biased_witness(std::size_t r, std::size_t kappa, double s, Rng& rng, bool nonneg = false);

// Mixed-kind sampler covering the acceptance plane: Haar states, |+>-biased
// states, exact and perturbed quasirigid states, basis-concentrated states.
BipartiteWitness sample_witness_mixed(std::size_t r, std::size_t kappa, Rng& rng, bool nonneg = false);

}  // namespace ncv
