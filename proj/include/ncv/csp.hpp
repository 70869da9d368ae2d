// csp.hpp — explicit constraint systems with brute-force value computation
// and promise-gap instance generators.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncv/errors.hpp"
#include "ncv/rng.hpp"

namespace ncv {

// One constraint: an ordered tuple of q variable indices plus the set of
// allowed value tuples in Sigma^q. An empty allowed set is an individually
// unsatisfiable constraint.
struct Constraint {
  std::vector<std::uint32_t> vars;
  std::vector<std::vector<std::uint32_t>> allowed;
};

// Explicit (N, R, q, Sigma)-CSP system. Constraints form a multiset:
// duplicates are permitted and order is preserved.
struct CSPSystem {
  std::uint32_t n_vars = 0;      // N
  std::uint32_t arity = 0;       // q
  std::uint32_t alphabet = 0;    // |Sigma|
  std::vector<Constraint> constraints;

  std::uint32_t r() const { return static_cast<std::uint32_t>(constraints.size()); }
  std::uint64_t kappa() const;  // |Sigma|^q, the value-register dimension

  // encoded value-register index of a tuple (big-endian base-|Sigma|)
  std::uint64_t encode_tuple(const std::vector<std::uint32_t>& tuple) const;
  std::vector<std::uint32_t> decode_tuple(std::uint64_t index) const;

  // membership of the encoded tuple in constraint j's allowed set
  bool allows(std::uint32_t j, std::uint64_t value_index) const;

  void validate() const;
};

using Assignment = std::vector<std::uint32_t>;  // total map [N] -> Sigma

enum class GapLabel { yes, no, unknown };

std::string gap_label_name(GapLabel label);
GapLabel gap_label_from_name(const std::string& name);

struct GapInstance {
  CSPSystem system;
  double delta = 0.0;
  GapLabel label = GapLabel::unknown;
};

// exact maximum satisfied fraction over all |Sigma|^N assignments;
// TooLarge above 10^6 assignments
double csp_value(const CSPSystem& c);

// fraction of constraints whose allowed set is nonempty
double local_value(const CSPSystem& c);

bool is_satisfied(const CSPSystem& c, std::uint32_t j, const std::vector<std::uint32_t>& tuple);

// brute-force search for a fully satisfying assignment (same TooLarge cap)
std::optional<Assignment> find_satisfying_assignment(const CSPSystem& c);

// per-constraint encoded value tuple induced by an assignment
std::vector<std::uint32_t> induced_sigma(const CSPSystem& c, const Assignment& a);

// Plants a uniformly random satisfying assignment; every constraint allows
// its planted restriction, so csp_value = 1.
GapInstance gen_yes_instance(std::uint32_t n_vars, std::uint32_t r, std::uint32_t q, std::uint64_t seed,
                             std::uint32_t alphabet = 2);

// Empties at least ceil((1-delta) R) allowed sets, so local_value <= delta.
GapInstance gen_no_instance(std::uint32_t n_vars, std::uint32_t r, std::uint32_t q, double delta, std::uint64_t seed,
                            std::uint32_t alphabet = 2);

}  // namespace ncv
