#include "ncv/csp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ncv {

namespace {

constexpr std::uint64_t kMaxSearchSpace = 1000000;  // desk-scale enumeration cap

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t out = 1;
  for (std::uint32_t i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

std::uint64_t CSPSystem::kappa() const { return ipow(alphabet, arity); }

std::uint64_t CSPSystem::encode_tuple(const std::vector<std::uint32_t>& tuple) const {
  if (tuple.size() != arity) fail(Errc::bad_argument, "value tuple has wrong arity");
  std::uint64_t index = 0;
  for (std::uint32_t v : tuple) {
    if (v >= alphabet) fail(Errc::bad_argument, "value tuple entry outside the alphabet");
    index = index * alphabet + v;
  }
  return index;
}

std::vector<std::uint32_t> CSPSystem::decode_tuple(std::uint64_t index) const {
  std::vector<std::uint32_t> tuple(arity, 0);
  for (std::uint32_t i = arity; i-- > 0;) {
    tuple[i] = static_cast<std::uint32_t>(index % alphabet);
    index /= alphabet;
  }
  return tuple;
}

bool CSPSystem::allows(std::uint32_t j, std::uint64_t value_index) const {
  if (j >= constraints.size()) fail(Errc::bad_index, "constraint index out of range");
  if (value_index >= kappa()) fail(Errc::bad_index, "value index out of range");
  for (const auto& tuple : constraints[j].allowed)
    if (encode_tuple(tuple) == value_index) return true;
  return false;
}

void CSPSystem::validate() const {
  if (n_vars == 0 || arity == 0 || alphabet < 2) fail(Errc::parse_error, "CSP system needs N >= 1, q >= 1, |Sigma| >= 2");
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    const Constraint& c = constraints[j];
    if (c.vars.size() != arity)
      fail(Errc::parse_error, "constraint " + std::to_string(j) + ": wrong number of variables");
    for (std::uint32_t v : c.vars)
      if (v >= n_vars) fail(Errc::parse_error, "constraint " + std::to_string(j) + ": variable index out of range");
    for (const auto& tuple : c.allowed) {
      if (tuple.size() != arity) fail(Errc::parse_error, "constraint " + std::to_string(j) + ": allowed tuple has wrong arity");
      for (std::uint32_t v : tuple)
        if (v >= alphabet) fail(Errc::parse_error, "constraint " + std::to_string(j) + ": allowed value outside alphabet");
    }
  }
}

bool is_satisfied(const CSPSystem& c, std::uint32_t j, const std::vector<std::uint32_t>& tuple) {
  if (j >= c.constraints.size()) fail(Errc::bad_index, "constraint index out of range");
  return c.allows(j, c.encode_tuple(tuple));
}

namespace {

std::uint32_t satisfied_count(const CSPSystem& c, const Assignment& a) {
  std::uint32_t hits = 0;
  std::vector<std::uint32_t> tuple(c.arity);
  for (std::uint32_t j = 0; j < c.r(); ++j) {
    for (std::uint32_t i = 0; i < c.arity; ++i) tuple[i] = a[c.constraints[j].vars[i]];
    if (c.allows(j, c.encode_tuple(tuple))) ++hits;
  }
  return hits;
}

template <typename Visit>
void for_each_assignment(const CSPSystem& c, Visit&& visit) {
  const std::uint64_t space = ipow(c.alphabet, c.n_vars);
  if (space > kMaxSearchSpace) fail(Errc::too_large, "assignment space exceeds the desk-scale cap");
  Assignment a(c.n_vars, 0);
  for (std::uint64_t code = 0; code < space; ++code) {
    std::uint64_t rest = code;
    for (std::uint32_t v = 0; v < c.n_vars; ++v) {
      a[v] = static_cast<std::uint32_t>(rest % c.alphabet);
      rest /= c.alphabet;
    }
    if (!visit(a)) return;
  }
}

}  // namespace

double csp_value(const CSPSystem& c) {
  if (c.r() == 0) fail(Errc::bad_argument, "csp_value: system has no constraints");
  std::uint32_t best = 0;
  for_each_assignment(c, [&](const Assignment& a) {
    best = std::max(best, satisfied_count(c, a));
    return best < c.r();  // stop early once everything is satisfied
  });
  return static_cast<double>(best) / static_cast<double>(c.r());
}

double local_value(const CSPSystem& c) {
  if (c.r() == 0) fail(Errc::bad_argument, "local_value: system has no constraints");
  std::uint32_t nonempty = 0;
  for (const Constraint& con : c.constraints)
    if (!con.allowed.empty()) ++nonempty;
  return static_cast<double>(nonempty) / static_cast<double>(c.r());
}

std::optional<Assignment> find_satisfying_assignment(const CSPSystem& c) {
  std::optional<Assignment> found;
  for_each_assignment(c, [&](const Assignment& a) {
    if (satisfied_count(c, a) == c.r()) {
      found = a;
      return false;
    }
    return true;
  });
  return found;
}

std::vector<std::uint32_t> induced_sigma(const CSPSystem& c, const Assignment& a) {
  if (a.size() != c.n_vars) fail(Errc::bad_assignment, "assignment does not cover all variables");
  std::vector<std::uint32_t> sigma(c.r());
  std::vector<std::uint32_t> tuple(c.arity);
  for (std::uint32_t j = 0; j < c.r(); ++j) {
    for (std::uint32_t i = 0; i < c.arity; ++i) tuple[i] = a[c.constraints[j].vars[i]];
    sigma[j] = static_cast<std::uint32_t>(c.encode_tuple(tuple));
  }
  return sigma;
}

std::string gap_label_name(GapLabel label) {
  switch (label) {
    case GapLabel::yes: return "yes";
    case GapLabel::no: return "no";
    case GapLabel::unknown: return "unknown";
  }
  fail(Errc::bad_argument, "unknown gap label");
}

GapLabel gap_label_from_name(const std::string& name) {
  if (name == "yes") return GapLabel::yes;
  if (name == "no") return GapLabel::no;
  if (name == "unknown") return GapLabel::unknown;
  fail(Errc::parse_error, "unknown instance label '" + name + "'");
}

namespace {

std::vector<std::uint32_t> pick_distinct_vars(std::uint32_t n_vars, std::uint32_t q, Rng& rng) {
  std::vector<std::uint32_t> pool(n_vars);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::uint32_t i = 0; i < q; ++i) {
    const auto j = i + static_cast<std::uint32_t>(rng.below(n_vars - i));
    std::swap(pool[i], pool[j]);
  }
  return std::vector<std::uint32_t>(pool.begin(), pool.begin() + q);
}

void check_generator_args(std::uint32_t n_vars, std::uint32_t r, std::uint32_t q, std::uint32_t alphabet) {
  if (n_vars == 0 || r == 0 || q == 0 || alphabet < 2) fail(Errc::bad_argument, "generator parameters out of range");
  if (q > n_vars) fail(Errc::bad_argument, "constraint arity exceeds the variable count");
  if (ipow(alphabet, q) > 4096) fail(Errc::too_large, "value-register dimension exceeds the desk-scale cap");
}

}  // namespace

GapInstance gen_yes_instance(std::uint32_t n_vars, std::uint32_t r, std::uint32_t q, std::uint64_t seed,
                             std::uint32_t alphabet) {
  check_generator_args(n_vars, r, q, alphabet);
  Rng rng(seed);
  Assignment planted(n_vars);
  for (auto& v : planted) v = static_cast<std::uint32_t>(rng.below(alphabet));

  CSPSystem sys;
  sys.n_vars = n_vars;
  sys.arity = q;
  sys.alphabet = alphabet;
  const std::uint64_t kappa = sys.kappa();
  for (std::uint32_t j = 0; j < r; ++j) {
    Constraint con;
    con.vars = pick_distinct_vars(n_vars, q, rng);
    std::vector<std::uint32_t> tuple(q);
    for (std::uint32_t i = 0; i < q; ++i) tuple[i] = planted[con.vars[i]];
    const std::uint64_t planted_index = sys.encode_tuple(tuple);
    for (std::uint64_t x = 0; x < kappa; ++x)
      if (x == planted_index || rng.uniform01() < 0.5) con.allowed.push_back(sys.decode_tuple(x));
    sys.constraints.push_back(std::move(con));
  }
  return GapInstance{std::move(sys), 0.0, GapLabel::yes};
}

GapInstance gen_no_instance(std::uint32_t n_vars, std::uint32_t r, std::uint32_t q, double delta, std::uint64_t seed,
                            std::uint32_t alphabet) {
  check_generator_args(n_vars, r, q, alphabet);
  if (!(delta > 0.0) || delta >= 1.0) fail(Errc::bad_argument, "delta must lie in (0, 1)");
  Rng rng(seed);

  const auto empties = static_cast<std::uint32_t>(
      std::ceil((1.0 - delta) * static_cast<double>(r) - 1e-9));
  std::vector<char> is_empty(r, 0);
  std::vector<std::uint32_t> order(r);
  std::iota(order.begin(), order.end(), 0u);
  for (std::uint32_t i = 0; i < empties; ++i) {
    const auto j = i + static_cast<std::uint32_t>(rng.below(r - i));
    std::swap(order[i], order[j]);
    is_empty[order[i]] = 1;
  }

  CSPSystem sys;
  sys.n_vars = n_vars;
  sys.arity = q;
  sys.alphabet = alphabet;
  const std::uint64_t kappa = sys.kappa();
  for (std::uint32_t j = 0; j < r; ++j) {
    Constraint con;
    con.vars = pick_distinct_vars(n_vars, q, rng);
    if (!is_empty[j]) {
      // any nonempty subset; forced to contain at least one tuple
      const std::uint64_t forced = rng.below(kappa);
      for (std::uint64_t x = 0; x < kappa; ++x)
        if (x == forced || rng.uniform01() < 0.5) con.allowed.push_back(sys.decode_tuple(x));
    }
    sys.constraints.push_back(std::move(con));
  }
  return GapInstance{std::move(sys), delta, GapLabel::no};
}

}  // namespace ncv
