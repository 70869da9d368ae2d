// errors.hpp — typed error conditions shared across the library and the C API.
#pragma once

#include <stdexcept>
#include <string>

namespace ncv {

enum class Errc {
  zero_vector,
  dim_mismatch,
  invalid_effect,
  invalid_weights,
  invalid_threshold,
  bad_index,
  bad_assignment,
  parse_error,
  too_large,
  infeasible,
  degenerate_constants,
  objective_error,
  hypothesis_not_met,
  io_error,
  bad_argument,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace ncv
