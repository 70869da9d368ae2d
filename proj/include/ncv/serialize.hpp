// serialize.hpp — JSON wire formats for states, witnesses, constraint
// systems, detector specs, and protocol parameters.
//
//   state:    {"dim": d, "amps": [[re, im], ...]}
//   matrix:   {"dim": d, "entries": [[[re, im], ...] per row]}
//   detector: {"kind": "noncollapsing"|"nonneg"|"analytic", "k", "epsilon", "delta"}
//   csp:      {"N", "R", "q", "sigma", "constraints": [{"vars": [...],
//              "allowed": [[...], ...]}, ...], "delta", "label"}
//   params:   {"kappa", "epsilon", "nu_low", "nu_high", "c_yes", "xi",
//              "delta", "p1", "p2", "p3", "z", "p_yes", "gap"}
#pragma once

#include <string>

#include <json.hpp>

#include "ncv/analysis.hpp"
#include "ncv/csp.hpp"
#include "ncv/quantum.hpp"
#include "ncv/supdetect.hpp"
#include "ncv/verifier.hpp"

namespace ncv {

using json = nlohmann::json;

json state_to_json(const StateVector& s);
StateVector state_from_json(const json& j);

json matrix_to_json(const Matrix& m);

json detector_to_json(const DetectorSpec& spec);
DetectorSpec detector_from_json(const json& j);

json instance_to_json(const GapInstance& inst);
GapInstance instance_from_json(const json& j);

json params_to_json(const ProtocolParams& p);
ProtocolParams params_from_json(const json& j);

json profile_to_json(const AcceptanceProfile& p);

// parse with ParseError diagnostics (line/field context from the JSON parser)
json parse_document(const std::string& text);

// required-field accessor; missing or mistyped fields raise ParseError naming
// the field
template <typename T>
T get_field(const json& j, const char* name) {
  if (!j.contains(name)) fail(Errc::parse_error, std::string("missing field \"") + name + "\"");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("field \"") + name + "\": " + e.what());
  }
}

}  // namespace ncv
