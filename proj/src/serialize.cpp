#include "ncv/serialize.hpp"

#include <cmath>

namespace ncv {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::parse_error, e.what());
  }
}

json state_to_json(const StateVector& s) {
  json amps = json::array();
  for (const cplx& a : s.amps) amps.push_back(json::array({a.real(), a.imag()}));
  return json{{"dim", s.dim()}, {"amps", std::move(amps)}};
}

StateVector state_from_json(const json& j) {
  const auto dim = get_field<std::size_t>(j, "dim");
  const json& amps = j.contains("amps") ? j.at("amps") : json();
  if (!amps.is_array() || amps.size() != dim) fail(Errc::parse_error, "field \"amps\": expected an array of length dim");
  StateVector s;
  s.amps.reserve(dim);
  for (const json& e : amps) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      fail(Errc::parse_error, "field \"amps\": entries must be [re, im] pairs");
    s.amps.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  const double n2 = norm_squared(s);
  if (std::abs(n2 - 1.0) > 1e-9) fail(Errc::parse_error, "state amplitudes are not unit-norm");
  // repair sub-1e-9 norm drift; bit-exact inputs pass through untouched so
  // dump/parse round trips are byte-stable
  if (std::abs(n2 - 1.0) > kNormTol) return normalize(s.amps);
  return s;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim; ++j) row.push_back(json::array({m.at(i, j).real(), m.at(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.dim}, {"entries", std::move(rows)}};
}

json detector_to_json(const DetectorSpec& spec) {
  return json{{"kind", detector_kind_name(spec.kind)}, {"k", spec.k}, {"epsilon", spec.epsilon}, {"delta", spec.delta}};
}

DetectorSpec detector_from_json(const json& j) {
  DetectorSpec spec;
  spec.kind = detector_kind_from_name(get_field<std::string>(j, "kind"));
  spec.k = get_field<unsigned>(j, "k");
  spec.epsilon = get_field<double>(j, "epsilon");
  spec.delta = get_field<double>(j, "delta");
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) fail(Errc::parse_error, "field \"epsilon\": out of range");
  if (!(spec.delta > 0.0 && spec.delta <= 1.0)) fail(Errc::parse_error, "field \"delta\": out of range");
  return spec;
}

json instance_to_json(const GapInstance& inst) {
  json constraints = json::array();
  for (const Constraint& c : inst.system.constraints) {
    json allowed = json::array();
    for (const auto& tuple : c.allowed) allowed.push_back(tuple);
    constraints.push_back(json{{"vars", c.vars}, {"allowed", std::move(allowed)}});
  }
  return json{{"N", inst.system.n_vars}, {"R", inst.system.r()},       {"q", inst.system.arity},
              {"sigma", inst.system.alphabet}, {"constraints", std::move(constraints)},
              {"delta", inst.delta},      {"label", gap_label_name(inst.label)}};
}

GapInstance instance_from_json(const json& j) {
  GapInstance inst;
  inst.system.n_vars = get_field<std::uint32_t>(j, "N");
  const auto r = get_field<std::uint32_t>(j, "R");
  inst.system.arity = get_field<std::uint32_t>(j, "q");
  inst.system.alphabet = get_field<std::uint32_t>(j, "sigma");
  inst.delta = get_field<double>(j, "delta");
  inst.label = gap_label_from_name(get_field<std::string>(j, "label"));
  if (!j.contains("constraints") || !j.at("constraints").is_array())
    fail(Errc::parse_error, "missing field \"constraints\"");
  for (const json& cj : j.at("constraints")) {
    Constraint c;
    c.vars = get_field<std::vector<std::uint32_t>>(cj, "vars");
    c.allowed = get_field<std::vector<std::vector<std::uint32_t>>>(cj, "allowed");
    inst.system.constraints.push_back(std::move(c));
  }
  if (inst.system.r() != r) fail(Errc::parse_error, "field \"R\" disagrees with the constraint list length");
  inst.system.validate();
  return inst;
}

json params_to_json(const ProtocolParams& p) {
  return json{{"kappa", p.kappa}, {"epsilon", p.epsilon}, {"nu_low", p.nu_low}, {"nu_high", p.nu_high},
              {"c_yes", p.c_yes}, {"xi", p.xi},           {"delta", p.delta},   {"p1", p.p1},
              {"p2", p.p2},       {"p3", p.p3},           {"z", p.z},           {"p_yes", p.p_yes},
              {"gap", p.gap}};
}

ProtocolParams params_from_json(const json& j) {
  ProtocolParams p;
  p.kappa = get_field<std::uint32_t>(j, "kappa");
  p.epsilon = get_field<double>(j, "epsilon");
  p.nu_low = get_field<double>(j, "nu_low");
  p.nu_high = get_field<double>(j, "nu_high");
  p.c_yes = get_field<double>(j, "c_yes");
  p.xi = get_field<double>(j, "xi");
  p.delta = get_field<double>(j, "delta");
  p.p1 = get_field<double>(j, "p1");
  p.p2 = get_field<double>(j, "p2");
  p.p3 = get_field<double>(j, "p3");
  p.z = get_field<double>(j, "z");
  p.p_yes = get_field<double>(j, "p_yes");
  p.gap = get_field<double>(j, "gap");
  validate_params(p);
  return p;
}

json profile_to_json(const AcceptanceProfile& p) {
  return json{{"w_d", p.w_d}, {"w_q", p.w_q}, {"w_c", p.w_c}, {"d", p.d}, {"d_q", p.d_q}};
}

}  // namespace ncv
