// capi.cpp — extern-C surface over the core library. Handles are heap-owned
// core objects; all failures funnel through a thread-local message and a
// status code.
#include "ncv/ncv.h"

#include <cstring>
#include <new>
#include <string>

#include "ncv/experiments.hpp"

using ncv::json;

struct ncv_state {
  ncv::StateVector value;
};
struct ncv_instance {
  ncv::GapInstance value;
};
struct ncv_params {
  ncv::ProtocolParams value;
};

namespace {

thread_local std::string g_last_error;

ncv_status status_of(ncv::Errc code) {
  switch (code) {
    case ncv::Errc::parse_error: return NCV_ERR_PARSE;
    case ncv::Errc::io_error: return NCV_ERR_IO;
    case ncv::Errc::infeasible: return NCV_ERR_INFEASIBLE;
    case ncv::Errc::too_large: return NCV_ERR_TOO_LARGE;
    case ncv::Errc::dim_mismatch: return NCV_ERR_DIM_MISMATCH;
    case ncv::Errc::bad_argument:
    case ncv::Errc::bad_index:
    case ncv::Errc::bad_assignment:
    case ncv::Errc::invalid_threshold:
    case ncv::Errc::invalid_weights:
    case ncv::Errc::invalid_effect: return NCV_ERR_BAD_ARGUMENT;
    default: return NCV_ERROR;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
ncv_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return NCV_OK;
  } catch (const ncv::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NCV_ERROR;
  }
}

ncv_status require(bool ok, const char* message) {
  if (ok) return NCV_OK;
  g_last_error = message;
  return NCV_ERR_BAD_ARGUMENT;
}

ncv::DetectorKind kind_of(const json& config) {
  return ncv::detector_kind_from_name(config.value("detector", "noncollapsing"));
}

ncv::GapInstance instance_of(const json& config) {
  if (config.contains("instance")) return ncv::instance_from_json(config.at("instance"));
  if (config.contains("generate")) {
    const json& g = config.at("generate");
    const auto label = ncv::get_field<std::string>(g, "label");
    const auto n = ncv::get_field<std::uint32_t>(g, "N");
    const auto r = ncv::get_field<std::uint32_t>(g, "R");
    const auto q = ncv::get_field<std::uint32_t>(g, "q");
    const auto seed = ncv::get_field<std::uint64_t>(g, "seed");
    if (label == "yes") return ncv::gen_yes_instance(n, r, q, seed);
    if (label == "no") return ncv::gen_no_instance(n, r, q, ncv::get_field<double>(g, "delta"), seed);
    ncv::fail(ncv::Errc::parse_error, "generate.label must be \"yes\" or \"no\"");
  }
  ncv::fail(ncv::Errc::parse_error, "config needs an \"instance\" or \"generate\" section");
}

}  // namespace

extern "C" {

const char* ncv_last_error(void) { return g_last_error.c_str(); }

void ncv_string_free(char* s) { delete[] s; }

ncv_status ncv_state_parse(const char* text, ncv_state** out) {
  if (const ncv_status s = require(text && out, "null argument"); s != NCV_OK) return s;
  return guarded([&] { *out = new ncv_state{ncv::state_from_json(ncv::parse_document(text))}; });
}

ncv_status ncv_state_dump(const ncv_state* s, char** json_out) {
  if (const ncv_status st = require(s && json_out, "null argument"); st != NCV_OK) return st;
  return guarded([&] { *json_out = dup_string(ncv::state_to_json(s->value).dump(2)); });
}

ncv_status ncv_state_uniform(size_t dim, ncv_state** out) {
  if (const ncv_status s = require(out != nullptr, "null argument"); s != NCV_OK) return s;
  return guarded([&] { *out = new ncv_state{ncv::uniform_state(dim)}; });
}

ncv_status ncv_state_dim(const ncv_state* s, size_t* out) {
  if (const ncv_status st = require(s && out, "null argument"); st != NCV_OK) return st;
  *out = s->value.dim();
  return NCV_OK;
}

void ncv_state_free(ncv_state* s) { delete s; }

ncv_status ncv_instance_parse(const char* text, ncv_instance** out) {
  if (const ncv_status s = require(text && out, "null argument"); s != NCV_OK) return s;
  return guarded([&] { *out = new ncv_instance{ncv::instance_from_json(ncv::parse_document(text))}; });
}

ncv_status ncv_instance_dump(const ncv_instance* inst, char** json_out) {
  if (const ncv_status s = require(inst && json_out, "null argument"); s != NCV_OK) return s;
  return guarded([&] { *json_out = dup_string(ncv::instance_to_json(inst->value).dump(2)); });
}

ncv_status ncv_instance_generate(const char* label, uint32_t n_vars, uint32_t r, uint32_t q, double delta,
                                 uint64_t seed, ncv_instance** out) {
  if (const ncv_status s = require(label && out, "null argument"); s != NCV_OK) return s;
  return guarded([&] {
    const std::string name = label;
    if (name == "yes") {
      *out = new ncv_instance{ncv::gen_yes_instance(n_vars, r, q, seed)};
    } else if (name == "no") {
      *out = new ncv_instance{ncv::gen_no_instance(n_vars, r, q, delta, seed)};
    } else {
      ncv::fail(ncv::Errc::parse_error, "label must be \"yes\" or \"no\"");
    }
  });
}

ncv_status ncv_instance_csp_value(const ncv_instance* inst, double* out) {
  if (const ncv_status s = require(inst && out, "null argument"); s != NCV_OK) return s;
  return guarded([&] { *out = ncv::csp_value(inst->value.system); });
}

ncv_status ncv_instance_local_value(const ncv_instance* inst, double* out) {
  if (const ncv_status s = require(inst && out, "null argument"); s != NCV_OK) return s;
  return guarded([&] { *out = ncv::local_value(inst->value.system); });
}

void ncv_instance_free(ncv_instance* inst) { delete inst; }

ncv_status ncv_params_preset(const char* preset, const char* detector, ncv_params** out) {
  if (const ncv_status s = require(preset && detector && out, "null argument"); s != NCV_OK) return s;
  return guarded([&] {
    const auto setup = ncv::resolve_setup(preset, ncv::detector_kind_from_name(detector), 4);
    *out = new ncv_params{setup.params};
  });
}

ncv_status ncv_params_choose(uint32_t kappa, double xi, double c_yes, const char* detector, ncv_params** out) {
  if (const ncv_status s = require(detector && out, "null argument"); s != NCV_OK) return s;
  return guarded([&] {
    *out = new ncv_params{ncv::proof_params(kappa, xi, c_yes, ncv::detector_kind_from_name(detector))};
  });
}

ncv_status ncv_params_dump(const ncv_params* p, char** json_out) {
  if (const ncv_status s = require(p && json_out, "null argument"); s != NCV_OK) return s;
  return guarded([&] { *json_out = dup_string(ncv::params_to_json(p->value).dump(2)); });
}

void ncv_params_free(ncv_params* p) { delete p; }

ncv_status ncv_run_verify(const char* config_json, char** report_json, char** cases_csv) {
  if (const ncv_status s = require(config_json && report_json, "null argument"); s != NCV_OK) return s;
  return guarded([&] {
    const json config = ncv::parse_document(config_json);
    ncv::VerifyOptions opts;
    opts.instance = instance_of(config);
    if (config.contains("witness") && !config.at("witness").is_null()) {
      const ncv::StateVector s = ncv::state_from_json(config.at("witness"));
      opts.witness = ncv::BipartiteWitness::from_state(s, opts.instance.system.r(),
                                                       static_cast<std::size_t>(opts.instance.system.kappa()));
    }
    opts.preset = config.value("preset", "diagnostic");
    opts.kind = kind_of(config);
    opts.samples = config.value("samples", static_cast<std::size_t>(100000));
    opts.seed = config.value("seed", static_cast<std::uint64_t>(1));
    if (opts.samples == 0) ncv::fail(ncv::Errc::bad_argument, "samples must be at least 1");
    ncv::VerifyResult result = ncv::run_verify(opts);
    *report_json = dup_string(result.report.dump(2));
    if (cases_csv) *cases_csv = dup_string(result.cases_csv);
  });
}

ncv_status ncv_run_region(const char* config_json, char** csv_out, char** svg_out, char** report_json) {
  if (const ncv_status s = require(config_json && csv_out && svg_out && report_json, "null argument"); s != NCV_OK)
    return s;
  return guarded([&] {
    const json config = ncv::parse_document(config_json);
    ncv::RegionOptions opts;
    opts.kappa = config.value("kappa", 4u);
    opts.epsilon = config.value("epsilon", 0.0);
    opts.delta = config.value("delta", 1.0);
    opts.grid = config.value("grid", static_cast<std::size_t>(64));
    opts.scatter = config.value("scatter", static_cast<std::size_t>(1000));
    opts.scatter_r = config.value("scatter_r", 4u);
    opts.seed = config.value("seed", static_cast<std::uint64_t>(1));
    ncv::RegionResult r = ncv::run_region(opts);
    *csv_out = dup_string(r.csv);
    *svg_out = dup_string(r.svg);
    *report_json = dup_string(r.report.dump(2));
  });
}

ncv_status ncv_run_distinguish(const char* config_json, char** report_json) {
  if (const ncv_status s = require(config_json && report_json, "null argument"); s != NCV_OK) return s;
  return guarded([&] {
    const json config = ncv::parse_document(config_json);
    const auto k = config.value("k", 1u);
    const auto n = config.value("n", static_cast<std::size_t>(100000));
    const auto seed = config.value("seed", static_cast<std::uint64_t>(1));
    *report_json = dup_string(ncv::run_distinguish(k, n, seed).dump(2));
  });
}

ncv_status ncv_run_constants(const char* config_json, char** report_json) {
  if (const ncv_status s = require(config_json && report_json, "null argument"); s != NCV_OK) return s;
  return guarded([&] {
    const json config = ncv::parse_document(config_json);
    ncv::ConstantsOptions opts;
    opts.preset = config.value("preset", "proof");
    opts.kappa = config.value("kappa", 4u);
    opts.xi = config.value("xi", 0.5);
    opts.c_yes = config.value("c_yes", 0.75);
    opts.kind = kind_of(config);
    *report_json = dup_string(ncv::run_constants(opts).dump(2));
  });
}

ncv_status ncv_run_optimize(const char* config_json, char** report_json, char** witness_json) {
  if (const ncv_status s = require(config_json && report_json && witness_json, "null argument"); s != NCV_OK) return s;
  return guarded([&] {
    const json config = ncv::parse_document(config_json);
    ncv::OptimizeOptions opts;
    opts.instance = instance_of(config);
    opts.preset = config.value("preset", "diagnostic");
    opts.kind = kind_of(config);
    opts.restarts = config.value("restarts", static_cast<std::size_t>(50));
    opts.seed = config.value("seed", static_cast<std::uint64_t>(1));
    ncv::OptimizeResult r = ncv::run_optimize(opts);
    *report_json = dup_string(r.report.dump(2));
    *witness_json = dup_string(ncv::state_to_json(r.best.to_state()).dump(2));
  });
}

}  // extern "C"
