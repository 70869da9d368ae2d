// experiments.hpp — command-level experiment engines shared by the C API and
// the CLI: verify, region, distinguish, constants, optimize. Every engine is
// a pure function of its options, and all emitted documents are byte-stable
// for a fixed seed.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ncv/serialize.hpp"

namespace ncv {

// protocol constants + detector resolved from a named preset
struct ResolvedSetup {
  ProtocolParams params;
  DetectorSpec det;
  std::string preset;
};

// preset is "diagnostic" (fixed measurable-gap constants, kappa must be 4) or
// "proof" (constants chosen to satisfy all three soundness inequalities)
ResolvedSetup resolve_setup(const std::string& preset, DetectorKind kind, std::uint32_t kappa, double xi = 0.5,
                            double c_yes = 0.75);

struct VerifyOptions {
  GapInstance instance;
  std::optional<BipartiteWitness> witness;  // default: planted for Yes, rigid-search best otherwise
  std::string preset = "diagnostic";
  DetectorKind kind = DetectorKind::non_collapsing;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

struct VerifyResult {
  json report;
  // case-classification table, header "case,w_d,w_q,w_c,p_no,bound,holds";
  // one row per evaluated witness (all rigid witnesses when a search ran)
  std::string cases_csv;
};

VerifyResult run_verify(const VerifyOptions& opts);

struct RegionOptions {
  std::uint32_t kappa = 4;
  double epsilon = 0.0;   // 0 means "derive from the detector margin defaults"
  double delta = 1.0;
  std::size_t grid = 64;
  std::size_t scatter = 1000;
  std::uint32_t scatter_r = 4;
  std::uint64_t seed = 1;
};

struct RegionResult {
  std::string csv;
  std::string svg;
  json report;
};

RegionResult run_region(const RegionOptions& opts);

json run_distinguish(unsigned k, std::size_t n, std::uint64_t seed);

struct ConstantsOptions {
  std::string preset = "proof";
  std::uint32_t kappa = 4;
  double xi = 0.5;
  double c_yes = 0.75;
  DetectorKind kind = DetectorKind::non_collapsing;
};

json run_constants(const ConstantsOptions& opts);

struct OptimizeOptions {
  GapInstance instance;
  std::string preset = "diagnostic";
  DetectorKind kind = DetectorKind::non_collapsing;
  std::size_t restarts = 50;
  std::uint64_t seed = 1;
};

struct OptimizeResult {
  json report;
  BipartiteWitness best;
};

OptimizeResult run_optimize(const OptimizeOptions& opts);

}  // namespace ncv
