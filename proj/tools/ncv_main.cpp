// ncv — command-line front end. Talks to the core exclusively through the
// extern-C interface in ncv/ncv.h; all file I/O lives here. Reports are
// byte-identical across reruns with the same seed; wall-clock timings go to
// stderr only.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncv/ncv.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitIo = 3;

int exit_code_of(ncv_status status) {
  switch (status) {
    case NCV_OK: return kExitOk;
    case NCV_ERR_PARSE: return kExitParse;
    case NCV_ERR_IO: return kExitIo;
    case NCV_ERR_INFEASIBLE: return 4;
    case NCV_ERR_TOO_LARGE: return 5;
    default: return kExitError;
  }
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { ncv_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

// shared instance/common options across subcommands
struct CommonOpts {
  std::string instance_path;
  std::string gen_label;
  std::uint32_t n = 4, r = 6, q = 2;
  double delta = 1.0 / 3.0;
  std::string preset = "diagnostic";
  std::string detector = "noncollapsing";
  std::uint64_t seed = 1;
  std::string out_dir;
};

void add_instance_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--instance", o.instance_path, "path to a constraint-system JSON file");
  cmd->add_option("--gen", o.gen_label, "generate an instance instead of loading one")
      ->check(CLI::IsMember({"yes", "no"}));
  cmd->add_option("--N", o.n, "variable count for --gen");
  cmd->add_option("--R", o.r, "constraint count for --gen");
  cmd->add_option("--q", o.q, "constraint arity for --gen");
  cmd->add_option("--delta", o.delta, "soundness fraction for --gen no");
}

void add_run_flags(CLI::App* cmd, CommonOpts& o, bool with_preset = true) {
  if (with_preset)
    cmd->add_option("--preset", o.preset, "constants preset")->check(CLI::IsMember({"diagnostic", "proof"}));
  cmd->add_option("--detector", o.detector, "superposition detector kind")
      ->check(CLI::IsMember({"noncollapsing", "nonneg", "analytic"}));
  cmd->add_option("--seed", o.seed, "random seed")->envname("NCV_SEED");
  cmd->add_option("--out", o.out_dir, "output directory");
}

// builds the "instance"/"generate" section; returns an exit code on failure
int fill_instance(const CommonOpts& o, json& config) {
  if (!o.instance_path.empty()) {
    const auto text = read_file(o.instance_path);
    if (!text) {
      std::cerr << "error: cannot read instance file '" << o.instance_path << "'\n";
      return kExitIo;
    }
    json parsed = json::parse(*text, nullptr, false);
    if (parsed.is_discarded()) {
      std::cerr << "error: instance file '" << o.instance_path << "' is not valid JSON\n";
      return kExitParse;
    }
    config["instance"] = std::move(parsed);
    return kExitOk;
  }
  if (o.gen_label.empty()) {
    std::cerr << "error: provide --instance PATH or --gen yes|no\n";
    return kExitParse;
  }
  config["generate"] =
      json{{"label", o.gen_label}, {"N", o.n}, {"R", o.r}, {"q", o.q}, {"delta", o.delta}, {"seed", o.seed}};
  return kExitOk;
}

int ensure_out_dir(const std::string& dir) {
  if (dir.empty()) return kExitOk;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory '" << dir << "': " << ec.message() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int emit(const std::string& out_dir, const std::string& name, const std::string& content, bool echo) {
  if (echo) std::cout << content << "\n";
  if (out_dir.empty()) return kExitOk;
  const std::string path = out_dir + "/" + name;
  if (!write_file(path, content)) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kExitIo;
  }
  std::cerr << "wrote " << path << "\n";
  return kExitOk;
}

int report_failure(const char* what, ncv_status status) {
  std::cerr << "error: " << what << ": " << ncv_last_error() << "\n";
  return exit_code_of(status);
}

class Stopwatch {
 public:
  explicit Stopwatch(const char* label) : label_(label), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    std::fprintf(stderr, "%s: %.1f ms\n", label_,
                 std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count());
  }

 private:
  const char* label_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation and certification toolkit for superposition-detector verification protocols"};
  app.require_subcommand(1);

  CommonOpts verify_opts;
  std::string witness_path;
  std::size_t samples = 100000;
  auto* verify = app.add_subcommand("verify", "run the three-test protocol on an instance and witness");
  add_instance_flags(verify, verify_opts);
  verify->add_option("--witness", witness_path, "path to a witness state JSON file");
  verify->add_option("--samples", samples, "number of sampled protocol runs");
  add_run_flags(verify, verify_opts);

  CommonOpts region_opts;
  std::uint32_t region_kappa = 4;
  double region_epsilon = 0.0, region_delta = 1.0;
  std::size_t region_grid = 64, region_scatter = 1000;
  std::uint32_t region_r = 4;
  auto* region = app.add_subcommand("region", "emit the feasible acceptance region as CSV and SVG");
  region->add_option("--kappa", region_kappa, "value-register dimension");
  region->add_option("--epsilon", region_epsilon, "detector threshold");
  region->add_option("--delta", region_delta, "detector margin for the boundary");
  region->add_option("--grid", region_grid, "boundary grid points");
  region->add_option("--scatter", region_scatter, "random witnesses to overlay");
  region->add_option("--R", region_r, "constraint-register dimension for scatter witnesses");
  add_run_flags(region, region_opts, /*with_preset=*/false);

  CommonOpts dist_opts;
  unsigned dist_k = 1;
  std::size_t dist_n = 100000;
  auto* distinguish = app.add_subcommand("distinguish", "identical-ensemble distinguishing experiment");
  distinguish->add_option("--k", dist_k, "qubit count (1-3)");
  distinguish->add_option("--samples", dist_n, "draws per ensemble");
  add_run_flags(distinguish, dist_opts, /*with_preset=*/false);

  CommonOpts const_opts;
  const_opts.preset = "proof";
  std::uint32_t const_kappa = 4;
  double const_xi = 0.5, const_c_yes = 0.75;
  auto* constants = app.add_subcommand("constants", "resolve protocol constants and the mixture");
  constants->add_option("--kappa", const_kappa, "value-register dimension");
  constants->add_option("--xi", const_xi, "ConstraintCheck promise gap");
  constants->add_option("--c-yes", const_c_yes, "ConstraintCheck completeness");
  add_run_flags(constants, const_opts);

  CommonOpts opt_opts;
  opt_opts.gen_label = "no";
  std::size_t restarts = 50;
  auto* optimize = app.add_subcommand("optimize", "search for adversarial witnesses on an instance");
  add_instance_flags(optimize, opt_opts);
  optimize->add_option("--restarts", restarts, "optimizer restarts");
  add_run_flags(optimize, opt_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (verify->parsed()) {
    Stopwatch timer("verify");
    json config{{"preset", verify_opts.preset}, {"detector", verify_opts.detector},
                {"samples", samples},           {"seed", verify_opts.seed}};
    if (const int rc = fill_instance(verify_opts, config); rc != kExitOk) return rc;
    if (!witness_path.empty()) {
      const auto text = read_file(witness_path);
      if (!text) {
        std::cerr << "error: cannot read witness file '" << witness_path << "'\n";
        return kExitIo;
      }
      json parsed = json::parse(*text, nullptr, false);
      if (parsed.is_discarded()) {
        std::cerr << "error: witness file '" << witness_path << "' is not valid JSON\n";
        return kExitParse;
      }
      config["witness"] = std::move(parsed);
    }
    if (const int rc = ensure_out_dir(verify_opts.out_dir); rc != kExitOk) return rc;
    OwnedString report, cases;
    if (const ncv_status s = ncv_run_verify(config.dump().c_str(), &report.ptr, &cases.ptr); s != NCV_OK)
      return report_failure("verify", s);
    if (const int rc = emit(verify_opts.out_dir, "verify_cases.csv", cases.str(), /*echo=*/false); rc != kExitOk)
      return rc;
    return emit(verify_opts.out_dir, "verify_report.json", report.str(), /*echo=*/true);
  }

  if (region->parsed()) {
    Stopwatch timer("region");
    const json config{{"kappa", region_kappa}, {"epsilon", region_epsilon}, {"delta", region_delta},
                      {"grid", region_grid},   {"scatter", region_scatter}, {"scatter_r", region_r},
                      {"seed", region_opts.seed}};
    if (const int rc = ensure_out_dir(region_opts.out_dir); rc != kExitOk) return rc;
    OwnedString csv, svg, report;
    if (const ncv_status s = ncv_run_region(config.dump().c_str(), &csv.ptr, &svg.ptr, &report.ptr); s != NCV_OK)
      return report_failure("region", s);
    if (const int rc = emit(region_opts.out_dir, "region.csv", csv.str(), /*echo=*/false); rc != kExitOk) return rc;
    if (const int rc = emit(region_opts.out_dir, "region.svg", svg.str(), /*echo=*/false); rc != kExitOk) return rc;
    return emit(region_opts.out_dir, "region_report.json", report.str(), /*echo=*/true);
  }

  if (distinguish->parsed()) {
    Stopwatch timer("distinguish");
    const json config{{"k", dist_k}, {"n", dist_n}, {"seed", dist_opts.seed}};
    if (const int rc = ensure_out_dir(dist_opts.out_dir); rc != kExitOk) return rc;
    OwnedString report;
    if (const ncv_status s = ncv_run_distinguish(config.dump().c_str(), &report.ptr); s != NCV_OK)
      return report_failure("distinguish", s);
    return emit(dist_opts.out_dir, "distinguish.json", report.str(), /*echo=*/true);
  }

  if (constants->parsed()) {
    Stopwatch timer("constants");
    const json config{{"preset", const_opts.preset}, {"kappa", const_kappa},   {"xi", const_xi},
                      {"c_yes", const_c_yes},        {"detector", const_opts.detector}};
    if (const int rc = ensure_out_dir(const_opts.out_dir); rc != kExitOk) return rc;
    OwnedString report;
    if (const ncv_status s = ncv_run_constants(config.dump().c_str(), &report.ptr); s != NCV_OK)
      return report_failure("constants", s);
    const json parsed = json::parse(report.str());
    for (const auto& w : parsed.at("warnings")) std::cerr << "warning: " << w.get<std::string>() << "\n";
    return emit(const_opts.out_dir, "constants.json", report.str(), /*echo=*/true);
  }

  if (optimize->parsed()) {
    Stopwatch timer("optimize");
    json config{{"preset", opt_opts.preset}, {"detector", opt_opts.detector},
                {"restarts", restarts},      {"seed", opt_opts.seed}};
    if (const int rc = fill_instance(opt_opts, config); rc != kExitOk) return rc;
    if (const int rc = ensure_out_dir(opt_opts.out_dir); rc != kExitOk) return rc;
    OwnedString report, witness;
    if (const ncv_status s = ncv_run_optimize(config.dump().c_str(), &report.ptr, &witness.ptr); s != NCV_OK)
      return report_failure("optimize", s);
    if (const int rc = emit(opt_opts.out_dir, "best_witness.json", witness.str(), /*echo=*/false); rc != kExitOk)
      return rc;
    return emit(opt_opts.out_dir, "optimize_report.json", report.str(), /*echo=*/true);
  }

  return kExitError;
}
