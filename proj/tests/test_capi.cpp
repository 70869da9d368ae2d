// exercises the extern-C surface: handles, error codes, JSON payloads
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "ncv/ncv.h"

using nlohmann::json;

namespace {

struct Owned {
  char* ptr = nullptr;
  ~Owned() { ncv_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

}  // namespace

TEST_CASE("state handles") {
  ncv_state* s = nullptr;
  REQUIRE(ncv_state_uniform(8, &s) == NCV_OK);
  size_t dim = 0;
  CHECK(ncv_state_dim(s, &dim) == NCV_OK);
  CHECK(dim == 8);

  Owned dumped;
  REQUIRE(ncv_state_dump(s, &dumped.ptr) == NCV_OK);
  ncv_state_free(s);

  ncv_state* back = nullptr;
  REQUIRE(ncv_state_parse(dumped.ptr, &back) == NCV_OK);
  Owned again;
  REQUIRE(ncv_state_dump(back, &again.ptr) == NCV_OK);
  CHECK(dumped.str() == again.str());
  ncv_state_free(back);
}

TEST_CASE("parse errors carry diagnostics") {
  ncv_state* s = nullptr;
  CHECK(ncv_state_parse("{ nope", &s) == NCV_ERR_PARSE);
  CHECK(std::strlen(ncv_last_error()) > 0);
  CHECK(ncv_state_parse(R"({"dim": 2, "amps": [[1, 0]]})", &s) == NCV_ERR_PARSE);
  CHECK(ncv_state_parse(nullptr, &s) == NCV_ERR_BAD_ARGUMENT);

  // a non-normalized state is rejected
  CHECK(ncv_state_parse(R"({"dim": 2, "amps": [[1, 0], [1, 0]]})", &s) == NCV_ERR_PARSE);
}

TEST_CASE("instance handles and value queries") {
  ncv_instance* yes = nullptr;
  REQUIRE(ncv_instance_generate("yes", 4, 6, 2, 0.0, 7, &yes) == NCV_OK);
  double value = 0.0;
  CHECK(ncv_instance_csp_value(yes, &value) == NCV_OK);
  CHECK(value == doctest::Approx(1.0));

  Owned dumped;
  REQUIRE(ncv_instance_dump(yes, &dumped.ptr) == NCV_OK);
  ncv_instance* back = nullptr;
  REQUIRE(ncv_instance_parse(dumped.ptr, &back) == NCV_OK);
  Owned again;
  REQUIRE(ncv_instance_dump(back, &again.ptr) == NCV_OK);
  CHECK(dumped.str() == again.str());
  ncv_instance_free(yes);
  ncv_instance_free(back);

  ncv_instance* no = nullptr;
  REQUIRE(ncv_instance_generate("no", 4, 6, 2, 1.0 / 3.0, 7, &no) == NCV_OK);
  CHECK(ncv_instance_local_value(no, &value) == NCV_OK);
  CHECK(value <= 1.0 / 3.0 + 1e-15);
  ncv_instance_free(no);

  CHECK(ncv_instance_generate("maybe", 4, 6, 2, 0.0, 7, &no) == NCV_ERR_PARSE);
}

TEST_CASE("params presets") {
  ncv_params* p = nullptr;
  REQUIRE(ncv_params_preset("diagnostic", "noncollapsing", &p) == NCV_OK);
  Owned dumped;
  REQUIRE(ncv_params_dump(p, &dumped.ptr) == NCV_OK);
  const json doc = json::parse(dumped.str());
  CHECK(doc.at("epsilon").get<double>() == doctest::Approx(0.0025));
  CHECK(doc.at("p1").get<double>() + doc.at("p2").get<double>() + doc.at("p3").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
  ncv_params_free(p);

  ncv_params* proof = nullptr;
  REQUIRE(ncv_params_choose(4, 0.5, 0.75, "noncollapsing", &proof) == NCV_OK);
  Owned proof_dump;
  REQUIRE(ncv_params_dump(proof, &proof_dump.ptr) == NCV_OK);
  CHECK(json::parse(proof_dump.str()).at("gap").get<double>() > 0.0);
  ncv_params_free(proof);

  CHECK(ncv_params_preset("bogus", "noncollapsing", &p) == NCV_ERR_PARSE);
}

TEST_CASE("run_verify on a generated yes instance") {
  const json config{{"generate", json{{"label", "yes"}, {"N", 4}, {"R", 6}, {"q", 2}, {"delta", 0.0}, {"seed", 5}}},
                    {"preset", "diagnostic"},
                    {"detector", "noncollapsing"},
                    {"samples", 20000},
                    {"seed", 5}};
  Owned report, cases;
  REQUIRE(ncv_run_verify(config.dump().c_str(), &report.ptr, &cases.ptr) == NCV_OK);
  const json doc = json::parse(report.str());
  CHECK(cases.str().rfind("case,w_d,w_q,w_c,p_no,bound,holds\n", 0) == 0);
  CHECK(doc.at("witness_source") == "planted");
  CHECK(std::abs(doc.at("analytic").get<double>() - doc.at("params").at("p_yes").get<double>()) <= 1e-12);
  CHECK_FALSE(doc.at("divergent").get<bool>());

  // determinism: identical config, identical bytes
  Owned report2;
  REQUIRE(ncv_run_verify(config.dump().c_str(), &report2.ptr, nullptr) == NCV_OK);
  CHECK(report.str() == report2.str());
}

TEST_CASE("run_region emits a grid-sized CSV") {
  const json config{{"kappa", 4}, {"epsilon", 0.01}, {"delta", 0.0198},
                    {"grid", 16}, {"scatter", 100},  {"seed", 3}};
  Owned csv, svg, report;
  REQUIRE(ncv_run_region(config.dump().c_str(), &csv.ptr, &svg.ptr, &report.ptr) == NCV_OK);
  const std::string text = csv.str();
  std::size_t lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == 17);  // header + grid rows
  CHECK(text.rfind("w_d,w_q_max\n", 0) == 0);
  CHECK(svg.str().find("<svg") != std::string::npos);
  CHECK(json::parse(report.str()).at("violations").get<std::size_t>() == 0);
}

TEST_CASE("run_distinguish and run_constants") {
  Owned report;
  REQUIRE(ncv_run_distinguish(R"({"k": 1, "n": 10000, "seed": 2})", &report.ptr) == NCV_OK);
  const json doc = json::parse(report.str());
  CHECK(doc.at("acc_computational").get<double>() == 1.0);
  CHECK(doc.at("density_gap").get<double>() <= 1e-12);

  Owned constants;
  REQUIRE(ncv_run_constants(R"({"preset": "proof", "kappa": 4, "xi": 0.5, "c_yes": 0.75})", &constants.ptr) ==
          NCV_OK);
  const json cdoc = json::parse(constants.str());
  CHECK(cdoc.at("inequalities").at("transfer").get<bool>());
  CHECK_FALSE(cdoc.at("warnings").empty());  // sub-precision gap warning at kappa = 4
}

TEST_CASE("run_optimize persists a replayable witness") {
  const json config{{"generate", json{{"label", "no"}, {"N", 4}, {"R", 2}, {"q", 2}, {"delta", 0.4}, {"seed", 9}}},
                    {"preset", "diagnostic"},
                    {"detector", "noncollapsing"},
                    {"restarts", 3},
                    {"seed", 9}};
  Owned report, witness;
  REQUIRE(ncv_run_optimize(config.dump().c_str(), &report.ptr, &witness.ptr) == NCV_OK);
  const json rdoc = json::parse(report.str());
  const double best = rdoc.at("best_value").get<double>();
  CHECK(best <= rdoc.at("p_yes").get<double>() + 1e-12);

  // replay through verify with the persisted witness
  json vconfig{{"generate", json{{"label", "no"}, {"N", 4}, {"R", 2}, {"q", 2}, {"delta", 0.4}, {"seed", 9}}},
               {"preset", "diagnostic"},
               {"detector", "noncollapsing"},
               {"samples", 5000},
               {"seed", 11},
               {"witness", json::parse(witness.str())}};
  Owned vreport;
  REQUIRE(ncv_run_verify(vconfig.dump().c_str(), &vreport.ptr, nullptr) == NCV_OK);
  const json vdoc = json::parse(vreport.str());
  CHECK(vdoc.at("witness_source") == "file");
  CHECK(vdoc.at("analytic").get<double>() == doctest::Approx(best).epsilon(1e-10));
}
