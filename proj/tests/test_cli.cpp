#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lgorb/cli.hpp"
#include "lgorb/problem.hpp"

#ifndef LGORB_MODELS_DIR
#error "LGORB_MODELS_DIR must point at the sample corpus"
#endif

using namespace lgorb;

namespace {
struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string model(const char* name) { return std::string(LGORB_MODELS_DIR) + "/" + name; }
}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("validate the calibration file") {
    const Result r = call({"validate", model("mu2_x2.json")});
    CHECK(r.code == kExitOk);
    CHECK(r.err.empty());
  }

  TEST_CASE("hrr on the calibration file") {
    const Result r = call({"hrr", model("mu2_x2.json"), "--p", "P", "--q", "P", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["chi_hrr"] == "1");
    CHECK(j["chi_ext"] == 1);
    CHECK(j["verdict"] == "equal");
    const Result t = call({"hrr", model("mu2_x2.json"), "--p", "P", "--q", "Q", "--format", "json"});
    CHECK(nlohmann::json::parse(t.out)["chi_hrr"] == "-1");
  }

  TEST_CASE("chi needs a grading") {
    const Result r = call({"chi", model("mu2_x2_ungraded.json"), "--p", "P", "--q", "P"});
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("grading-required") != std::string::npos);
  }

  TEST_CASE("input errors") {
    CHECK(call({}).code == kExitInputError);
    CHECK(call({"hrr", model("mu2_x2.json"), "--p", "P"}).code == kExitInputError);
    CHECK(call({"hrr", model("mu2_x2.json"), "--p", "P", "--q", "nope"}).code == kExitInputError);
    CHECK(call({"validate", model("missing.json")}).code == kExitInputError);
    CHECK(call({"validate", model("mu2_x2.json"), "--format", "xml"}).code == kExitInputError);
  }

  TEST_CASE("diagnostics are located") {
    const auto doc = nlohmann::json::parse(R"({"variables": [{"name": "x"}], "potential": "x^2",
      "group": [["1/2"]], "mfs": {"P": {"koszul": [["x", "x^"]]}}})");
    try {
      load_problem(doc);
      FAIL("bad polynomial accepted");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("mfs.P.koszul[0][1]") != std::string::npos);
    }
    const auto cyc = nlohmann::json::parse(R"({"variables": [{"name": "x"}], "potential": "x^2",
      "mfs": {"A": {"dual": "B"}, "B": {"dual": "A"}}})");
    CHECK_THROWS_AS(load_problem(cyc), Error);
    const auto extra = nlohmann::json::parse(R"({"variables": [{"name": "x"}], "potential": "x^2", "colour": 1})");
    CHECK_THROWS_AS(load_problem(extra), Error);
  }

  TEST_CASE("every spec form loads") {
    const auto doc = nlohmann::json::parse(R"({"variables": [{"name": "x", "weight": "1"}], "potential": "x^2",
      "group": [["1/2"]], "options": {"graded": true, "degree_window_slack": "2"},
      "mfs": {"P": {"koszul": [["x", "x"]], "twist": ["1/2"]},
              "M": {"matrices": {"A": [["x"]], "B": [["x"]]}, "rho": [{"even": [["1"]], "odd": [["-1"]]}],
                    "weights_even": ["0"], "weights_odd": ["-1"]},
              "D": {"dual": "M"}, "T": {"twist_of": "M", "twist": ["1/2"]},
              "S": {"sum": ["M", "T"]}, "X": {"tensor": ["M"]}}})");
    const Problem pb = load_problem(doc);
    CHECK(pb.mfs.size() == 6);
    CHECK(pb.mf("S").rank() == 2);
    CHECK(pb.ext.degree_window_slack == 2);
  }

  TEST_CASE("text and json reports for each command") {
    const std::string f = model("mu3_x3.json");
    const std::vector<std::vector<std::string>> cmds{{"validate", f},
                                                      {"chern", f, "--mf", "K1"},
                                                      {"chi", f, "--p", "K1", "--q", "K2_t1"},
                                                      {"hrr", f, "--p", "K1", "--q", "K2_t1"},
                                                      {"cardy", f, "--p", "K1", "--q", "K1_t2"},
                                                      {"diagonal", f}};
    for (auto c : cmds) {
      const Result text = call(c);
      CHECK(text.code == kExitOk);
      CHECK(!text.out.empty());
      c.push_back("--format");
      c.push_back("json");
      const Result js = call(c);
      CHECK(js.code == kExitOk);
      CHECK(nlohmann::json::parse(js.out)["command"] == c[0]);
    }
  }
}
