#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cstnu/cli.hpp"
#include "cstnu/json_io.hpp"

using namespace cstnu;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "cstnu_cli_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

const char* kBranching = R"({
  "letters": ["A"],
  "timepoints": [{"id": "Z"}, {"id": "P"}, {"id": "X", "label": "A"}],
  "observations": {"A": "P"},
  "constraints": [
    {"from": "Z", "to": "P", "delta": 2}, {"from": "P", "to": "Z", "delta": -1},
    {"from": "X", "to": "P", "delta": "-1/1000", "label": "A"},
    {"from": "Z", "to": "X", "delta": 9, "label": "A"}
  ]
})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate reports the offending constraint") {
  const auto ok = write("ok.json", kBranching);
  CHECK(run({"validate", ok}).code == 0);
  Json bad = Json::parse(kBranching);
  bad["constraints"].push_back({{"from", "Z"}, {"to", "X"}, {"delta", 3}});
  const auto r = run({"validate", write("wd1.json", bad.dump()), "--json"});
  CHECK(r.code == 1);
  const Json j = Json::parse(r.out);
  CHECK(j["violations"][0]["condition"] == "WD1");
  CHECK(j["violations"][0]["message"].get<std::string>().find("X - Z <= 3") != std::string::npos);
}

TEST_CASE("project emits an STN") {
  const auto r = run({"project", write("p.json", kBranching), "--scenario", "A=1"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["timepoints"].size() == 3);
}

TEST_CASE("solve and propagate") {
  const auto file = write("s.json", kBranching);
  CHECK(run({"solve", file}).code == 2);
  Json stn = Json::parse(R"({"timepoints": [{"id": "A"}, {"id": "B"}],
    "constraints": [{"from": "A", "to": "B", "delta": 3}, {"from": "B", "to": "A", "delta": -1}]})");
  const auto r = run({"solve", write("stn.json", stn.dump()), "--json"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["consistent"] == true);
  const auto trace = (fs::temp_directory_path() / "cstnu_cli_tests" / "trace.json").string();
  CHECK(run({"propagate", file, "--trace", trace}).code == 0);
  CHECK(fs::exists(trace));
}

TEST_CASE("check-dc and verify-strategy round trip") {
  const auto file = write("dc.json", kBranching);
  const auto strategy = (fs::temp_directory_path() / "cstnu_cli_tests" / "strategy.json").string();
  const auto r = run({"check-dc", file, "--json", "--strategy-out", strategy});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["verdict"] == "controllable");
  CHECK(run({"verify-strategy", strategy, file}).code == 0);
  CHECK(run({"check-dc", file, "--json", "--seed", "3"}).out == run({"check-dc", file, "--json", "--seed", "3"}).out);
}

TEST_CASE("compile-workflow writes network and map") {
  const auto wf = write("w.wf", "task T [2,4]\n");
  const auto out = (fs::temp_directory_path() / "cstnu_cli_tests" / "w.json").string();
  const auto map = (fs::temp_directory_path() / "cstnu_cli_tests" / "w.map.json").string();
  CHECK(run({"compile-workflow", wf, "-o", out, "--map", map}).code == 0);
  CHECK(run({"validate", out}).code == 0);
  CHECK(Json::parse(std::ifstream(map)).contains("T"));
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"validate", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"validate", write("garbage.json", "{not json")}).code == 2);
  CHECK(run({"project", write("q.json", kBranching), "--scenario", "B=1"}).code == 2);
  CHECK(run({"--version"}).code == 0);
}

}
