#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#ifndef DIFFEOLIN_CLI
#error "DIFFEOLIN_CLI must point at the command-line tool"
#endif

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + DIFFEOLIN_CLI + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

}  // namespace

TEST_CASE("dual of a coarse space") {
  const Run r = run("dual coarse_R3");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "dim V* = 0"));
}

TEST_CASE("membership with a polynomial multiplier") {
  const Run r = run("check-plot kink_R2_e1 \"x*abs(x), 0\"");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "plot: Plot"));
}

TEST_CASE("json output shape") {
  const Run r = run("--json check-map coarse_to_line");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"command", "inputs", "result", "verdicts"}) CHECK(j.contains(key));
  CHECK(j["command"] == "check-map");
  CHECK(j["result"]["verdict"] == "NotSmooth");
  CHECK(j["result"].contains("witness"));
}

TEST_CASE("oracle trial records") {
  const Run r = run("--json oracle \"abs(x)*x\"");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["classification"] == "NonSmoothAt0(3)");
  REQUIRE(!j["result"]["trials"].empty());
  for (const char* key : {"expression", "order", "scale", "value", "verdict"})
    CHECK(j["result"]["trials"][0].contains(key));
}

TEST_CASE("subcommands with successful checks") {
  CHECK(run("hom coarse_R2 fine_R1").status == 0);
  CHECK(contains(run("hom coarse_R2 fine_R1").out, "dim L^inf(V, W) = 0"));
  CHECK(run("bilinear kink_R3_e1 fine_R1").status == 0);
  CHECK(run("tensor kink_R2_e1 kink_R2_e1 --dual-iso").status == 0);
  CHECK(run("hat-dual kink_R2_e1 --iso \"0,1;1,0\"").status == 0);
  CHECK(run("hat-dual kink_R2_e1 --iso \"1,0;0,1\" --iso2 \"1,1;0,1\" --sample \"abs(x), 0\"").status == 0);
  CHECK(run("cross-validate kink_R2_e1 --functional \"0,1\" --trials 10").status == 0);
}

TEST_CASE("failed verification exits 1") {
  const Run r = run("hat-dual kink_R2_e1 --iso \"0,1;1,0\" --iso2 \"1,0;0,1\"");
  CHECK(r.status == 1);
  CHECK(contains(r.out, "FAIL"));
}

TEST_CASE("input errors exit 2") {
  CHECK(run("dual no_such_space").status == 2);
  CHECK(run("check-plot kink_R2_e1 \"x^1.5, 0\"").status == 2);
  CHECK(run("check-plot kink_R2_e1 \"x\"").status == 2);
  CHECK(run("hom kink_R2_e1 kink_R2_e1").status == 2);
  CHECK(run("hat-dual fine_R2 --iso \"1,1;1,1\"").status == 2);
  CHECK(run("oracle \"x^65\"").status == 2);
  CHECK(run("--file /nonexistent.json dual a").status == 2);
  CHECK(run("dual fine_R1", "DIFFEOLIN_SLACK_DEGREE=abc").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
}

TEST_CASE("slack override is accepted") {
  CHECK(run("check-plot kink_R2_e1 \"x*abs(x), 0\"", "DIFFEOLIN_SLACK_DEGREE=2").status == 0);
}

TEST_CASE("unknown verdicts are marked and exit 0") {
  const auto path = std::filesystem::temp_directory_path() / "diffeolin_cli_unknown.json";
  std::ofstream(path) << R"js({"spaces": {"v": {"dim": 2, "diffeology": {"generated": [["abs(x)", "0"], ["0", "abs(x)*x"]]}}},
    "maps": {"f": {"from": "v", "to": "v", "matrix": [["0", "1"], ["1", "0"]]}}})js";
  const Run plot = run("--file " + path.string() + " check-plot v \"0, abs(x)\"");
  CHECK(plot.status == 0);
  CHECK(contains(plot.out, "UNKNOWN"));
  const Run map = run("--json --file " + path.string() + " check-map f");
  CHECK(map.status == 0);
  CHECK(nlohmann::json::parse(map.out)["result"]["verdict"] == "UNKNOWN");
  std::filesystem::remove(path);
}
