// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria, capped at 1.

#include "diffeolin/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <sys/wait.h>

#ifndef DIFFEOLIN_CLI
#error "DIFFEOLIN_CLI must point at the command-line tool"
#endif

using namespace diffeolin;

namespace {

struct Criterion {
  int number;
  double limit_seconds;
  std::function<CheckResult()> run;
};

CheckResult cli_verify() {
  CheckResult r;
  r.name = "verify subcommand";
  const std::string cmd = std::string(DIFFEOLIN_CLI) + " verify > /dev/null 2>&1";
  const auto start = std::chrono::steady_clock::now();
  const int raw = std::system(cmd.c_str());
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.passed = status == 0;
  r.detail = "exit status " + std::to_string(status);
  return r;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, 1.0, [] { return check_dual_dimensions(); }},
      {2, 1.0, [] { return check_bilinear_vanishing(); }},
      {3, 10.0, [] { return check_curry_correspondence(); }},
      {4, 5.0, [] { return check_dual_map_smoothness(); }},
      {5, 5.0, [] { return check_tensor_dual_multiplicativity(); }},
      {6, 1.0, [] { return check_non_isomorphisms(); }},
      {7, 5.0, [] { return check_distributivity(); }},
      {8, 30.0, [] { return check_oracle_agreement(); }},
      {9, 2.0, [] { return check_hat_dual_wellposedness(); }},
      {10, 60.0, cli_verify},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const CheckResult r = c.run();
    const bool in_time = r.seconds < c.limit_seconds;
    const bool ok = r.passed && in_time;
    failed += !ok;
    std::printf("%s criterion %d: %s (%.3fs, limit %.0fs%s) %s\n", ok ? "PASS" : "FAIL", c.number, r.name.c_str(),
                r.seconds, c.limit_seconds, in_time ? "" : ", too slow", r.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
