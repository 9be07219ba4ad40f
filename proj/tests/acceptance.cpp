// Acceptance suite: runs every certification criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit code is the
// number of failures.
#include <cstdio>
#include <string>

#include "discbpb/verify.hpp"

namespace {

int failures = 0;

void report(const char* id, const char* title, const bpb::verify::SuiteResult& s) {
  if (!s.pass) ++failures;
  std::printf("[%s] %s: %s (%.2fs)\n", s.pass ? "PASS" : "FAIL", id, title, s.seconds);
  for (const auto& c : s.checks) {
    std::printf("    %-28s value=%-14.6g target=%-12.6g slack=%-12.6g %s\n",
                c.name.c_str(), c.value, c.target, c.slack, c.pass ? "ok" : "FAILED");
  }
}

}  // namespace

int main() {
  using bpb::verify::run_suites;

  // C1 end-to-end construction + C2 proof-chain inequalities share the runs
  auto pipeline = run_suites("pipeline").front();
  {
    auto c1 = pipeline;
    c1.checks.erase(std::remove_if(c1.checks.begin(), c1.checks.end(),
                                   [](const bpb::CheckEntry& c) {
                                     return c.name == "chain_worst_margin";
                                   }),
                    c1.checks.end());
    c1.pass = std::all_of(c1.checks.begin(), c1.checks.end(),
                          [](const auto& c) { return c.pass; });
    report("C1", "end-to-end rank-one runs, n in {2,8}, eps in {0.1,0.3,0.6}", c1);

    auto c2 = pipeline;
    c2.checks.erase(std::remove_if(c2.checks.begin(), c2.checks.end(),
                                   [](const bpb::CheckEntry& c) {
                                     return c.name != "chain_worst_margin";
                                   }),
                    c2.checks.end());
    c2.pass = std::all_of(c2.checks.begin(), c2.checks.end(),
                          [](const auto& c) { return c.pass; });
    report("C2", "proof-chain intermediates hold with positive margin", c2);
  }

  report("C3", "conformal map suite, eps in {0.2,0.5,0.8}, M = 2048",
         run_suites("stolz").front());
  report("C4", "eta bump certification", run_suites("eta").front());
  report("C5", "functional step property suite, 1e4 euclidean instances",
         run_suites("functional-bpb").front());
  report("C6", "operator zoo norm identities", run_suites("zoo").front());
  report("C7", "norm oracle equivalence on 200 random operators",
         run_suites("oracle").front());
  report("C8", "ideal decomposition N = N1 + N2", run_suites("ideal").front());

  std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
