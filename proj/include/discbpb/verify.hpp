#pragma once

#include "discbpb/pipeline.hpp"
#include "discbpb/zoo.hpp"

namespace bpb::verify {

struct SuiteResult {
  std::string suite;
  std::vector<CheckEntry> checks;
  bool pass = false;
  double seconds = 0.0;

  nlohmann::json to_json() const;
};

/// Known suites: stolz, eta, functional-bpb, zoo, oracle, pipeline, ideal.
std::vector<std::string> suite_names();

/// Runs one named suite (or "all"); unknown names throw.
std::vector<SuiteResult> run_suites(const std::string& name);

/// A reproducible rank-one test case: T = xstar (x) h normalized to ||T|| = 1
/// with h peaking at e^{i theta0}, plus a unit x0 with |Psi1 x0| = level.
struct RankOneCase {
  OperatorIntoDisc t;
  CVec x0;
  double theta0 = 0.0;
  double level = 0.0;  // |Psi1 x0|
};

RankOneCase make_rank_one_case(int n, double eps, double theta0, std::uint64_t seed,
                               int peak_power = 6, double perturbation = 0.03);

}  // namespace bpb::verify
