#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace polyvfe::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitNumericalAbort = 3,
};

/// Reproducibility header embedded in every emitted JSON document.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // ISO 8601, UTC
  std::map<std::string, double> tolerances;

  nlohmann::json to_json() const;
};

struct VerificationOutcome {
  std::string case_id;  // e.g. "theorem2/M=5/p=1/q=3"
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  bool budget_skipped = false;

  nlohmann::json to_json() const;
};

struct VerifyOptions {
  std::string suite = "all";  // sums, theorem2, lemma3, lemma4, vanishing, all
  long long q_max = 16;
  long long m_max = 10;
  long long budget = 10'000'000;
};

/// Runs the selected suites; outcomes sorted by case_id.
std::vector<VerificationOutcome> run_verification(const VerifyOptions& options);

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyvfe::cli
