#pragma once

// Randomized property suites. Each trial draws from its own RNG stream
// derive_seed(seed, trial), so any trial can be replayed in isolation and a
// run is a pure function of its configuration.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rdual {

struct SuiteConfig {
  std::uint64_t seed = 1;
  int trials = 100;
  std::vector<int> dims{2, 3, 4, 5, 6, 7, 8};
  double tolerance = 1e-8;               // membership / bound-matching tolerance
  std::optional<int> only_trial;         // replay a single trial
};

struct TrialOutcome {
  int index = 0;
  std::uint64_t seed = 0;
  bool passed = false;
  double discrepancy = 0.0;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  SuiteConfig config;
  int passed = 0;
  int failed = 0;
  double worst_discrepancy = 0.0;
  std::vector<TrialOutcome> failures;

  bool all_passed() const noexcept { return failed == 0 && passed > 0; }
  std::string replay_command(const TrialOutcome& t) const;
};

const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);

/// Throws std::invalid_argument for unknown suites or empty configurations.
SuiteReport run_suite(std::string_view name, const SuiteConfig& config);

nlohmann::json suite_report_to_json(const SuiteReport& r);
std::string suite_reports_to_csv(const std::vector<SuiteReport>& reports);

}  // namespace rdual
