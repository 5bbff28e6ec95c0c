#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "k3/config.hpp"
#include "k3/realization.hpp"

namespace k3 {

struct SuiteConfig {
  std::uint64_t seed = 1;
  int i_max = 12;
  int margin = 8;
  int degree_max = 5;
  int n_random = 200;
  std::vector<Rat> ranks = {1, 2, 3};
  std::optional<std::string> gram_path;    // alternate Gram (JSON config file)
  std::optional<std::string> golden_path;  // integral-table golden file
  bool write_golden = false;
  bool test_corrupt_t1 = false;  // harness sanity hook; never set by the CLI

  /// Throws ConfigError when the window cannot cover the suite's shifts.
  void validate() const;
};

struct CheckResult {
  std::string name;
  std::string window;  // human-readable description of the tested window
  bool pass = false;
  std::string detail;  // counterexample or note; empty when unremarkable
};

struct SuiteReport {
  std::string suite;
  SuiteConfig config;
  std::vector<CheckResult> checks;
  double wall_seconds = 0;

  bool all_pass() const;
};

const std::vector<std::string>& suite_names();  // excludes "all"

/// Runs one named suite (or "all").  Unknown names and bad configs throw
/// ConfigError; check failures are report content, not errors.
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

/// "text": header plus one line per check plus wall time.
/// "json": stable-keyed, deterministic for a fixed config (no wall time).
std::string emit_report(const SuiteReport& r, const std::string& format);

/// Inverse of the json format; wall time comes back as zero.
SuiteReport report_from_json(const std::string& text);

}  // namespace k3
