#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "noisysort/exact.hpp"

namespace noisysort {

// Grids for the invariant sweep. Every array has a default; a JSON config can
// override any subset of them.
struct VerifyConfig {
  std::vector<std::array<double, 3>> triples;      // a <= b <= c, not all equal
  std::vector<double> lambdas;                     // > 0, never exactly 1
  std::vector<int> outlier_ns;                     // >= 2
  std::vector<double> ps;                          // error probabilities (0, 1/2]
  std::vector<std::pair<int, int>> binary_sizes;   // (n_a, n_b), both >= 1
};

VerifyConfig default_verify_config();

// Parses a JSON object with optional arrays "triples", "lambdas",
// "outlier_ns", "ps", "binary_sizes"; missing keys fall back to the default
// sweep, unknown keys are rejected. Throws std::invalid_argument on malformed
// input, out-of-domain values, or lambda = 1 (the strict inequalities are
// void at the fair coin).
VerifyConfig parse_verify_config(const std::string& json_text);

struct CheckResult {
  std::string check;
  nlohmann::ordered_json params;
  double margin = 0.0;  // slack against the check's threshold; negative = failed
  bool pass = false;
  bool required = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool required_pass = true;  // every required check passed
};

// Runs the full invariant sweep: Gibbs and tree stationary cross-checks,
// reversibility witnesses, the adjacent-beats-any inequalities, one-outlier
// closed forms and bounds, path-coupling tables, and mixing bounds.
// Inequality checks that are theorems only on part of the grid are emitted
// with required=false outside it.
VerifyReport run_verify(const VerifyConfig& cfg, std::size_t state_cap);

// Runs the sweep and writes report.json (a JSON array of
// {check, params, margin, pass, required}) into out_dir.
VerifyReport cmd_verify(const VerifyConfig& cfg, std::size_t state_cap,
                        const std::string& out_dir,
                        std::filesystem::path* report_path = nullptr);

}  // namespace noisysort
