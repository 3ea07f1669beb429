// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "dyadic/tree.hpp"

namespace dyadic {

struct CampaignConfig {
  std::uint64_t seed = 1;
  /// Random step functions per (q, depth) cell.
  int trials = 1000;
  std::vector<double> qs{0.25, 0.5, 0.75};
  int min_depth = 1;
  int max_depth = 8;
  /// Relative tolerance applied in float mode; exact mode uses exact comparisons
  /// (zero tolerance) and kExactPowerTolerance for quantities involving x^q.
  double tolerance = 1e-12;
  /// Rational (exact) evaluation of the maximal function and of the level-set checks.
  bool exact = true;
  /// Empty means <$DYADIC_OUT_DIR or .>/campaign.csv.
  std::string out;
  int lambdas = 20;
  int subsets = 10;
  int grid = 64;
  /// Worker threads; 0 picks the hardware concurrency. Never changes the output.
  int threads = 0;
};

/// Throws std::invalid_argument on an inconsistent configuration.
void validate(const CampaignConfig& config);

/// Applies "key = value" lines (blank lines and '#' comments ignored). Keys:
/// seed, trials, qs (comma separated), min_depth, max_depth, depth (sets both),
/// tolerance, exact, out, lambdas, subsets, grid, threads.
void apply_config_text(CampaignConfig& config, const std::string& text);
void apply_config_file(CampaignConfig& config, const std::string& path);

/// Output path after applying the DYADIC_OUT_DIR default.
std::string resolve_output_path(const CampaignConfig& config);

inline constexpr const char* kCampaignCsvHeader = "check,q,depth,lhs,rhs,slack,holds";

struct CampaignSummary {
  std::size_t functions = 0;
  std::size_t rows = 0;
  std::size_t violations = 0;
  std::map<std::string, std::size_t> rows_by_check;
  std::map<std::string, std::size_t> violations_by_check;
  [[nodiscard]] bool ok() const { return violations == 0; }
};

/// Random nonnegative dyadic step function drawn from the campaign mix:
/// each leaf is exactly 0 with probability 1/4; otherwise one of a uniform,
/// a Pareto(1.2) heavy tail or a single tall spike, rounded to a multiple of
/// 2^-10 so that exact arithmetic applies. Never identically zero.
StepFunction random_campaign_function(const TreePtr& tree, std::mt19937_64& rng);

/// Runs every check on trials x |qs| x depths random functions, writes CSV rows
/// to `csv` in deterministic cell order and lists each violation with its
/// reproduction parameters on `log`.
CampaignSummary run_verification_campaign(const CampaignConfig& config, std::ostream& csv, std::ostream& log);

/// Same, writing the CSV to resolve_output_path(config); I/O failures throw
/// std::runtime_error naming the path.
CampaignSummary run_verification_campaign(const CampaignConfig& config, std::ostream& log);

}  // namespace dyadic
