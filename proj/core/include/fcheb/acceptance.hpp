#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fcheb/sweeps.hpp"

namespace fcheb {

struct AcceptanceOptions {
  std::vector<std::string> cases;            // empty: every catalogued case
  std::optional<std::pair<int, int>> n_range;  // restricts the zero-count sweep configurations
  int trials = 200;
  int sturm_trials = 50;
  std::uint64_t seed = 20240601;
  double tol_quad = 1e-10;
  double tol_pf = 1e-6;                      // criteria 2 and 3
  std::filesystem::path out_dir;             // empty: no files
  bool plots = true;                         // SVG evidence for flagged trials
  std::optional<std::filesystem::path> catalog_file;  // declared rows to compare in criterion 1
};

/// Throws std::invalid_argument for unknown case ids, trials < 1, non-positive tolerances or an
/// empty n range.
void validate(const AcceptanceOptions& opt);

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  std::optional<double> budget_seconds;  // exceeded budgets fail the criterion
  nlohmann::ordered_json data;
};

/// (case, n) pairs of the zero-count sweep after the case and n filters.
std::vector<std::pair<std::string, int>> sweep_configurations(const AcceptanceOptions& opt);

/// Runs the criteria in `ids` (1..10) in order. Criterion 10 reuses the rows of criterion 7 when
/// both run. Writes count.csv, sigma.csv, acceptance.json and plots/ under out_dir when set.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, const std::vector<int>& ids = {});

/// "criterion 7 PASS  zero bounds ...  (12.3 s)"
std::string criterion_line(const CriterionResult& r);

nlohmann::ordered_json acceptance_report(const AcceptanceOptions& opt, const std::vector<CriterionResult>& results);

}  // namespace fcheb
