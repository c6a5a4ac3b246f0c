#pragma once

// Scenario execution, tolerance gating and CSV / JSON reporting.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "purefield_cli/config.hpp"

namespace purefield::cli {

enum class RowStatus { kPass, kFail, kInfo };
std::string to_string(RowStatus s);

struct TermRow {
  std::string term;
  double numeric = 0.0;
  std::optional<double> analytic;
  double abs_error = 0.0;
  double error_estimate = 0.0;
  double tolerance = 0.0;
  std::string eq_tag;
  RowStatus status = RowStatus::kInfo;
};

struct ConvergenceRow {
  int level = 0;
  std::string quantity;
  int n_theta = 0;
  int n_phi = 0;
  double value = 0.0;
  double error = 0.0;     // |value - analytic|
  double estimate = 0.0;  // quadrature estimate
};

struct SweepRow {
  double eps = 0.0;
  double max_ratio = 0.0;
  double numeric = 0.0;
  double analytic_closed = 0.0;
  double analytic_usual = 0.0;
  double correspondence = 0.0;  // |numeric - analytic_usual|
};

struct ScenarioResult {
  std::string name;
  ActionReport report;
  std::vector<TermRow> terms;
  std::vector<ConvergenceRow> convergence;
  std::vector<SweepRow> sweep;
  std::optional<double> slope;
  std::optional<GaussCheck> gauss;
  SlowVariation condition;

  int failures() const;
  bool passed() const { return failures() == 0; }
};

struct RunOptions {
  bool check = false;
  std::optional<std::filesystem::path> out;
  double mesh_scale = 1.0;
  bool quiet = false;
};

/// Applies --mesh-scale to the sphere orders.
ActionOptions scaled_options(const ActionOptions& o, double mesh_scale);

ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

/// Writes terms.csv, convergence.csv, eps_sweep.csv (when present) and
/// summary.json into dir.
void write_outputs(const ScenarioResult& r, const std::filesystem::path& dir);

void print_terms(const ScenarioResult& r, std::ostream& os);

/// Exit codes of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitTolerance = 1;
inline constexpr int kExitConfig = 2;

int run_command(const std::filesystem::path& config, const RunOptions& opts, std::ostream& out, std::ostream& err);
int suite_command(const std::filesystem::path& dir, const RunOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace purefield::cli
