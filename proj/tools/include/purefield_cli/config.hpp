#pragma once

// Scenario configuration: YAML loading and validation.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <purefield/action.hpp>

namespace purefield::cli {

/// Validation failure; `issues` holds one "field.path: message" per problem.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

enum class GaussFields { kPolynomial, kPlaneWave, kExternal };

struct GaussConfig {
  double xi2 = 0.5;
  double tau1 = 0.0;
  double tau2 = 1.0;
  std::array<int, 3> orientation{kTubeOutward, kConePast, kConeFuture};
  GaussFields fields = GaussFields::kPolynomial;
  double tolerance = 1e-6;
};

struct SweepConfig {
  std::vector<double> eps;
  double slope_tolerance = 0.1;
};

struct ScenarioConfig {
  std::string name;
  std::string worldline_description;
  std::string external_description;
  Scenario scenario;
  ActionOptions options;
  double relative_tolerance = 1e-6;
  double absolute_tolerance = 1e-10;
  int convergence_levels = 3;
  std::optional<GaussConfig> gauss;
  std::optional<SweepConfig> eps_sweep;
  /// Only for eps sweeps: the polynomial-slow parameters.
  Real4 sweep_a0{};
  Real4 sweep_k{};
  std::optional<std::filesystem::path> output;
};

ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const std::string& text, const std::string& default_name = "scenario");

}  // namespace purefield::cli
