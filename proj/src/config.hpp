#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stepper.hpp"

namespace amp {

struct InitialSpec {
  std::string preset = "constant";  // "constant" | "equilibrium"
  double u0 = 0.0;
  double phi0 = 1.0;
  bool operator==(const InitialSpec&) const = default;
};

struct BoundarySpec {
  std::string preset;  // "constant" | "ramp" | "table"
  double g0 = 0.0;
  double rate = 0.0;                             // ramp: g0 + rate * t
  std::vector<std::pair<double, double>> table;  // (t, value), piecewise linear
  bool operator==(const BoundarySpec&) const = default;
};

struct OutputSpec {
  std::string dir = "out";
  int snapshot_stride = 1;
  bool operator==(const OutputSpec&) const = default;
};

/// Optional knobs for the study subcommands.
struct StudySpec {
  double eps_u0 = 1.0;
  double eps_phi0 = 1.0;
  double eps_g = 1.0;
  std::vector<double> ladder = {1e-1, 1e-2, 1e-3};
  int convergence_levels = 3;
  double oracle_factor = 50.0;  // reference substep <= finest dt / factor
  bool operator==(const StudySpec&) const = default;
};

struct ScenarioConfig {
  MeshSpec mesh;
  ModelParams params;
  StepperConfig stepper;
  InitialSpec initial;
  BoundarySpec boundary;
  OutputSpec output;
  StudySpec study;
  int threads = 1;
};

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

struct ConfigError {
  int line = 0;  // 0 when no single line is at fault
  std::string message;
};

struct ParseResult {
  std::optional<ScenarioConfig> config;
  std::vector<ConfigError> errors;
  bool ok() const { return config.has_value() && errors.empty(); }
};

/// Parses the flat `key = value` format ('#' starts a comment).  On
/// failure every problem is reported, not just the first.
ParseResult parse_config(const std::string& text);

/// Canonical serialization; parse(serialize(c)) reproduces c exactly.
std::string serialize_config(const ScenarioConfig& cfg);

/// Boundary/initial data factories for the named presets.
BoundaryData make_boundary(const BoundarySpec& spec);
std::function<double(double, double)> make_initial_u(const InitialSpec& spec);
std::function<double(double, double)> make_initial_phi(const InitialSpec& spec);

}  // namespace amp
