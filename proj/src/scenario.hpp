#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"
#include "wellposedness.hpp"

namespace amp {

enum class RunStatus {
  kOk = 0,
  kConfigError = 1,
  kSolverFailure = 2,
  kIoError = 3,
};

struct RunSummary {
  RunStatus status = RunStatus::kOk;
  long steps = 0;
  double final_t = 0.0;
  double final_frozen_fraction = 0.0;
  double wall_seconds = 0.0;
  std::string error;
};

/// Full scenario run: mesh -> assembly -> projection -> time loop with
/// streaming diagnostics.  Writes diagnostics.csv, snap_<step>.vtk every
/// snapshot_stride steps (the initial state always), and summary.txt into
/// the output directory.  Solver failures keep partial outputs and are
/// recorded in the summary.
RunSummary run_scenario(const ScenarioConfig& cfg, std::ostream* log = nullptr);

/// Builds and validates the mesh, writes mesh.vtk and mesh_check.txt.
RunSummary mesh_check(const ScenarioConfig& cfg, std::ostream* log = nullptr);

/// Continuous-dependence study driver; writes scaling_report.csv and
/// scaling_report.txt.
RunSummary perturbation_study_cmd(const ScenarioConfig& cfg,
                                  std::ostream* log = nullptr);

/// Temporal-order study against the reference integrator; writes
/// convergence.csv and convergence.txt.
RunSummary convergence_study_cmd(const ScenarioConfig& cfg,
                                 std::ostream* log = nullptr);

}  // namespace amp
