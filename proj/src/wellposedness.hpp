#pragma once

#include <iosfwd>
#include <string>

#include "oracle.hpp"
#include "stepper.hpp"

namespace amp {

/// Amplitudes for the three data channels and the ladder of scale
/// factors applied to them.  Profiles are fixed smooth bumps normalized
/// in the data-space norms (L2(U), H1(Omega), L2 of the boundary
/// cylinder), so the ladder scales amplitude only.
struct PerturbationSpec {
  double eps_u0 = 1.0;
  double eps_phi0 = 1.0;
  double eps_g = 1.0;
  std::vector<double> ladder = {1e-1, 1e-2, 1e-3};

  std::vector<std::string> validate() const;
  void require_valid() const;
};

/// One perturbed run: the four difference norms monitored by the
/// continuous-dependence estimate.
struct ScalingRung {
  double scale = 0.0;
  double sup_u_l2 = 0.0;      // sup_t ||u_bar||_{L2(U)}
  double sup_phi_h1 = 0.0;    // sup_t ||phi_bar||_{H1(Omega)}
  double grad_u_l2t = 0.0;    // sqrt( sum dt ||grad u_bar||^2 )
  double phidot_l2t = 0.0;    // sqrt( sum dt ||phi_bar_t||^2 )
};

struct ChannelScaling {
  std::string channel;  // "u0", "phi0", or "g"
  double eps = 0.0;
  std::vector<ScalingRung> rungs;
  bool slopes_defined = false;  // false when all differences vanish
  double slope_sup_u = 0.0;
  double slope_sup_phi = 0.0;
  double slope_grad_u = 0.0;
  double slope_phidot = 0.0;
};

struct ScalingReport {
  std::vector<ChannelScaling> channels;
};

/// Everything a study run needs; the mesh, operators, and base data are
/// shared read-only across runs.
struct StudyProblem {
  const Mesh& mesh;
  const AssembledOperators& ops;
  const ModelParams& params;
  const StepperConfig& cfg;
  const BoundaryData& g;
  const FieldState& initial;
};

/// Runs the base problem once, then rung-by-rung perturbed problems per
/// channel on the identical mesh and time grid, and fits the log-log
/// slope of each difference norm against the scale factor.  Channels
/// with zero amplitude report exact-zero differences and no slope.
ScalingReport perturbation_study(const StudyProblem& base,
                                 const PerturbationSpec& spec,
                                 int threads = 1);

/// Repeats the identical run n_reps times and returns the largest
/// max-norm difference over all state pairs; determinism is the discrete
/// face of uniqueness, so the expected value is exactly zero.
double uniqueness_probe(const StudyProblem& base, int n_reps);

void write_scaling_csv(std::ostream& os, const ScalingReport& report);
void write_scaling_text(std::ostream& os, const ScalingReport& report);

}  // namespace amp
