#pragma once

#include <functional>

#include "assembly.hpp"

namespace amp {

enum class CubicMode { kSemiImplicit = 0, kExplicit = 1 };

struct StepperConfig {
  double dt = 1e-3;
  double linsolve_tol = 1e-10;
  int linsolve_maxit = 10000;
  CubicMode cubic_mode = CubicMode::kSemiImplicit;

  std::vector<std::string> validate() const;
  void require_valid() const;
};

/// Advances one step of the first-order semi-implicit scheme.  The phase
/// equation carries no u_t, so it is solved first; the temperature update
/// then consumes the fresh discrete phi_dot.  Both solves are SPD.
///
/// Phase:   (tau/dt M_O + xi^2 K_O [+ 1/2 D_n]) phi' =
///              tau/dt M_O phi + 2 M u + 1/2 M_O phi [- 1/2 D_n phi]
///          with D_n = diag(lumped_mass_o .* phi^2), the nodally lumped
///          cubic; the bracketed placement depends on cubic_mode.
/// Heat:    (1/dt M_U + K_U + lambda B_U) u' =
///              1/dt M_U u - (l/2) M^T phi_dot + boundary_load(g, t+dt)
FieldState step(const FieldState& state, const StepperConfig& cfg,
                const ModelParams& params, const AssembledOperators& ops,
                const Mesh& mesh, const BoundaryData& g);

using StepHook = std::function<void(const FieldState&)>;

/// Runs from t = 0 until t >= params.t_end on a uniform grid; the final
/// step is truncated to land exactly on t_end.  Invokes the hook after
/// every step.  Step failures are rethrown with the step index and time.
FieldState run(const FieldState& initial, const StepperConfig& cfg,
               const ModelParams& params, const AssembledOperators& ops,
               const Mesh& mesh, const BoundaryData& g,
               const StepHook& hook = nullptr);

}  // namespace amp
