#pragma once

#include <iosfwd>
#include <span>

#include "assembly.hpp"

namespace amp {

/// Per-step monitored quantities: the free-energy functional, the norms
/// bounded a priori, running accumulators, and the frozen fraction of the
/// medium (measure fraction with phi < 0, lumped nodal measures).
struct DiagnosticsRecord {
  double t = 0.0;
  double free_energy = 0.0;
  double l2_u = 0.0;             // ||u||_{L2(U)}
  double h1_phi = 0.0;           // ||phi||_{H1(Omega)}
  double bnd_flux_accum = 0.0;   // running sum dt * ∫_∂U u^2
  double phidot_accum = 0.0;     // running sum dt * ||phi_dot||^2_{L2(Omega)}
  double frozen_fraction = 0.0;
};

/// ∫_Ω [phi^4/8 - phi^2/4 + (xi^2/2)|grad phi|^2] over the discrete phase
/// field.  The quartic part is nodally lumped to match the stepper's cubic
/// treatment; the quadratic and gradient parts integrate the piecewise
/// polynomial exactly.  Bounded below by -|Omega|/8.
double free_energy(const Vec& phi, const ModelParams& params,
                   const AssembledOperators& ops);

DiagnosticsRecord collect(const FieldState& state, const ModelParams& params,
                          const AssembledOperators& ops,
                          const DiagnosticsRecord* prev = nullptr);

/// Discrete residual of the energy equation over a uniformly spaced
/// trajectory segment:
///   | FE(t) - FE(s) - sum dt <phi_dot, 2u - tau phi_dot> |
/// where u is taken at the time level the phase update consumed, so the
/// residual measures pure time-discretization error (first order in dt).
/// Throws on non-uniform spacing.
double energy_equality_residual(std::span<const FieldState> segment,
                                const ModelParams& params,
                                const AssembledOperators& ops);

/// Discrete residual of the chain-rule identity
///   sum dt <phi_dot, phi^3 - phi>  vs  1/4 d(phi^4 terms) - 1/2 d(phi^2)
/// with the quartic/cubic parts nodally lumped.  First order in dt.
double chain_rule_residual(std::span<const FieldState> segment,
                           const AssembledOperators& ops);

/// Streaming companion of the segment residuals: feeds on states as the
/// run produces them and keeps running residual values from t = 0, so a
/// trajectory never needs to be stored for CSV output.
class DiagnosticsMonitor {
 public:
  DiagnosticsMonitor(const ModelParams& params, const AssembledOperators& ops,
                     const FieldState& initial);

  void on_step(const FieldState& state);

  const DiagnosticsRecord& record() const { return record_; }
  double energy_residual() const;
  double chain_residual() const;

 private:
  const ModelParams& params_;
  const AssembledOperators& ops_;
  DiagnosticsRecord record_;
  Vec prev_u_;
  double fe_first_ = 0.0;
  double quartic_first_ = 0.0, quadratic_first_ = 0.0;
  double quartic_now_ = 0.0, quadratic_now_ = 0.0;
  double energy_sum_ = 0.0, chain_sum_ = 0.0;
};

/// Fixed CSV schema:
/// t,free_energy,l2_u,h1_phi,bnd_flux_accum,phidot_accum,frozen_fraction,
/// energy_residual,chain_residual
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const DiagnosticsRecord& rec,
                   double energy_residual, double chain_residual);

}  // namespace amp
