#include "diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace amp {

namespace {

double lumped_quartic(const Vec& phi, const AssembledOperators& ops) {
  return ops.lumped_mass_o.dot(phi.cwiseAbs2().cwiseAbs2());
}

double consistent_quadratic(const Vec& phi, const AssembledOperators& ops) {
  return phi.dot(ops.mass_o * phi);
}

double segment_dt(std::span<const FieldState> segment) {
  const double dt = segment[1].t - segment[0].t;
  if (!(dt > 0.0))
    throw std::invalid_argument("trajectory segment times must increase");
  for (std::size_t k = 1; k + 1 < segment.size(); ++k) {
    const double d = segment[k + 1].t - segment[k].t;
    if (std::abs(d - dt) > 1e-9 * dt)
      throw std::invalid_argument("trajectory segment spacing is not uniform");
  }
  return dt;
}

}  // namespace

double free_energy(const Vec& phi, const ModelParams& params,
                   const AssembledOperators& ops) {
  const double grad = phi.dot(ops.stiff_o * phi);
  return 0.125 * lumped_quartic(phi, ops) -
         0.25 * consistent_quadratic(phi, ops) +
         0.5 * params.xi * params.xi * grad;
}

DiagnosticsRecord collect(const FieldState& state, const ModelParams& params,
                          const AssembledOperators& ops,
                          const DiagnosticsRecord* prev) {
  DiagnosticsRecord rec;
  rec.t = state.t;
  rec.free_energy = free_energy(state.phi, params, ops);
  rec.l2_u = std::sqrt(std::max(0.0, state.u.dot(ops.mass_u * state.u)));
  rec.h1_phi = std::sqrt(std::max(
      0.0, state.phi.dot(ops.mass_o * state.phi) +
               state.phi.dot(ops.stiff_o * state.phi)));

  double frozen = 0.0, total = 0.0;
  for (int i = 0; i < ops.n_o; ++i) {
    total += ops.lumped_mass_o[i];
    if (state.phi[i] < 0.0) frozen += ops.lumped_mass_o[i];
  }
  rec.frozen_fraction = frozen / total;

  if (prev) {
    const double dt = state.t - prev->t;
    if (dt < 0.0)
      throw std::invalid_argument("collect: time must not decrease");
    rec.bnd_flux_accum =
        prev->bnd_flux_accum + dt * state.u.dot(ops.bmass_u * state.u);
    rec.phidot_accum =
        prev->phidot_accum + dt * state.phi_dot.dot(ops.mass_o * state.phi_dot);
  }
  return rec;
}

double energy_equality_residual(std::span<const FieldState> segment,
                                const ModelParams& params,
                                const AssembledOperators& ops) {
  if (segment.size() < 2) return 0.0;
  const double dt = segment_dt(segment);
  double work = 0.0;
  for (std::size_t k = 1; k < segment.size(); ++k) {
    const Vec& pd = segment[k].phi_dot;
    work += dt * (2.0 * pd.dot(ops.couple_m * segment[k - 1].u) -
                  params.tau * pd.dot(ops.mass_o * pd));
  }
  const double fe_s = free_energy(segment.front().phi, params, ops);
  const double fe_t = free_energy(segment.back().phi, params, ops);
  return std::abs(fe_t - fe_s - work);
}

double chain_rule_residual(std::span<const FieldState> segment,
                           const AssembledOperators& ops) {
  if (segment.size() < 2) return 0.0;
  const double dt = segment_dt(segment);
  double lhs = 0.0;
  for (std::size_t k = 1; k < segment.size(); ++k) {
    const Vec& phi = segment[k].phi;
    const Vec& pd = segment[k].phi_dot;
    const Vec cubic = ops.lumped_mass_o.cwiseProduct(
        phi.cwiseAbs2().cwiseProduct(phi));
    lhs += dt * (pd.dot(cubic) - pd.dot(ops.mass_o * phi));
  }
  const double rhs =
      0.25 * (lumped_quartic(segment.back().phi, ops) -
              lumped_quartic(segment.front().phi, ops)) -
      0.5 * (consistent_quadratic(segment.back().phi, ops) -
             consistent_quadratic(segment.front().phi, ops));
  return std::abs(lhs - rhs);
}

DiagnosticsMonitor::DiagnosticsMonitor(const ModelParams& params,
                                       const AssembledOperators& ops,
                                       const FieldState& initial)
    : params_(params), ops_(ops) {
  record_ = collect(initial, params_, ops_);
  prev_u_ = initial.u;
  fe_first_ = record_.free_energy;
  quartic_first_ = lumped_quartic(initial.phi, ops_);
  quadratic_first_ = consistent_quadratic(initial.phi, ops_);
  quartic_now_ = quartic_first_;
  quadratic_now_ = quadratic_first_;
}

void DiagnosticsMonitor::on_step(const FieldState& state) {
  const double dt = state.t - record_.t;
  const Vec& pd = state.phi_dot;
  energy_sum_ += dt * (2.0 * pd.dot(ops_.couple_m * prev_u_) -
                       params_.tau * pd.dot(ops_.mass_o * pd));
  const Vec cubic = ops_.lumped_mass_o.cwiseProduct(
      state.phi.cwiseAbs2().cwiseProduct(state.phi));
  chain_sum_ += dt * (pd.dot(cubic) - pd.dot(ops_.mass_o * state.phi));
  quartic_now_ = lumped_quartic(state.phi, ops_);
  quadratic_now_ = consistent_quadratic(state.phi, ops_);
  record_ = collect(state, params_, ops_, &record_);
  prev_u_ = state.u;
}

double DiagnosticsMonitor::energy_residual() const {
  return std::abs(record_.free_energy - fe_first_ - energy_sum_);
}

double DiagnosticsMonitor::chain_residual() const {
  const double rhs = 0.25 * (quartic_now_ - quartic_first_) -
                     0.5 * (quadratic_now_ - quadratic_first_);
  return std::abs(chain_sum_ - rhs);
}

void write_csv_header(std::ostream& os) {
  os << "t,free_energy,l2_u,h1_phi,bnd_flux_accum,phidot_accum,"
        "frozen_fraction,energy_residual,chain_residual\n";
}

void write_csv_row(std::ostream& os, const DiagnosticsRecord& rec,
                   double energy_residual, double chain_residual) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                rec.t, rec.free_energy, rec.l2_u, rec.h1_phi,
                rec.bnd_flux_accum, rec.phidot_accum, rec.frozen_fraction,
                energy_residual, chain_residual);
  os << buf;
}

}  // namespace amp
