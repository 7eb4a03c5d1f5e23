#include "stepper.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "solver.hpp"

namespace amp {

std::vector<std::string> StepperConfig::validate() const {
  std::vector<std::string> v;
  if (!(dt > 0.0)) v.push_back("dt must be positive");
  if (!(linsolve_tol > 0.0 && linsolve_tol < 1.0))
    v.push_back("linsolve_tol must lie in (0, 1)");
  if (linsolve_maxit < 1) v.push_back("linsolve_maxit must be >= 1");
  return v;
}

void StepperConfig::require_valid() const {
  const auto v = validate();
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid stepper config:";
  for (const auto& m : v) os << " " << m << ";";
  throw std::invalid_argument(os.str());
}

namespace {

void require_finite(const Vec& v, const char* label) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i]))
      throw std::runtime_error(std::string("non-finite ") + label +
                               " value at node " + std::to_string(i));
}

}  // namespace

FieldState step(const FieldState& state, const StepperConfig& cfg,
                const ModelParams& params, const AssembledOperators& ops,
                const Mesh& mesh, const BoundaryData& g) {
  cfg.require_valid();
  if (state.u.size() != ops.n_u || state.phi.size() != ops.n_o)
    throw std::invalid_argument("step: state size does not match operators");
  if (state.t + cfg.dt > params.t_end + cfg.dt * 1e-9)
    throw std::invalid_argument("step: would pass t_end");
  require_finite(state.u, "u");
  require_finite(state.phi, "phi");

  const double dt = cfg.dt;
  const double tau_dt = params.tau / dt;

  // Phase update.
  SpMat a_phi = tau_dt * ops.mass_o + (params.xi * params.xi) * ops.stiff_o;
  Vec rhs_phi = tau_dt * (ops.mass_o * state.phi) +
                2.0 * (ops.couple_m * state.u) +
                0.5 * (ops.mass_o * state.phi);
  if (params.enable_cubic) {
    const Vec cubic_diag =
        0.5 * ops.lumped_mass_o.cwiseProduct(state.phi.cwiseAbs2());
    if (cfg.cubic_mode == CubicMode::kSemiImplicit) {
      SpMat d(ops.n_o, ops.n_o);
      d.reserve(Eigen::VectorXi::Ones(ops.n_o));
      for (int i = 0; i < ops.n_o; ++i) d.insert(i, i) = cubic_diag[i];
      a_phi += d;
    } else {
      rhs_phi -= cubic_diag.cwiseProduct(state.phi);
    }
  }
  FieldState next;
  next.phi = solve_spd(a_phi, rhs_phi, cfg.linsolve_tol, cfg.linsolve_maxit,
                       &state.phi);
  next.phi_dot = (next.phi - state.phi) / dt;

  // Temperature update; g sampled at the new time level.
  const double t_new = state.t + dt;
  const SpMat a_u = (1.0 / dt) * ops.mass_u + ops.stiff_u +
                    params.lambda_bc * ops.bmass_u;
  const Vec rhs_u = (1.0 / dt) * (ops.mass_u * state.u) -
                    0.5 * params.latent_l * (ops.couple_m.transpose() * next.phi_dot) +
                    assemble_boundary_load(mesh, params, g, t_new);
  next.u = solve_spd(a_u, rhs_u, cfg.linsolve_tol, cfg.linsolve_maxit,
                     &state.u);
  next.t = t_new;
  require_finite(next.u, "u");
  require_finite(next.phi, "phi");
  return next;
}

FieldState run(const FieldState& initial, const StepperConfig& cfg,
               const ModelParams& params, const AssembledOperators& ops,
               const Mesh& mesh, const BoundaryData& g, const StepHook& hook) {
  cfg.require_valid();
  params.require_valid();
  if (initial.t != 0.0)
    throw std::invalid_argument("run: initial state must have t = 0");

  FieldState state = initial;
  long step_index = 0;
  while (state.t < params.t_end - cfg.dt * 1e-9) {
    StepperConfig step_cfg = cfg;
    step_cfg.dt = std::min(cfg.dt, params.t_end - state.t);
    try {
      state = step(state, step_cfg, params, ops, mesh, g);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "run: step " << step_index << " (t = " << state.t
         << ") failed: " << e.what();
      throw std::runtime_error(os.str());
    }
    ++step_index;
    if (std::abs(state.t - params.t_end) <= cfg.dt * 1e-9)
      state.t = params.t_end;
    if (hook) hook(state);
  }
  return state;
}

}  // namespace amp
