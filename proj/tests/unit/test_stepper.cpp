#include "doctest.h"

#include <cmath>

#include "stepper.hpp"

using namespace amp;

namespace {

struct Problem {
  Mesh mesh;
  AssembledOperators ops;
  BoundaryData g;
};

Problem make_problem(const MeshSpec& spec, const ModelParams& params,
                     double g_value = 0.0) {
  Problem p;
  p.mesh = build_nested_rect_mesh(spec);
  p.ops = assemble_operators(p.mesh, params);
  p.g.g = [g_value](double, double, double) { return g_value; };
  return p;
}

FieldState constant_state(const AssembledOperators& ops, double u, double phi) {
  FieldState s;
  s.t = 0.0;
  s.u = Vec::Constant(ops.n_u, u);
  s.phi = Vec::Constant(ops.n_o, phi);
  s.phi_dot = Vec::Zero(ops.n_o);
  return s;
}

// The spatially uniform scheme collapses to two scalar update equations;
// iterating them by hand is the oracle for the full solver.
void scalar_update(double& u, double& phi, double dt, const ModelParams& p,
                   CubicMode mode) {
  const double tau_dt = p.tau / dt;
  double phi_next;
  if (mode == CubicMode::kSemiImplicit)
    phi_next = (tau_dt * phi + 2.0 * u + 0.5 * phi) /
               (tau_dt + 0.5 * phi * phi);
  else
    phi_next =
        (tau_dt * phi + 2.0 * u + 0.5 * phi - 0.5 * phi * phi * phi) / tau_dt;
  const double phi_dot = (phi_next - phi) / dt;
  u -= dt * 0.5 * p.latent_l * phi_dot;
  phi = phi_next;
}

}  // namespace

TEST_CASE("double-well equilibria are fixed points of the scheme") {
  ModelParams params;
  params.k_omega = 1.0;
  params.k_wall = 0.5;
  params.latent_l = 2.0;
  params.tau = 0.01;
  params.xi = 0.05;
  params.lambda_bc = 1.5;
  params.t_end = 1.0;
  Problem p = make_problem({0.8, 0.8, 0.1, 0.1}, params);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.linsolve_tol = 1e-12;

  for (double phi0 : {1.0, 0.0, -1.0}) {
    FieldState s = constant_state(p.ops, 0.0, phi0);
    const FieldState next = step(s, cfg, params, p.ops, p.mesh, p.g);
    CHECK((next.u - s.u).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((next.phi - s.phi).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("uniform fields reduce to the two-variable scalar update") {
  // Zero wall thickness makes U and Omega coincide; with lambda = 0 a
  // spatially constant state stays constant and follows the scalar ODE
  // discretization exactly.
  ModelParams params;
  params.k_omega = 1.0;
  params.k_wall = 1.0;
  params.latent_l = 0.8;
  params.tau = 0.05;
  params.xi = 0.1;
  params.lambda_bc = 0.0;
  params.t_end = 1.0;
  Problem p = make_problem({1.0, 1.0, 0.0, 0.25}, params);
  StepperConfig cfg;
  cfg.dt = 2e-3;
  cfg.linsolve_tol = 1e-13;

  for (CubicMode mode : {CubicMode::kSemiImplicit, CubicMode::kExplicit}) {
    cfg.cubic_mode = mode;
    FieldState s = constant_state(p.ops, 0.0, 0.5);
    double u_ref = 0.0, phi_ref = 0.5;

    const FieldState one = step(s, cfg, params, p.ops, p.mesh, p.g);
    scalar_update(u_ref, phi_ref, cfg.dt, params, mode);
    CHECK((one.phi.array() - phi_ref).abs().maxCoeff() <= 1e-12);
    CHECK((one.u.array() - u_ref).abs().maxCoeff() <= 1e-12);

    // A few more steps keep tracking the scalar recursion.
    FieldState cur = one;
    for (int k = 0; k < 5; ++k) {
      cur = step(cur, cfg, params, p.ops, p.mesh, p.g);
      scalar_update(u_ref, phi_ref, cfg.dt, params, mode);
    }
    CHECK((cur.phi.array() - phi_ref).abs().maxCoeff() <= 1e-11);
    CHECK((cur.u.array() - u_ref).abs().maxCoeff() <= 1e-11);
  }
}

TEST_CASE("run takes exactly t_end / dt steps and fires hooks") {
  ModelParams params;
  params.tau = 0.02;
  params.xi = 0.1;
  params.t_end = 1e-2;
  Problem p = make_problem({0.6, 0.6, 0.1, 0.15}, params);
  StepperConfig cfg;
  cfg.dt = 1e-3;

  int hooks = 0;
  double last_t = -1.0;
  const FieldState final_state =
      run(constant_state(p.ops, 0.0, 1.0), cfg, params, p.ops, p.mesh, p.g,
          [&](const FieldState& s) {
            ++hooks;
            last_t = s.t;
          });
  CHECK(hooks == 10);
  CHECK(std::abs(final_state.t - params.t_end) <= 1e-9 * cfg.dt);
  CHECK(last_t == final_state.t);
}

TEST_CASE("truncated final step lands on t_end") {
  ModelParams params;
  params.tau = 0.02;
  params.xi = 0.1;
  params.t_end = 2.5e-3;
  Problem p = make_problem({0.6, 0.6, 0.1, 0.2}, params);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  int hooks = 0;
  const FieldState final_state = run(constant_state(p.ops, 0.0, 1.0), cfg,
                                     params, p.ops, p.mesh, p.g,
                                     [&](const FieldState&) { ++hooks; });
  CHECK(hooks == 3);
  CHECK(final_state.t == params.t_end);
}

TEST_CASE("equilibrium survives one hundred steps untouched") {
  ModelParams params;
  params.latent_l = 2.0;
  params.tau = 0.005;
  params.xi = 0.03;
  params.lambda_bc = 2.0;
  params.t_end = 0.1;
  Problem p = make_problem({0.8, 0.8, 0.1, 0.08}, params);
  StepperConfig cfg;
  cfg.dt = 1e-3;

  FieldState s = constant_state(p.ops, 0.0, 1.0);
  const FieldState final_state = run(s, cfg, params, p.ops, p.mesh, p.g);
  CHECK((final_state.u - s.u).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((final_state.phi - s.phi).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("non-finite state is rejected with the offending node") {
  ModelParams params;
  params.tau = 0.02;
  params.xi = 0.1;
  params.t_end = 1.0;
  Problem p = make_problem({0.6, 0.6, 0.1, 0.2}, params);
  StepperConfig cfg;

  FieldState s = constant_state(p.ops, 0.0, 1.0);
  s.phi[3] = std::numeric_limits<double>::quiet_NaN();
  try {
    step(s, cfg, params, p.ops, p.mesh, p.g);
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("node 3") != std::string::npos);
  }
}

TEST_CASE("stepping past t_end is a precondition violation") {
  ModelParams params;
  params.tau = 0.02;
  params.xi = 0.1;
  params.t_end = 1e-3;
  Problem p = make_problem({0.6, 0.6, 0.1, 0.2}, params);
  StepperConfig cfg;
  cfg.dt = 2e-3;
  CHECK_THROWS_AS(step(constant_state(p.ops, 0.0, 1.0), cfg, params, p.ops,
                       p.mesh, p.g),
                  std::invalid_argument);
}
