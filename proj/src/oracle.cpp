#include "oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace amp {

namespace {

void check_llt_residual(
    const Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>& llt,
    const Eigen::SparseMatrix<double>& m, const char* label) {
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(std::string("oracle: factorization of ") + label +
                             " failed");
  // Probe solve; the direct factorization must be far below the 1e-12
  // tolerance the evaluator promises.
  Vec b = Vec::LinSpaced(m.rows(), 1.0, 2.0);
  const Vec x = llt.solve(b);
  const double rel = (m * x - b).norm() / b.norm();
  if (!(rel <= 1e-12))
    throw std::runtime_error(std::string("oracle: mass solve for ") + label +
                             " misses tolerance, residual " +
                             std::to_string(rel));
}

}  // namespace

OdeSystem::OdeSystem(const AssembledOperators& ops, const ModelParams& params,
                     const Mesh& mesh, const BoundaryData& g)
    : ops_(ops), params_(params), mesh_(mesh), g_(g) {
  const Eigen::SparseMatrix<double> mass_u_cm(ops.mass_u);
  const Eigen::SparseMatrix<double> mass_o_cm(ops.mass_o);
  mass_u_llt_.compute(mass_u_cm);
  mass_o_llt_.compute(mass_o_cm);
  check_llt_residual(mass_u_llt_, mass_u_cm, "mass_u");
  check_llt_residual(mass_o_llt_, mass_o_cm, "mass_o");
}

void OdeSystem::eval(double t, const Vec& u, const Vec& phi, Vec& u_dot,
                     Vec& phi_dot) const {
  Vec rhs_phi = 2.0 * (ops_.couple_m * u) + 0.5 * (ops_.mass_o * phi) -
                (params_.xi * params_.xi) * (ops_.stiff_o * phi);
  if (params_.enable_cubic)
    rhs_phi -= 0.5 * ops_.lumped_mass_o.cwiseProduct(
                         phi.cwiseAbs2().cwiseProduct(phi));
  phi_dot = mass_o_llt_.solve(rhs_phi) / params_.tau;

  const Vec rhs_u = assemble_boundary_load(mesh_, params_, g_, t) -
                    0.5 * params_.latent_l * (ops_.couple_m.transpose() * phi_dot) -
                    ops_.stiff_u * u - params_.lambda_bc * (ops_.bmass_u * u);
  u_dot = mass_u_llt_.solve(rhs_u);
}

Trajectory reference_integrate(const FieldState& initial,
                               double substeps_per_unit_time,
                               const ModelParams& params,
                               const AssembledOperators& ops, const Mesh& mesh,
                               const BoundaryData& g, double record_dt) {
  if (!(substeps_per_unit_time > 0.0) || !(record_dt > 0.0))
    throw std::invalid_argument("reference_integrate: rates must be positive");
  params.require_valid();

  const OdeSystem sys(ops, params, mesh, g);
  Trajectory out;
  out.push_back(initial);

  Vec u = initial.u, phi = initial.phi;
  Vec k1u(ops.n_u), k1p(ops.n_o), k2u(ops.n_u), k2p(ops.n_o);
  Vec k3u(ops.n_u), k3p(ops.n_o), k4u(ops.n_u), k4p(ops.n_o);

  double t = initial.t;
  while (t < params.t_end - 1e-12 * record_dt) {
    const double interval = std::min(record_dt, params.t_end - t);
    const int n_sub = std::max(
        1, static_cast<int>(std::ceil(interval * substeps_per_unit_time - 1e-9)));
    const double h = interval / n_sub;
    const Vec phi_prev = phi;
    for (int s = 0; s < n_sub; ++s) {
      const double ts = t + s * h;
      sys.eval(ts, u, phi, k1u, k1p);
      sys.eval(ts + 0.5 * h, Vec(u + 0.5 * h * k1u), Vec(phi + 0.5 * h * k1p),
               k2u, k2p);
      sys.eval(ts + 0.5 * h, Vec(u + 0.5 * h * k2u), Vec(phi + 0.5 * h * k2p),
               k3u, k3p);
      sys.eval(ts + h, Vec(u + h * k3u), Vec(phi + h * k3p), k4u, k4p);
      u += (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
      phi += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      if (!u.allFinite() || !phi.allFinite()) {
        std::ostringstream os;
        os << "reference_integrate: state became non-finite at t = "
           << ts + h << " (substep " << h << " too coarse?)";
        throw std::runtime_error(os.str());
      }
    }
    t += interval;
    if (std::abs(t - params.t_end) <= 1e-9 * record_dt) t = params.t_end;
    FieldState rec;
    rec.t = t;
    rec.u = u;
    rec.phi = phi;
    rec.phi_dot = (phi - phi_prev) / interval;
    out.push_back(std::move(rec));
  }
  return out;
}

TrajectoryError compare_trajectories(const Trajectory& a, const Trajectory& b,
                                     const AssembledOperators& ops) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("compare_trajectories: empty trajectory");
  if (a.front().u.size() != b.front().u.size() ||
      a.front().phi.size() != b.front().phi.size())
    throw std::invalid_argument(
        "compare_trajectories: trajectories live on different meshes");

  // Compare on the coarser grid; the finer one must refine it evenly.
  const Trajectory& coarse = a.size() <= b.size() ? a : b;
  const Trajectory& fine = a.size() <= b.size() ? b : a;
  const std::size_t nc = coarse.size() - 1, nf = fine.size() - 1;
  if (nc == 0 || nf % nc != 0)
    throw std::invalid_argument(
        "compare_trajectories: time grids are not nested");
  const std::size_t stride = nf / nc;

  TrajectoryError err;
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    const FieldState& x = coarse[k];
    const FieldState& y = fine[k * stride];
    if (std::abs(x.t - y.t) > 1e-9 * (1.0 + std::abs(x.t)))
      throw std::invalid_argument(
          "compare_trajectories: time grids do not align");
    const Vec du = x.u - y.u;
    const Vec dp = x.phi - y.phi;
    err.max_l2_u =
        std::max(err.max_l2_u, std::sqrt(std::max(0.0, du.dot(ops.mass_u * du))));
    err.max_h1_phi = std::max(
        err.max_h1_phi,
        std::sqrt(std::max(0.0, dp.dot(ops.mass_o * dp) +
                                    dp.dot(ops.stiff_o * dp))));
  }
  return err;
}

}  // namespace amp
