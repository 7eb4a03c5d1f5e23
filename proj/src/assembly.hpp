#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>

#include "geometry.hpp"

namespace amp {

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;

/// Scaled physical and model constants.
struct ModelParams {
  double k_omega = 1.0;    // heat conductivity in the medium
  double k_wall = 1.0;     // heat conductivity in the wall
  double latent_l = 1.0;   // scaled specific latent heat
  double tau = 1.0;        // phase relaxation time
  double xi = 0.1;         // interface length scale
  double lambda_bc = 1.0;  // overall boundary heat conductivity
  double t_end = 1.0;      // final time

  // Test hook: drops the phi^3 term from the phase equation, leaving a
  // linear system.  Production configs never touch this.
  bool enable_cubic = true;

  std::vector<std::string> validate() const;
  void require_valid() const;  // throws std::invalid_argument
};

/// Exterior temperature applied through the Robin condition on the outer
/// boundary.  Must be evaluable for every boundary position and t in
/// [0, t_end].
struct BoundaryData {
  std::function<double(double x, double y, double t)> g;
};

/// Sparse matrices and index sizes realizing the weak forms over the
/// piecewise-linear nodal basis.  All element integrals of the bilinear
/// forms use exact quadrature.
struct AssembledOperators {
  SpMat mass_u;        // ∫_U  z_i z_j
  SpMat stiff_u;       // ∫_U  k ∇z_i·∇z_j  (k piecewise medium/wall)
  SpMat stiff_u_unit;  // ∫_U  ∇z_i·∇z_j    (unweighted, norm monitor)
  SpMat bmass_u;       // ∫_∂U z_i z_j
  SpMat mass_o;        // ∫_Ω  w_i w_j
  SpMat stiff_o;       // ∫_Ω  ∇w_i·∇w_j
  SpMat couple_m;      // M_ij = ∫_Ω w_i z_j   (n_o rows, n_u cols)
  Vec lumped_mass_o;   // row sums of mass_o (nodal measures on Omega)
  int n_u = 0;
  int n_o = 0;
};

/// Temperature/phase nodal vectors at one time instant.
struct FieldState {
  double t = 0.0;
  Vec u;        // length n_u
  Vec phi;      // length n_o
  Vec phi_dot;  // most recent discrete (phi^{n+1}-phi^n)/dt; zero before
                // the first step
};

AssembledOperators assemble_operators(const Mesh& mesh,
                                      const ModelParams& params);

/// lambda * ∫_∂U g(.,t) z_i, edgewise 2-point Gauss quadrature (exact for
/// linear traces).  Throws if g returns a non-finite value, naming the
/// offending position and time.
Vec assemble_boundary_load(const Mesh& mesh, const ModelParams& params,
                           const BoundaryData& g, double t);

/// L2(U) projection of u0 and H1(Omega) projection of phi0 onto the nodal
/// space.  Right-hand sides integrate the nodal interpolants, so data
/// already in the space projects to itself exactly.  Inner solves reach
/// relative residual <= 1e-10.
FieldState project_initial_data(const Mesh& mesh,
                                const AssembledOperators& ops,
                                const std::function<double(double, double)>& u0,
                                const std::function<double(double, double)>& phi0);

/// Debugging dump: one `row col value` line per stored entry.
void dump_coordinate_text(std::ostream& os, const SpMat& m);

}  // namespace amp
