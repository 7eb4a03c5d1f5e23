#pragma once

#include <Eigen/SparseCholesky>
#include <vector>

#include "assembly.hpp"

namespace amp {

using Trajectory = std::vector<FieldState>;

/// Right-hand-side evaluator for the coupled semi-discrete system with
/// full mass matrices.  The block mass matrix is lower-triangular in the
/// chosen variable order (phi carries no u_t term), so a field evaluation
/// is two prefactorized mass solves: the phi system first, then u.
/// Deliberately avoids the PCG path used by the stepper.
class OdeSystem {
 public:
  OdeSystem(const AssembledOperators& ops, const ModelParams& params,
            const Mesh& mesh, const BoundaryData& g);

  void eval(double t, const Vec& u, const Vec& phi, Vec& u_dot,
            Vec& phi_dot) const;

  const AssembledOperators& ops() const { return ops_; }
  const ModelParams& params() const { return params_; }

 private:
  const AssembledOperators& ops_;
  const ModelParams& params_;
  const Mesh& mesh_;
  const BoundaryData& g_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> mass_u_llt_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> mass_o_llt_;
};

/// Classical 4-stage 4th-order integration with a fixed substep of at
/// most 1/substeps_per_unit_time, recording states on the uniform grid
/// with spacing record_dt (final interval truncated at params.t_end).
/// The recorded phi_dot is the discrete difference quotient between
/// consecutive records, mirroring the stepper's convention.  Throws on
/// non-finite state, reporting the time of failure.
Trajectory reference_integrate(const FieldState& initial,
                               double substeps_per_unit_time,
                               const ModelParams& params,
                               const AssembledOperators& ops, const Mesh& mesh,
                               const BoundaryData& g, double record_dt);

struct TrajectoryError {
  double max_l2_u = 0.0;    // sup over records of ||u_a - u_b||_{L2(U)}
  double max_h1_phi = 0.0;  // sup over records of ||phi_a - phi_b||_{H1(Omega)}
  double total() const { return max_l2_u + max_h1_phi; }
};

/// Sup-in-time discrete norms of the difference of two trajectories over
/// their common time grid.  If one trajectory is an integer refinement of
/// the other, the comparison runs on the coarser grid.  Throws when the
/// meshes (vector sizes) or time grids are incompatible.
TrajectoryError compare_trajectories(const Trajectory& a, const Trajectory& b,
                                     const AssembledOperators& ops);

}  // namespace amp
