#pragma once

#include <Eigen/Sparse>
#include <stdexcept>
#include <string>

namespace amp {

/// Raised when an inner linear solve fails to converge.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Conjugate gradients with diagonal preconditioning for symmetric
/// positive definite systems.  Returns x with ||Ax-b||/||b|| <= tol;
/// b = 0 yields x = 0 exactly.  An optional initial guess that already
/// satisfies the tolerance is returned unchanged.
Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double, Eigen::RowMajor>& A,
                          const Eigen::VectorXd& b, double tol, int maxit,
                          const Eigen::VectorXd* x0 = nullptr);

}  // namespace amp
