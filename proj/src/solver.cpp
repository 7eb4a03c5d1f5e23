#include "solver.hpp"

#include <cmath>
#include <sstream>

namespace amp {

Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double, Eigen::RowMajor>& A,
                          const Eigen::VectorXd& b, double tol, int maxit,
                          const Eigen::VectorXd* x0) {
  using Vec = Eigen::VectorXd;
  const Eigen::Index n = A.rows();
  if (A.cols() != n || b.size() != n)
    throw std::invalid_argument("solve_spd: dimension mismatch");
  if (!(tol > 0.0 && tol < 1.0) || maxit < 1)
    throw std::invalid_argument("solve_spd: bad tolerance or iteration cap");

  const double bnorm = b.norm();
  if (bnorm == 0.0) return Vec::Zero(n);

  Vec inv_diag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = A.coeff(i, i);
    if (!(d > 0.0))
      throw std::invalid_argument(
          "solve_spd: non-positive diagonal entry at row " + std::to_string(i));
    inv_diag[i] = 1.0 / d;
  }

  Vec x = (x0 && x0->size() == n) ? *x0 : Vec::Zero(n);
  Vec r = b - A * x;
  if (r.norm() / bnorm <= tol) return x;

  Vec z = inv_diag.asDiagonal() * r;
  Vec p = z;
  double rz = r.dot(z);
  double rel = r.norm() / bnorm;
  for (int it = 1; it <= maxit; ++it) {
    const Vec Ap = A * p;
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0))
      throw SolverError("solve_spd: lost positive definiteness (p'Ap = " +
                            std::to_string(pAp) + ")",
                        rel, it);
    const double alpha = rz / pAp;
    x += alpha * p;
    r -= alpha * Ap;
    rel = r.norm() / bnorm;
    bool restarted = false;
    if (rel <= tol) {
      // Recurrence residual can drift; accept only a verified true residual.
      const double true_rel = (b - A * x).norm() / bnorm;
      if (true_rel <= tol) return x;
      r = b - A * x;
      rel = true_rel;
      restarted = true;
    }
    z = inv_diag.asDiagonal() * r;
    const double rz_next = r.dot(z);
    p = restarted ? z : Vec(z + (rz_next / rz) * p);
    rz = rz_next;
  }
  std::ostringstream os;
  os << "solve_spd: no convergence after " << maxit
     << " iterations, relative residual " << rel << " (tol " << tol << ")";
  throw SolverError(os.str(), rel, maxit);
}

}  // namespace amp
