#include "doctest.h"

#include <Eigen/Dense>
#include <random>

#include "solver.hpp"

using namespace amp;
using Vec = Eigen::VectorXd;

namespace {

Eigen::SparseMatrix<double, Eigen::RowMajor> sparse_from_dense(
    const Eigen::MatrixXd& d) {
  Eigen::SparseMatrix<double, Eigen::RowMajor> s(d.rows(), d.cols());
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j)
      if (d(i, j) != 0.0) s.insert(i, j) = d(i, j);
  s.makeCompressed();
  return s;
}

}  // namespace

TEST_CASE("diagonal system solves exactly") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(5, 5);
  for (int i = 0; i < 5; ++i) d(i, i) = i + 1.0;
  const auto a = sparse_from_dense(d);
  Vec b(5);
  b << 1, 2, 3, 4, 5;
  const Vec x = solve_spd(a, b, 1e-12, 100);
  for (int i = 0; i < 5; ++i) CHECK(x[i] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero right-hand side yields exactly zero") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(4, 4);
  const auto a = sparse_from_dense(d);
  const Vec x = solve_spd(a, Vec::Zero(4), 1e-10, 10);
  CHECK(x.norm() == 0.0);
}

TEST_CASE("random SPD system matches a dense factorization") {
  std::mt19937 rng(123);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd r(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) r(i, j) = dist(rng);
  const Eigen::MatrixXd spd =
      r.transpose() * r + Eigen::MatrixXd::Identity(10, 10);
  Vec b(10);
  for (int i = 0; i < 10; ++i) b[i] = dist(rng);

  const Vec expected = Eigen::PartialPivLU<Eigen::MatrixXd>(spd).solve(b);
  const Vec x = solve_spd(sparse_from_dense(spd), b, 1e-12, 1000);
  CHECK((x - expected).norm() <= 1e-8 * expected.norm());
}

TEST_CASE("warm start at the solution returns it unchanged") {
  Eigen::MatrixXd d(3, 3);
  d << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  const auto a = sparse_from_dense(d);
  Vec x_true(3);
  x_true << 1, -2, 0.5;
  const Vec b = a * x_true;
  const Vec x = solve_spd(a, b, 1e-10, 100, &x_true);
  CHECK((x - x_true).norm() == 0.0);
}

TEST_CASE("iteration cap failure reports the achieved residual") {
  std::mt19937 rng(5);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd r(30, 30);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 30; ++j) r(i, j) = dist(rng);
  const Eigen::MatrixXd spd =
      r.transpose() * r + 1e-6 * Eigen::MatrixXd::Identity(30, 30);
  Vec b(30);
  for (int i = 0; i < 30; ++i) b[i] = dist(rng);
  try {
    solve_spd(sparse_from_dense(spd), b, 1e-14, 2);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.residual() > 0.0);
    CHECK(e.iterations() == 2);
  }
}

TEST_CASE("non-positive diagonal is rejected") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(3, 3);
  d(1, 1) = 0.0;
  CHECK_THROWS_AS(solve_spd(sparse_from_dense(d), Vec::Ones(3), 1e-10, 10),
                  std::invalid_argument);
}
