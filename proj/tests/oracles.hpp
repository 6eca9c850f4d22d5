#pragma once

// Independent reference computations shared by the unit and acceptance tests.
// None of these call into the code path they are used to check.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace infsup::oracle {

/// sup over f of dist_V(A^{-1} f, V_n) / ||f||_{V_s}, computed as the top eigenvalue of a
/// dense generalized eigenproblem in a basis rotated by `rotation` (orthogonal), so the
/// diagonal structure of the operator is not visible to the solver.
inline double gamma_brute_force(const std::vector<double>& lambda, double s, int n,
                                const Eigen::MatrixXd& rotation) {
  const Eigen::Index k = static_cast<Eigen::Index>(lambda.size());
  Eigen::VectorXd lam(k);
  Eigen::VectorXd lam_s(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    lam(i) = lambda[static_cast<std::size_t>(i)];
    lam_s(i) = std::pow(lam(i), s);
  }
  const Eigen::MatrixXd& q = rotation;
  const Eigen::MatrixXd a = q.transpose() * lam.asDiagonal() * q;  // form = V inner product
  const Eigen::MatrixXd d = q.transpose() * lam_s.asDiagonal() * q;
  const Eigen::MatrixXd e = q.transpose().leftCols(n);               // V_n embedding
  const Eigen::MatrixXd solve = a.inverse();                         // f -> u
  const Eigen::MatrixXd ge = a * e;
  const Eigen::MatrixXd proj_complement = a - ge * (e.transpose() * ge).inverse() * ge.transpose();
  Eigen::MatrixXd num = solve.transpose() * proj_complement * solve;
  num = 0.5 * (num + num.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(num, 0.5 * (d + d.transpose()),
                                                               Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace infsup::oracle
