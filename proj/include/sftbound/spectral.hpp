#pragma once

#include <Eigen/Dense>

#include "sftbound/sft.hpp"

namespace sftb {

/// Perron root with strictly positive eigenvectors, normalized so that
/// sum(v) = 1 and u . v = 1.
struct PerronData {
  double lambda = 0.0;
  Eigen::VectorXd u;  // left:  u A = lambda u
  Eigen::VectorXd v;  // right: A v = lambda v
};

struct PowerIterationOptions {
  double tol = 1e-14;
  long max_iter = 1'000'000;
};

/// Power iteration on A and A^T from (1,...,1)/s. Throws NotPrimitiveError
/// before iterating and ConvergenceError when max_iter is exhausted.
PerronData perron_eigendata(const TransitionMatrix& a, PowerIterationOptions opts = {});

/// Largest componentwise residual of (uA - lambda u, Av - lambda v), relative
/// to lambda times the largest eigenvector entry.
double perron_residual(const Eigen::MatrixXd& m, const PerronData& eig);

/// Matrices above this dimension are refused by subdominant_modulus.
inline constexpr int kEigensolverCeiling = 64;

/// |lambda_2|: modulus of the second eigenvalue by modulus (full eigensolve).
double subdominant_modulus(const Eigen::MatrixXd& m);

}  // namespace sftb
