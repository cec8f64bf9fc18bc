#include "sftbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "sftbound/error.hpp"

namespace sftb {

namespace {

struct PowerResult {
  double lambda;
  Eigen::VectorXd vector;
};

// A few extra steps past convergence shave the residual down to rounding
// level; keep the best iterate since rounding makes progress non-monotone.
PowerResult polish(const Eigen::MatrixXd& m, PowerResult best, double best_residual) {
  Eigen::VectorXd x = best.vector;
  int stalled = 0;
  for (int it = 0; it < 500 && stalled < 25; ++it) {
    x = m * x;
    x /= x.sum();
    const Eigen::VectorXd y = m * x;
    const double rq = x.dot(y) / x.dot(x);
    const double residual = (y - rq * x).cwiseAbs().maxCoeff() / (rq * x.maxCoeff());
    if (residual < best_residual) {
      best = {rq, x};
      best_residual = residual;
      stalled = 0;
    } else {
      ++stalled;
    }
  }
  return best;
}

PowerResult power_iterate(const Eigen::MatrixXd& m, const PowerIterationOptions& opts) {
  const Eigen::Index s = m.rows();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(s, 1.0 / static_cast<double>(s));
  double previous = 0.0;
  double residual = 0.0;
  for (long it = 0; it < opts.max_iter; ++it) {
    const Eigen::VectorXd y = m * x;
    const double rq = x.dot(y) / x.dot(x);
    residual = (y - rq * x).cwiseAbs().maxCoeff() / (rq * x.maxCoeff());
    const bool settled = it > 0 && std::abs(rq - previous) < opts.tol * std::max(1.0, rq);
    if (settled && residual <= 5e-13) return polish(m, {rq, x}, residual);
    previous = rq;
    x = y / y.sum();
  }
  throw ConvergenceError("power iteration did not converge within " +
                             std::to_string(opts.max_iter) + " iterations",
                         residual);
}

}  // namespace

PerronData perron_eigendata(const TransitionMatrix& a, PowerIterationOptions opts) {
  if (!(opts.tol > 0.0)) throw DomainError("tolerance must be positive");
  if (!a.primitive()) {
    throw NotPrimitiveError("transition matrix is not primitive; Perron data is not unique");
  }
  const Eigen::MatrixXd m = a.dense();
  const PowerResult right = power_iterate(m, opts);
  const PowerResult left = power_iterate(m.transpose(), opts);

  PerronData eig;
  eig.lambda = right.lambda;
  eig.v = right.vector / right.vector.sum();
  eig.u = left.vector / left.vector.dot(eig.v);
  const double res = perron_residual(m, eig);
  if (res > 1e-12) {
    throw ConvergenceError("Perron eigenvectors fail the residual check", res);
  }
  return eig;
}

double perron_residual(const Eigen::MatrixXd& m, const PerronData& eig) {
  const double right = (m * eig.v - eig.lambda * eig.v).cwiseAbs().maxCoeff() /
                       (eig.lambda * eig.v.cwiseAbs().maxCoeff());
  const Eigen::VectorXd ut = m.transpose() * eig.u;
  const double left =
      (ut - eig.lambda * eig.u).cwiseAbs().maxCoeff() / (eig.lambda * eig.u.cwiseAbs().maxCoeff());
  return std::max(left, right);
}

double subdominant_modulus(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DomainError("subdominant_modulus needs a square matrix");
  if (m.rows() <= 1) return 0.0;
  if (m.rows() > kEigensolverCeiling) {
    throw CeilingError("matrix of dimension " + std::to_string(m.rows()) +
                       " exceeds the eigensolver ceiling of " +
                       std::to_string(kEigensolverCeiling));
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigensolver failed", std::nan(""));
  }
  std::vector<double> moduli;
  moduli.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) moduli.push_back(std::abs(solver.eigenvalues()(i)));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return moduli[1];
}

}  // namespace sftb
