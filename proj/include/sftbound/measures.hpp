#pragma once

// Markov measures on a subshift, the Parry measure, locally constant
// functions, entropy, and the conditional probability vectors along the
// fibers of the shift.

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "sftbound/sft.hpp"
#include "sftbound/spectral.hpp"

namespace sftb {

/// Stationary Markov measure (r, Q) supported on the graph of A.
class MarkovMeasure {
 public:
  /// Validates: r a probability vector, Q stochastic, Q(i,j) > 0 only where
  /// A(i,j) = 1, and rQ = r to 1e-12.
  static MarkovMeasure create(Eigen::VectorXd stationary, Eigen::MatrixXd transition,
                              TransitionMatrix support);

  const Eigen::VectorXd& stationary() const noexcept { return stationary_; }
  const Eigen::MatrixXd& transition() const noexcept { return transition_; }
  const TransitionMatrix& support() const noexcept { return support_; }
  int size() const noexcept { return support_.size(); }

 private:
  MarkovMeasure(Eigen::VectorXd r, Eigen::MatrixXd q, TransitionMatrix a)
      : stationary_(std::move(r)), transition_(std::move(q)), support_(std::move(a)) {}

  Eigen::VectorXd stationary_;
  Eigen::MatrixXd transition_;
  TransitionMatrix support_;
};

/// Real function of the first `depth` coordinates, one value per admissible
/// depth-word of the shared word space.
class LocallyConstantFunction {
 public:
  LocallyConstantFunction(std::shared_ptr<const WordSpace> space, Eigen::VectorXd values);

  static LocallyConstantFunction constant(std::shared_ptr<const WordSpace> space, double c);
  /// 1 on the cylinder C(w) (|w| <= depth), 0 elsewhere.
  static LocallyConstantFunction indicator(std::shared_ptr<const WordSpace> space,
                                           std::span<const Symbol> w);

  int depth() const noexcept { return space_->depth(); }
  const WordSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const WordSpace>& space_ptr() const noexcept { return space_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }

  /// f evaluated at any admissible word at least `depth` long.
  double operator()(std::span<const Symbol> w) const { return values_(space_->index(w)); }

  double sup_norm() const { return values_.cwiseAbs().maxCoeff(); }
  LocallyConstantFunction shifted(double c) const;
  /// Same function viewed as a function of more coordinates.
  LocallyConstantFunction lifted(int new_depth) const;

 private:
  std::shared_ptr<const WordSpace> space_;
  Eigen::VectorXd values_;
};

/// iota = log(lambda) + g(sigma x) - g(x) with g(y) = log u_{y0}.
struct InformationCoboundary {
  double log_lambda = 0.0;
  Eigen::VectorXd g_values;

  static InformationCoboundary from(const PerronData& eig);
  /// iota as a depth-2 function.
  LocallyConstantFunction as_function(const TransitionMatrix& a) const;
};

MarkovMeasure parry_from(const TransitionMatrix& a, const PerronData& eig);

/// r_{w0} prod Q(w_t, w_{t+1}). Inadmissible words are rejected.
double cylinder_measure(const MarkovMeasure& mu, std::span<const Symbol> w);

/// Closed form u_{w0} v_{wk} / lambda^k for the Parry measure.
double parry_cylinder_closed_form(const PerronData& eig, std::span<const Symbol> w);

/// Kolmogorov-Sinai entropy in nats: -sum_ij r_i Q_ij log Q_ij.
double entropy(const MarkovMeasure& mu);

double integrate(const LocallyConstantFunction& f, const MarkovMeasure& mu);

/// Integral of iota against mu; equals log(lambda) for every stationary mu.
double information_mean(const MarkovMeasure& mu, const PerronData& eig);

/// Conditional distributions of x0 given the future, on the fiber x1 = j.
struct ConditionalVectors {
  std::vector<Symbol> support;  // S_j
  Eigen::VectorXd parry;        // u_i / (lambda u_j)
  Eigen::VectorXd markov;       // r_i Q(i,j) / r_j
};

ConditionalVectors conditional_vectors(const MarkovMeasure& mu, const PerronData& eig, Symbol j);

/// Stationary vector of a stochastic matrix (power iteration on the lazy chain
/// (Q + I)/2, seeded by a direct solve).
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& q);

/// Random Markov measure on A: each row of Q is symmetric-Dirichlet over the
/// allowed entries. Deterministic in (A, seed, concentration).
MarkovMeasure sample_markov(const TransitionMatrix& a, std::uint64_t seed,
                            double concentration = 1.0);

/// Markov measure with the given transition matrix and its stationary vector.
MarkovMeasure markov_from_transition(const TransitionMatrix& a, const Eigen::MatrixXd& q);

/// Max-norm distance between (r,Q) pairs.
double measure_distance(const MarkovMeasure& a, const MarkovMeasure& b);

}  // namespace sftb
