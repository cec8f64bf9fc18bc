#include "sftbound/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sftbound/error.hpp"

namespace sftb {

namespace {

constexpr double kMeasureTol = 1e-12;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

MarkovMeasure MarkovMeasure::create(Eigen::VectorXd stationary, Eigen::MatrixXd transition,
                                    TransitionMatrix support) {
  const int s = support.size();
  if (stationary.size() != s || transition.rows() != s || transition.cols() != s) {
    throw DomainError("measure dimensions do not match the transition matrix of size " +
                      std::to_string(s));
  }
  if (!stationary.allFinite() || !transition.allFinite()) {
    throw DomainError("measure contains non-finite values");
  }
  if (stationary.minCoeff() < -kMeasureTol || std::abs(stationary.sum() - 1.0) > kMeasureTol) {
    throw DomainError("stationary vector is not a probability vector");
  }
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      const double q = transition(i, j);
      if (q < -kMeasureTol) throw DomainError("transition matrix has a negative entry");
      if (q > 0.0 && !support.allowed(i, j)) {
        throw DomainError("transition (" + std::to_string(i) + "," + std::to_string(j) +
                          ") has positive probability but is not allowed by A");
      }
    }
    if (std::abs(transition.row(i).sum() - 1.0) > kMeasureTol) {
      throw DomainError("row " + std::to_string(i) + " of the transition matrix does not sum to 1");
    }
  }
  const Eigen::RowVectorXd drift = stationary.transpose() * transition - stationary.transpose();
  if (drift.cwiseAbs().maxCoeff() > kMeasureTol) {
    throw DomainError("stationary vector is not invariant under the transition matrix");
  }
  stationary = stationary.cwiseMax(0.0);
  transition = transition.cwiseMax(0.0);
  return MarkovMeasure(std::move(stationary), std::move(transition), std::move(support));
}

LocallyConstantFunction::LocallyConstantFunction(std::shared_ptr<const WordSpace> space,
                                                 Eigen::VectorXd values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw DomainError("function needs a word space");
  if (static_cast<std::size_t>(values_.size()) != space_->size()) {
    throw DomainError("function has " + std::to_string(values_.size()) + " values but depth " +
                      std::to_string(space_->depth()) + " has " +
                      std::to_string(space_->size()) + " admissible words");
  }
}

LocallyConstantFunction LocallyConstantFunction::constant(std::shared_ptr<const WordSpace> space,
                                                          double c) {
  const auto n = static_cast<Eigen::Index>(space->size());
  return {std::move(space), Eigen::VectorXd::Constant(n, c)};
}

LocallyConstantFunction LocallyConstantFunction::indicator(std::shared_ptr<const WordSpace> space,
                                                           std::span<const Symbol> w) {
  require_admissible(space->matrix(), w);
  if (static_cast<int>(w.size()) > space->depth()) {
    throw DomainError("indicator word is longer than the function depth");
  }
  Eigen::VectorXd values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space->size()));
  for (std::size_t i = 0; i < space->size(); ++i) {
    const Word& x = space->word(i);
    if (std::equal(w.begin(), w.end(), x.begin())) values(static_cast<Eigen::Index>(i)) = 1.0;
  }
  return {std::move(space), std::move(values)};
}

LocallyConstantFunction LocallyConstantFunction::shifted(double c) const {
  return {space_, (values_.array() + c).matrix()};
}

LocallyConstantFunction LocallyConstantFunction::lifted(int new_depth) const {
  if (new_depth < depth()) throw DomainError("cannot lift a function to a smaller depth");
  if (new_depth == depth()) return *this;
  auto space = WordSpace::make(space_->matrix(), new_depth);
  Eigen::VectorXd values(static_cast<Eigen::Index>(space->size()));
  for (std::size_t i = 0; i < space->size(); ++i) {
    values(static_cast<Eigen::Index>(i)) = (*this)(space->word(i));
  }
  return {std::move(space), std::move(values)};
}

InformationCoboundary InformationCoboundary::from(const PerronData& eig) {
  return {std::log(eig.lambda), eig.u.array().log().matrix()};
}

LocallyConstantFunction InformationCoboundary::as_function(const TransitionMatrix& a) const {
  auto space = WordSpace::make(a, 2);
  Eigen::VectorXd values(static_cast<Eigen::Index>(space->size()));
  for (std::size_t i = 0; i < space->size(); ++i) {
    const Word& x = space->word(i);
    values(static_cast<Eigen::Index>(i)) = log_lambda + g_values(x[1]) - g_values(x[0]);
  }
  return {std::move(space), std::move(values)};
}

MarkovMeasure parry_from(const TransitionMatrix& a, const PerronData& eig) {
  const int s = a.size();
  if (eig.u.size() != s || eig.v.size() != s) {
    throw DomainError("Perron data does not match the transition matrix");
  }
  Eigen::VectorXd r = eig.u.cwiseProduct(eig.v);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (a.allowed(i, j)) q(i, j) = eig.v(j) / (eig.lambda * eig.v(i));
    }
  }
  return MarkovMeasure::create(std::move(r), std::move(q), a);
}

double cylinder_measure(const MarkovMeasure& mu, std::span<const Symbol> w) {
  require_admissible(mu.support(), w);
  double m = mu.stationary()(w[0]);
  for (std::size_t t = 0; t + 1 < w.size(); ++t) m *= mu.transition()(w[t], w[t + 1]);
  return m;
}

double parry_cylinder_closed_form(const PerronData& eig, std::span<const Symbol> w) {
  if (w.empty()) throw DomainError("empty word");
  const auto k = static_cast<double>(w.size() - 1);
  return eig.u(w.front()) * eig.v(w.back()) / std::pow(eig.lambda, k);
}

double entropy(const MarkovMeasure& mu) {
  const auto& r = mu.stationary();
  const auto& q = mu.transition();
  double h = 0.0;
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < q.cols(); ++j) row += xlogx(q(i, j));
    h -= r(i) * row;
  }
  return std::max(h, 0.0);
}

double integrate(const LocallyConstantFunction& f, const MarkovMeasure& mu) {
  if (!(f.space().matrix() == mu.support())) {
    throw DomainError("function and measure live on different subshifts");
  }
  double total = 0.0;
  const auto& words = f.space().words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    total += f.values()(static_cast<Eigen::Index>(i)) * cylinder_measure(mu, words[i]);
  }
  return total;
}

double information_mean(const MarkovMeasure& mu, const PerronData& eig) {
  const auto iota = InformationCoboundary::from(eig).as_function(mu.support());
  return integrate(iota, mu);
}

ConditionalVectors conditional_vectors(const MarkovMeasure& mu, const PerronData& eig, Symbol j) {
  ConditionalVectors out;
  out.support = predecessors(mu.support(), j);
  const double rj = mu.stationary()(j);
  if (!(rj > 0.0)) {
    throw DomainError("symbol " + std::to_string(j) +
                      " has zero stationary mass; the conditional measure is undefined");
  }
  const auto n = static_cast<Eigen::Index>(out.support.size());
  out.parry.resize(n);
  out.markov.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Symbol i = out.support[static_cast<std::size_t>(k)];
    out.parry(k) = eig.u(i) / (eig.lambda * eig.u(j));
    out.markov(k) = mu.stationary()(i) * mu.transition()(i, j) / rj;
  }
  return out;
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& q) {
  const Eigen::Index s = q.rows();
  Eigen::MatrixXd system = q.transpose() - Eigen::MatrixXd::Identity(s, s);
  system.row(s - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s);
  rhs(s - 1) = 1.0;
  Eigen::VectorXd r = system.fullPivLu().solve(rhs);
  if (!r.allFinite() || r.minCoeff() < -1e-9) r = Eigen::VectorXd::Constant(s, 1.0 / s);
  r = r.cwiseMax(0.0);
  r /= r.sum();

  const Eigen::MatrixXd lazy_t = 0.5 * (q.transpose() + Eigen::MatrixXd::Identity(s, s));
  for (int it = 0; it < 200'000; ++it) {
    const Eigen::VectorXd drift = q.transpose() * r - r;
    if (drift.cwiseAbs().maxCoeff() <= 1e-15) break;
    r = lazy_t * r;
    r /= r.sum();
  }
  return r;
}

MarkovMeasure markov_from_transition(const TransitionMatrix& a, const Eigen::MatrixXd& q) {
  return MarkovMeasure::create(stationary_distribution(q), q, a);
}

MarkovMeasure sample_markov(const TransitionMatrix& a, std::uint64_t seed, double concentration) {
  if (!(concentration > 0.0) || !std::isfinite(concentration)) {
    throw DomainError("Dirichlet concentration must be a positive finite real");
  }
  const int s = a.size();
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(concentration, 1.0);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(s, s);
  for (int i = 0; i < s; ++i) {
    double total = 0.0;
    for (int j = 0; j < s; ++j) {
      if (!a.allowed(i, j)) continue;
      q(i, j) = gamma(rng);
      total += q(i, j);
    }
    if (total > 0.0) {
      q.row(i) /= total;
    } else {
      // Every draw underflowed; fall back to the uniform row.
      for (int j = 0; j < s; ++j) q(i, j) = a.allowed(i, j) ? 1.0 : 0.0;
      q.row(i) /= q.row(i).sum();
    }
  }
  return markov_from_transition(a, q);
}

double measure_distance(const MarkovMeasure& a, const MarkovMeasure& b) {
  return std::max((a.stationary() - b.stationary()).cwiseAbs().maxCoeff(),
                  (a.transition() - b.transition()).cwiseAbs().maxCoeff());
}

}  // namespace sftb
