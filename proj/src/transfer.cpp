#include "sftbound/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "sftbound/error.hpp"

namespace sftb {

namespace {

// Sup norms below this are rounding residue of functions that are exactly zero.
constexpr double kNumericalZero = 1e-14;

Word fiber_word(Symbol i, std::span<const Symbol> tail, int depth) {
  Word x;
  x.reserve(static_cast<std::size_t>(depth));
  x.push_back(i);
  for (int t = 0; t + 1 < depth; ++t) x.push_back(tail[static_cast<std::size_t>(t)]);
  return x;
}

double fiber_weight(const PerronData& eig, Symbol i, Symbol j) {
  return eig.u(i) / (eig.lambda * eig.u(j));
}

Eigen::VectorXd parry_masses(const WordSpace& space, const PerronData& eig) {
  const MarkovMeasure m = parry_from(space.matrix(), eig);
  Eigen::VectorXd out(static_cast<Eigen::Index>(space.size()));
  for (std::size_t i = 0; i < space.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = cylinder_measure(m, space.word(i));
  }
  return out;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxy / sxx;
}

}  // namespace

Eigen::VectorXd variations(const LocallyConstantFunction& f) {
  const auto& words = f.space().words();
  const auto& values = f.values();
  const int d = f.depth();
  Eigen::VectorXd var = Eigen::VectorXd::Zero(d);
  for (int n = 0; n < d; ++n) {
    // Words sharing an n-prefix are contiguous in lexicographic order.
    std::size_t start = 0;
    while (start < words.size()) {
      std::size_t end = start + 1;
      while (end < words.size() &&
             std::equal(words[start].begin(), words[start].begin() + n, words[end].begin())) {
        ++end;
      }
      const auto block = values.segment(static_cast<Eigen::Index>(start),
                                        static_cast<Eigen::Index>(end - start));
      var(n) = std::max(var(n), block.maxCoeff() - block.minCoeff());
      start = end;
    }
  }
  return var;
}

double lip_seminorm(const LocallyConstantFunction& f, const MetricParams& params) {
  if (!(params.theta > 1.0)) throw DomainError("theta must be > 1");
  const Eigen::VectorXd var = variations(f);
  double best = 0.0;
  for (Eigen::Index n = 0; n < var.size(); ++n) {
    best = std::max(best, var(n) / std::pow(params.theta, static_cast<double>(n)));
  }
  return best;
}

LocallyConstantFunction transfer_apply(const LocallyConstantFunction& f, const PerronData& eig) {
  const TransitionMatrix& a = f.space().matrix();
  const int d = f.depth();
  auto out_space = WordSpace::make(a, std::max(d - 1, 1));
  Eigen::VectorXd values(static_cast<Eigen::Index>(out_space->size()));
  for (std::size_t k = 0; k < out_space->size(); ++k) {
    const Word& w = out_space->word(k);
    double total = 0.0;
    for (Symbol i : predecessors(a, w[0])) {
      total += fiber_weight(eig, i, w[0]) * f(fiber_word(i, w, d));
    }
    values(static_cast<Eigen::Index>(k)) = total;
  }
  return {std::move(out_space), std::move(values)};
}

LocallyConstantFunction transfer_power(const LocallyConstantFunction& f, const PerronData& eig,
                                       int n) {
  if (n < 0) throw DomainError("transfer power must be >= 0");
  LocallyConstantFunction g = f;
  for (int k = 0; k < n; ++k) g = transfer_apply(g, eig);
  return g;
}

Eigen::MatrixXd transfer_matrix(const WordSpace& space, const PerronData& eig) {
  const TransitionMatrix& a = space.matrix();
  const int d = space.depth();
  const auto n = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t row = 0; row < space.size(); ++row) {
    const Word& w = space.word(row);
    for (Symbol i : predecessors(a, w[0])) {
      const std::size_t col = space.index(fiber_word(i, w, d));
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
          fiber_weight(eig, i, w[0]);
    }
  }
  return m;
}

double conditional_expectation_check(const LocallyConstantFunction& f, const PerronData& eig) {
  const TransitionMatrix& a = f.space().matrix();
  const int d = f.depth();
  const LocallyConstantFunction lf = transfer_apply(f, eig);
  double worst = 0.0;
  for (const Word& x : enumerate_words(a, d + 1)) {
    // E_m(f | sigma^{-1}A)(x): average of f over the fiber {(i, x1, x2, ...) : i in S_{x1}}.
    double expectation = 0.0;
    for (Symbol i = 0; i < a.size(); ++i) {
      if (!a.allowed(i, x[1])) continue;
      Word xi = x;
      xi[0] = i;
      expectation += f(xi) * eig.u(i) / (eig.lambda * eig.u(x[1]));
    }
    const double shifted = lf(std::span<const Symbol>(x).subspan(1));
    worst = std::max(worst, std::abs(shifted - expectation));
  }
  return worst;
}

LocallyConstantFunction centered(const LocallyConstantFunction& f, const MarkovMeasure& m) {
  return f.shifted(-integrate(f, m));
}

std::vector<LocallyConstantFunction> cylinder_probes(const TransitionMatrix& a,
                                                     const PerronData& eig, int depth) {
  auto space = WordSpace::make(a, depth);
  const Eigen::VectorXd mass = parry_masses(*space, eig);
  std::vector<LocallyConstantFunction> probes;
  probes.reserve(space->size());
  for (std::size_t k = 0; k < space->size(); ++k) {
    probes.push_back(LocallyConstantFunction::indicator(space, space->word(k))
                         .shifted(-mass(static_cast<Eigen::Index>(k))));
  }
  return probes;
}

DecayEstimate decay_estimate(const TransitionMatrix& a, const PerronData& eig, int depth,
                             DecaySource mode, std::uint64_t seed) {
  if (depth < 1) throw DomainError("decay depth must be >= 1");
  DecayEstimate est;
  est.source = mode;
  est.depth = depth;

  if (mode == DecaySource::spectral) {
    const auto space = WordSpace::make(a, depth);
    if (static_cast<int>(space->size()) > kEigensolverCeiling) {
      throw CeilingError("depth-" + std::to_string(depth) + " word space has " +
                         std::to_string(space->size()) +
                         " words, above the eigensolver ceiling of " +
                         std::to_string(kEigensolverCeiling));
    }
    const Eigen::MatrixXd m = transfer_matrix(*space, eig);
    est.rho = subdominant_modulus(m);
    if (!(est.rho < 1.0)) {
      throw InvariantError("transfer operator has no spectral gap (rho >= 1)");
    }
    const Eigen::VectorXd mass = parry_masses(*space, eig);
    const Eigen::Index n = m.rows();
    const Eigen::MatrixXd projector = Eigen::VectorXd::Ones(n) * mass.transpose();
    // L^n restricted to mean-zero functions is (L - 1 m^T)^n; iterating the
    // deflated matrix keeps the decay free of a rounding floor.
    const Eigen::MatrixXd deflated = m - projector;
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n) - projector;
    std::vector<double> tv(kDecayHorizon + 1);
    for (int step = 0; step <= kDecayHorizon; ++step) {
      tv[step] = 0.5 * power.cwiseAbs().rowwise().sum().maxCoeff();
      power = deflated * power;
    }
    // When the mean-zero part dies in finitely many steps the true modulus is
    // 0 and no finite C pairs with it (rounding leaves a tiny spurious rho).
    // Every rate then admits a constant, so take the one minimising C/(1-rho).
    const double rho0 = est.rho;
    auto constant_for = [&tv](double rate) {
      double c = 0.0;
      for (int step = 0; step <= kDecayHorizon; ++step) {
        if (tv[step] <= kNumericalZero) continue;
        const double scale = std::pow(rate, static_cast<double>(step));
        if (!(scale > 0.0)) return std::numeric_limits<double>::infinity();
        c = std::max(c, tv[step] / scale);
      }
      return c;
    };
    // An n x n nilpotent matrix satisfies N^n = 0.
    const bool nilpotent = tv[std::min<Eigen::Index>(n, kDecayHorizon)] <= kNumericalZero;
    const int grid = nilpotent ? 400 : 1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid; ++k) {
      const double rate = rho0 + (1.0 - rho0) * k / grid;
      const double c = constant_for(rate);
      const double cost = c / (1.0 - rate);
      if (cost < best_cost * (1.0 - 1e-9)) {
        best_cost = cost;
        est.rho = rate;
        est.C = c;
      }
    }
    if (!std::isfinite(best_cost)) {
      throw InvariantError("transfer powers decay slower than the spectral estimate");
    }
    return est;
  }

  // Fitted mode.
  const auto space = WordSpace::make(a, depth);
  const MarkovMeasure parry = parry_from(a, eig);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  constexpr int kProbes = 16;
  struct Trace {
    double seminorm;
    std::vector<double> sup;
  };
  std::vector<Trace> traces;
  for (int p = 0; p < kProbes; ++p) {
    Eigen::VectorXd values(static_cast<Eigen::Index>(space->size()));
    for (Eigen::Index k = 0; k < values.size(); ++k) values(k) = unif(rng);
    LocallyConstantFunction g = centered(LocallyConstantFunction(space, values), parry);
    Trace t{lip_seminorm(g), {}};
    if (!(t.seminorm > 0.0)) continue;
    for (int step = 0; step <= kDecayHorizon; ++step) {
      t.sup.push_back(g.sup_norm());
      g = transfer_apply(g, eig);
    }
    traces.push_back(std::move(t));
  }
  est.rho = 0.0;
  for (const auto& t : traces) {
    std::vector<double> xs, ys;
    for (int step = 1; step <= kDecayHorizon; ++step) {
      if (t.sup[step] > kNumericalZero * t.sup[0] && t.sup[step] > kNumericalZero) {
        xs.push_back(step);
        ys.push_back(std::log(t.sup[step]));
      }
    }
    if (xs.size() >= 2) est.rho = std::max(est.rho, std::exp(least_squares_slope(xs, ys)));
  }
  est.rho = std::min(est.rho, 1.0 - 1e-12);
  for (const auto& t : traces) {
    for (int step = 0; step <= kDecayHorizon; ++step) {
      if (t.sup[step] <= kNumericalZero) continue;
      const double scale = std::pow(est.rho, static_cast<double>(step));
      if (scale > 0.0) est.C = std::max(est.C, t.sup[step] / (scale * t.seminorm));
    }
  }
  return est;
}

}  // namespace sftb
