#include "sftbound/bounds.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "sftbound/error.hpp"

namespace sftb {

namespace {

void require_probability(const Eigen::VectorXd& x, const char* name) {
  if (x.size() == 0 || !x.allFinite() || x.minCoeff() < 0.0 || std::abs(x.sum() - 1.0) > 1e-9) {
    throw DomainError(std::string(name) + " is not a probability vector");
  }
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
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

double phi_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size()) throw DomainError("phi_divergence: vectors differ in length");
  require_probability(p, "p");
  require_probability(q, "q");
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (q(i) == 0.0) continue;
    if (p(i) == 0.0) {
      throw DomainError("phi_divergence: q has mass where p vanishes (divergence is infinite)");
    }
    total += q(i) * std::log(q(i) / p(i));
  }
  return std::max(total, 0.0);
}

PinskerResult pinsker_verify(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  PinskerResult r;
  const double phi = phi_divergence(p, q);
  r.l1 = (q - p).cwiseAbs().sum();
  r.bound = std::sqrt(2.0 * phi);
  r.holds = r.l1 <= r.bound + 1e-12;
  return r;
}

double entropy_gap(const MarkovMeasure& mu, const PerronData& eig) {
  return std::log(eig.lambda) - entropy(mu);
}

GapIdentity gap_identity_check(const MarkovMeasure& mu, const PerronData& eig) {
  GapIdentity g;
  for (Symbol j = 0; j < mu.size(); ++j) {
    const double rj = mu.stationary()(j);
    if (!(rj > 0.0)) continue;
    const ConditionalVectors cv = conditional_vectors(mu, eig, j);
    g.lhs += rj * phi_divergence(cv.parry, cv.markov);
  }
  g.rhs = entropy_gap(mu, eig);
  g.discrepancy = std::abs(g.lhs - g.rhs);
  return g;
}

StepBound step_bound_verify(const LocallyConstantFunction& f, const MarkovMeasure& mu,
                            const PerronData& eig, int n, double slack) {
  const LocallyConstantFunction fn = transfer_power(f, eig, n);
  const LocallyConstantFunction next = transfer_apply(fn, eig);
  StepBound s;
  s.lhs = std::abs(integrate(next, mu) - integrate(fn, mu));
  s.rhs = std::sqrt(2.0) * fn.sup_norm() * std::sqrt(std::max(entropy_gap(mu, eig), 0.0));
  s.holds = s.lhs <= s.rhs + slack;
  return s;
}

double certified_constant(const DecayEstimate& decay) {
  if (!(decay.rho < 1.0) || decay.rho < 0.0) throw DomainError("decay rate must lie in [0,1)");
  return std::sqrt(2.0) * decay.C / (1.0 - decay.rho);
}

BoundReport effective_bound_verify(const LocallyConstantFunction& f, const MarkovMeasure& mu,
                                   const PerronData& eig, const DecayEstimate& decay,
                                   const MetricParams& params, double slack) {
  BoundReport r;
  r.gap = entropy_gap(mu, eig);
  if (r.gap < -1e-9) {
    throw InvariantError("measure entropy exceeds log(lambda) by " + std::to_string(-r.gap));
  }
  const MarkovMeasure parry = parry_from(mu.support(), eig);
  // Centering does not change the difference of integrals.
  const LocallyConstantFunction fc = centered(f, parry);
  r.lhs = std::abs(integrate(fc, mu));
  r.seminorm = lip_seminorm(f, params);
  r.c_hat = certified_constant(decay);
  r.bound = r.c_hat * r.seminorm * std::sqrt(std::max(r.gap, 0.0));
  r.holds = r.lhs <= r.bound + slack;
  if (r.gap > 1e-12 && r.seminorm > 0.0) r.ratio = r.lhs / (r.seminorm * std::sqrt(r.gap));
  return r;
}

std::vector<double> default_family_parameters() {
  std::vector<double> ts;
  constexpr int kPoints = 12;
  for (int k = 0; k < kPoints; ++k) {
    ts.push_back(std::pow(10.0, -1.0 - 3.0 * k / (kPoints - 1)));
  }
  return ts;
}

ExponentFit exponent_fit(const LocallyConstantFunction& f, const MarkovMeasure& endpoint,
                         const PerronData& eig, const std::vector<double>& ts) {
  const TransitionMatrix& a = endpoint.support();
  const MarkovMeasure parry = parry_from(a, eig);
  const LocallyConstantFunction fc = centered(f, parry);
  ExponentFit fit;
  std::vector<double> lx, ly;
  for (double t : ts) {
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("family parameter must lie in (0,1]");
    const Eigen::MatrixXd q = (1.0 - t) * parry.transition() + t * endpoint.transition();
    const MarkovMeasure mu = markov_from_transition(a, q);
    const double gap = entropy_gap(mu, eig);
    const double lhs = std::abs(integrate(fc, mu));
    fit.t.push_back(t);
    fit.gap.push_back(gap);
    fit.lhs.push_back(lhs);
    if (gap > 1e-12 && lhs > 0.0) {
      lx.push_back(std::log(gap));
      ly.push_back(std::log(lhs));
    }
  }
  if (lx.size() >= 2) fit.slope = fit_slope(lx, ly);
  return fit;
}

ScanSummary ratio_scan(const TransitionMatrix& a, const ScanOptions& opts) {
  if (opts.samples < 1) throw DomainError("samples must be >= 1");
  constexpr std::array<double, 4> kConcentrations{0.5, 1.0, 5.0, 50.0};

  if (opts.function && !(opts.function->space().matrix() == a)) {
    throw DomainError("scan function lives on a different subshift");
  }
  const int depth = opts.function ? opts.function->depth() : opts.depth;
  const PerronData eig = perron_eigendata(a);
  ScanSummary out;
  out.decay = decay_estimate(a, eig, depth, DecaySource::spectral);
  out.c_hat = certified_constant(out.decay);
  const auto space = opts.function ? opts.function->space_ptr() : WordSpace::make(a, depth);

  std::mt19937_64 master(opts.seed);
  std::vector<std::uint64_t> seeds(2 * static_cast<std::size_t>(opts.samples));
  for (auto& s : seeds) s = master();

  out.rows.resize(static_cast<std::size_t>(opts.samples));
  std::optional<LocallyConstantFunction> first_f;
  std::optional<MarkovMeasure> first_mu;
  for (int i = 0; i < opts.samples; ++i) {
    const double conc = kConcentrations[static_cast<std::size_t>(i) % kConcentrations.size()];
    const MarkovMeasure mu = sample_markov(a, seeds[2 * i], conc);
    std::mt19937_64 frng(seeds[2 * i + 1]);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::VectorXd values(static_cast<Eigen::Index>(space->size()));
    for (Eigen::Index k = 0; k < values.size(); ++k) values(k) = unif(frng);
    const LocallyConstantFunction f = opts.function ? *opts.function
                                                    : LocallyConstantFunction(space, values);

    ScanRow& row = out.rows[static_cast<std::size_t>(i)];
    row.sample_id = i;
    row.concentration = conc;
    row.report = effective_bound_verify(f, mu, eig, out.decay, opts.metric, opts.slack);
    if (i == 0) {
      first_f = f;
      first_mu = mu;
    }
  }
  for (const auto& row : out.rows) {
    if (!row.report.holds) {
      out.all_hold = false;
      ++out.violations;
    }
    if (row.report.ratio && (!out.max_ratio || *row.report.ratio > *out.max_ratio)) {
      out.max_ratio = row.report.ratio;
      out.argmax_sample = row.sample_id;
    }
  }
  out.slope = exponent_fit(*first_f, *first_mu, eig, default_family_parameters()).slope;
  return out;
}

}  // namespace sftb
