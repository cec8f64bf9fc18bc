#pragma once

// Pinsker's inequality, the conditional-divergence form of the entropy gap,
// and certification of |int f dmu - int f dm| <= c |f|_theta (h_m - h_mu)^{1/2}.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sftbound/measures.hpp"
#include "sftbound/transfer.hpp"

namespace sftb {

/// sum_i q_i log(q_i / p_i), with 0 log(0/p) = 0. Throws when q_i > 0 = p_i.
double phi_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

struct PinskerResult {
  double l1 = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// ||q - p||_1 against sqrt(2 phi(q)), slack 1e-12.
PinskerResult pinsker_verify(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

struct GapIdentity {
  double lhs = 0.0;  // sum_j r_j phi(p^(j), q^(j))
  double rhs = 0.0;  // log(lambda) - h_mu
  double discrepancy = 0.0;
};

GapIdentity gap_identity_check(const MarkovMeasure& mu, const PerronData& eig);

/// log(lambda) - h_mu.
double entropy_gap(const MarkovMeasure& mu, const PerronData& eig);

struct StepBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// |int L^{n+1} f dmu - int L^n f dmu| <= sqrt(2) |L^n f|_inf sqrt(gap).
StepBound step_bound_verify(const LocallyConstantFunction& f, const MarkovMeasure& mu,
                            const PerronData& eig, int n, double slack = 1e-12);

struct BoundReport {
  double lhs = 0.0;
  double seminorm = 0.0;
  double gap = 0.0;
  double c_hat = 0.0;
  double bound = 0.0;
  /// lhs / (seminorm sqrt(gap)); empty when gap <= 1e-12 or seminorm == 0.
  std::optional<double> ratio;
  bool holds = false;
};

/// sqrt(2) C / (1 - rho).
double certified_constant(const DecayEstimate& decay);

/// Evaluates both sides of the effective bound with c_hat = sqrt(2) C/(1-rho).
/// Throws InvariantError when the entropy gap is below -1e-9.
BoundReport effective_bound_verify(const LocallyConstantFunction& f, const MarkovMeasure& mu,
                                   const PerronData& eig, const DecayEstimate& decay,
                                   const MetricParams& params = {}, double slack = 1e-9);

/// Exponent of lhs ~ gap^slope along mu_t with Q_t = (1-t) Q_parry + t Q_end.
struct ExponentFit {
  std::vector<double> t;
  std::vector<double> gap;
  std::vector<double> lhs;
  std::optional<double> slope;
};

ExponentFit exponent_fit(const LocallyConstantFunction& f, const MarkovMeasure& endpoint,
                         const PerronData& eig, const std::vector<double>& ts);

/// Default interpolation parameters: 12 log-spaced points in [1e-4, 1e-1].
std::vector<double> default_family_parameters();

struct ScanRow {
  int sample_id = 0;
  double concentration = 1.0;
  BoundReport report;
};

struct ScanSummary {
  std::vector<ScanRow> rows;
  std::optional<double> max_ratio;
  std::optional<int> argmax_sample;
  std::optional<double> slope;
  DecayEstimate decay;
  double c_hat = 0.0;
  bool all_hold = true;
  int violations = 0;
};

struct ScanOptions {
  int samples = 1000;
  std::uint64_t seed = 0;
  int depth = 2;
  MetricParams metric{};
  double slack = 1e-9;
  /// When set, every sample uses this f (and its depth) instead of a random one.
  std::optional<LocallyConstantFunction> function;
};

/// Seeded (mu, f) pairs: mu from sample_markov with concentrations cycling
/// through {0.5, 1, 5, 50}; f uniform in [-1,1] on depth-d words.
ScanSummary ratio_scan(const TransitionMatrix& a, const ScanOptions& opts);

}  // namespace sftb
