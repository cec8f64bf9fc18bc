#pragma once

// The transfer operator dual to composition with the shift, relative to the
// Parry measure, acting exactly on locally constant functions.

#include <cstdint>

#include <Eigen/Dense>

#include "sftbound/measures.hpp"
#include "sftbound/sft.hpp"
#include "sftbound/spectral.hpp"

namespace sftb {

/// |f|_theta = max_n var_n(f) / theta^n, a finite max for depth-d functions.
double lip_seminorm(const LocallyConstantFunction& f, const MetricParams& params = {});

/// var_n(f) for n = 0..depth-1.
Eigen::VectorXd variations(const LocallyConstantFunction& f);

/// (Lf)(w) = sum_{i : A(i,w0)=1} u_i / (lambda u_{w0}) f(i w). Depth d maps to
/// depth max(d-1, 1).
LocallyConstantFunction transfer_apply(const LocallyConstantFunction& f, const PerronData& eig);

LocallyConstantFunction transfer_power(const LocallyConstantFunction& f, const PerronData& eig,
                                       int n);

/// Matrix of L on the depth-d word space (output re-embedded at depth d).
Eigen::MatrixXd transfer_matrix(const WordSpace& space, const PerronData& eig);

/// max |(Lf)(sigma x) - E_m(f | sigma^{-1} A)(x)| over depth-(d+1) words x,
/// with the conditional expectation computed from the fiber weights directly.
double conditional_expectation_check(const LocallyConstantFunction& f, const PerronData& eig);

/// f - integral(f, m).
LocallyConstantFunction centered(const LocallyConstantFunction& f, const MarkovMeasure& m);

enum class DecaySource { spectral, fitted };

/// Constants of |L^n g|_inf <= C rho^n |g|_theta for mean-zero g.
struct DecayEstimate {
  double C = 0.0;
  double rho = 0.0;
  DecaySource source = DecaySource::spectral;
  int depth = 1;
};

inline constexpr int kDecayHorizon = 50;

/// spectral: rho starts at the subdominant modulus of the depth-d transfer
/// matrix and C = max_{n <= 50} sup_g |L^n g|_inf / (rho^n |g|_theta) over all
/// mean-zero depth-d g. The sup is attained on set indicators, so it is
/// evaluated exactly as the largest total-variation row distance of L^n from
/// the Parry marginal. If L^n kills every mean-zero g within the horizon (true
/// modulus 0), rho is instead the rate minimising C / (1 - rho).
/// fitted: log-linear regression of sup-norm decay of seeded random probes.
DecayEstimate decay_estimate(const TransitionMatrix& a, const PerronData& eig, int depth,
                             DecaySource mode = DecaySource::spectral, std::uint64_t seed = 0);

/// Mean-zero probe basis: indicator of each depth-d cylinder minus its Parry mass.
std::vector<LocallyConstantFunction> cylinder_probes(const TransitionMatrix& a,
                                                     const PerronData& eig, int depth);

}  // namespace sftb
