#pragma once

// Piecewise-affine expanding Markov maps of the interval or circle, their
// symbolic coding, and dimension bounds for orbits avoiding a metric ball.

#include <optional>
#include <string>
#include <vector>

#include "sftbound/holes.hpp"
#include "sftbound/sft.hpp"

namespace sftb {

/// x -> slope * x + intercept on [lo, hi].
struct AffineBranch {
  double lo = 0.0;
  double hi = 0.0;
  double slope = 0.0;
  double intercept = 0.0;

  double apply(double x) const { return slope * x + intercept; }
  double inverse(double y) const { return (y - intercept) / slope; }
  double image_lo() const { return std::min(apply(lo), apply(hi)); }
  double image_hi() const { return std::max(apply(lo), apply(hi)); }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

class ExpandingModel {
 public:
  /// Sorts branches by domain, checks that the domains tile [0,1], that every
  /// |slope| > 1, and that each image is a union of partition intervals
  /// (endpoint tolerance 1e-12). Throws InputError naming the offending endpoint.
  static ExpandingModel build(std::vector<AffineBranch> branches, bool circle = false);

  /// "doubling", "triadic" (circle maps x -> kx mod 1) or "golden"
  /// (slope phi, second branch onto the first interval).
  static ExpandingModel preset(const std::string& name);

  int branch_count() const noexcept { return static_cast<int>(branches_.size()); }
  const std::vector<AffineBranch>& branches() const noexcept { return branches_; }
  const TransitionMatrix& transition() const noexcept { return transition_; }
  double theta0() const noexcept { return theta0_; }
  double Theta() const noexcept { return Theta_; }
  bool circle() const noexcept { return circle_; }
  Interval partition(int i) const { return {branches_.at(i).lo, branches_.at(i).hi}; }

  /// Distance on [0,1]; arc length when the model lives on the circle.
  double distance(double x, double y) const;

 private:
  ExpandingModel(std::vector<AffineBranch> branches, TransitionMatrix a, bool circle);

  std::vector<AffineBranch> branches_;
  TransitionMatrix transition_;
  double theta0_ = 0.0;
  double Theta_ = 0.0;
  bool circle_ = false;
};

struct CylinderInterval {
  Word word;
  Interval interval;
};

/// R(w) = intersection of T^{-j} R_{w_j}, by backward iteration of branch inverses.
CylinderInterval cylinder_interval(const ExpandingModel& model, const Word& w);

struct BallCover {
  int depth = 0;
  std::vector<Interval> ball;  // B(x0, delta) as disjoint pieces of [0,1]
  std::vector<Word> inner;     // cylinders inside the (closed) ball
  std::vector<Word> outer;     // cylinders meeting the open ball
  bool inner_empty = false;
};

/// Depth k = ceil(log(1/delta)/log theta0) + 1. Requires 0 < delta < 1/2.
BallCover ball_to_cylinders(const ExpandingModel& model, double x0, double delta);

struct DimensionReport {
  BallCover cover;
  double log_lambda = 0.0;
  double survivor_lambda = 0.0;
  double survivor_entropy = 0.0;  // upper bound h+ on the entropy of E(x0, delta)
  double dim_bound = 1.0;         // 1 - (log lambda - h+) / log Theta, floored at 0
  bool trivial = false;           // no inner cylinder: bound is dim M
  bool empty_survivor = false;
  double outer_measure = 0.0;     // Parry mass of the outer cover
  double inner_measure = 0.0;
  double fitted_c = 0.0;          // hole-family constant on the model's shift
  double gap_shape_bound = 1.0;     // 1 - fitted_c delta^2 m^2 / log Theta
};

DimensionReport exceptional_dimension_bound(const ExpandingModel& model, double x0,
                                            double delta);

/// Same bound for an explicit symbolic hole.
DimensionReport symbolic_hole_dimension_bound(const ExpandingModel& model,
                                              const std::vector<Word>& hole);

/// Direct box count: admissible n-words with no forbidden factor, counted by
/// depth-first enumeration; returns log N / (-log of the largest surviving
/// cylinder length).
struct BoxCount {
  double count = 0.0;
  double scale = 0.0;
  double dimension = 0.0;
};

BoxCount box_count_dimension(const ExpandingModel& model, const std::vector<Word>& hole, int n);

}  // namespace sftb
