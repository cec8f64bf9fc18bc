#pragma once

// Holes as forbidden cylinders: survivor subshifts via higher-block
// presentations, their entropy, and the resulting dimension bounds.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sftbound/measures.hpp"
#include "sftbound/sft.hpp"

namespace sftb {

/// A forbidden cylinder C(w) together with its symbolic radius and Parry mass.
struct HoleSpec {
  Word word;
  int depth = 0;
  double delta = 0.0;    // theta^{-|w|}
  double measure = 0.0;  // Parry measure of C(w)

  static HoleSpec make(const TransitionMatrix& a, const PerronData& eig, Word w,
                       const MetricParams& params = {});
};

/// k-block presentation of the shift with the hole states deleted.
struct PrunedSystem {
  int block_length = 0;
  std::vector<Word> forbidden;
  std::vector<Word> states;
  std::vector<std::vector<int>> successors;
  double survivor_lambda = 0.0;
  bool empty_survivor = false;

  Eigen::MatrixXd dense_matrix() const;
};

/// Refuses pruned presentations with more states than this.
inline constexpr double kPrunedStateCeiling = 1 << 17;

/// Spectral radius of a 0/1 graph, taken as the max over its strongly
/// connected components (Collatz-Wielandt bracketed power iteration on M + I).
double graph_spectral_radius(const std::vector<std::vector<int>>& successors);

PrunedSystem higher_block_prune(const TransitionMatrix& a, const Word& w);

/// Avoid every word in `forbidden` simultaneously. Block length is the longest
/// forbidden word (at least min_block_length); a state is deleted when it
/// begins with any forbidden word.
PrunedSystem prune_words(const TransitionMatrix& a, const std::vector<Word>& forbidden,
                         int min_block_length = 1);

/// log(survivor_lambda); -infinity for an empty survivor set.
double survivor_entropy(const PrunedSystem& ps);

/// dimM - (log_lambda - h) / log_Theta.
double dim_upper_bound(double h, double log_lambda, double dim_m, double log_theta);

/// a exp(n h - n log_lambda + n dimM log_Theta).
double cover_count(int n, double h, double log_lambda, double dim_m, double log_theta, double a);

/// Admissible words of length n containing no forbidden word as a factor, by
/// path counting in the pruned presentation (n >= block length).
double survivor_word_count(const PrunedSystem& ps, int n);

struct HoleRow {
  HoleSpec hole;
  double survivor_lambda = 0.0;
  double gap = 0.0;
  double per_hole_c = 0.0;
};

struct HoleFamilyReport {
  std::vector<HoleRow> rows;
  double fitted_c = 0.0;
  std::optional<Word> argmin;
  bool monotone = true;
  int monotonicity_checks = 0;
};

/// Every admissible hole word up to max_depth: gap, delta, Parry mass, and the
/// largest c with gap >= c delta^2 m^2 across the family.
HoleFamilyReport hole_family_scan(const TransitionMatrix& a, int max_depth,
                                  const MetricParams& params = {});

}  // namespace sftb
