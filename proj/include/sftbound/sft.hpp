#pragma once

// One-sided subshifts of finite type: transition matrices, admissible words,
// the d_theta metric, and fixed-depth word spaces.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sftb {

using Symbol = int;
/// Finite word over the alphabet 0..s-1. Stands in for the cylinder it names.
using Word = std::vector<Symbol>;

/// Default cap on the number of words a single enumeration may produce.
inline constexpr double kDefaultWordCeiling = 1e7;

struct StructureReport {
  bool irreducible = false;
  bool primitive = false;
  bool diagonal_ones = false;
};

/// Square 0/1 matrix defining the shift. Construction validates entries and
/// rejects zero rows/columns; structural flags are computed once.
class TransitionMatrix {
 public:
  static TransitionMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static TransitionMatrix full_shift(int s);

  int size() const noexcept { return size_; }
  bool allowed(Symbol i, Symbol j) const {
    return entries_[static_cast<std::size_t>(i) * size_ + j] != 0;
  }
  const StructureReport& structure() const noexcept { return structure_; }
  bool irreducible() const noexcept { return structure_.irreducible; }
  bool primitive() const noexcept { return structure_.primitive; }
  bool diagonal_ones() const noexcept { return structure_.diagonal_ones; }

  Eigen::MatrixXd dense() const;
  std::vector<std::vector<int>> rows() const;

  friend bool operator==(const TransitionMatrix& a, const TransitionMatrix& b) {
    return a.size_ == b.size_ && a.entries_ == b.entries_;
  }

 private:
  TransitionMatrix(int size, std::vector<std::uint8_t> entries);

  int size_ = 0;
  std::vector<std::uint8_t> entries_;
  StructureReport structure_;
};

StructureReport validate_structure(const TransitionMatrix& a);

/// Strong connectivity of the directed graph i -> j when m(i,j) != 0.
bool is_strongly_connected(const std::vector<std::vector<int>>& successors);

bool is_admissible(const TransitionMatrix& a, std::span<const Symbol> w);
void require_admissible(const TransitionMatrix& a, std::span<const Symbol> w);

/// Number of admissible words of length k, as a floating count (sum of A^{k-1}).
double count_words(const TransitionMatrix& a, int k);

/// All admissible words of length k in lexicographic order.
std::vector<Word> enumerate_words(const TransitionMatrix& a, int k,
                                  double ceiling = kDefaultWordCeiling);

/// S_j = { i : A(i,j) = 1 }, ascending.
std::vector<Symbol> predecessors(const TransitionMatrix& a, Symbol j);

struct MetricParams {
  double theta = 2.0;

  static MetricParams with_theta(double theta);
};

/// d_theta(x,y) = theta^{-t}, t the length of the common prefix; identical
/// finite words get t = |x|.
double metric_distance(std::span<const Symbol> x, std::span<const Symbol> y,
                       const MetricParams& params);

/// Digits when the alphabet has at most ten symbols, dot-separated otherwise.
std::string render_word(std::span<const Symbol> w, int alphabet_size);
Word parse_word(std::string_view text, int alphabet_size);

/// The admissible words of a fixed depth, with index lookup. Functions of the
/// first `depth` coordinates are stored as value vectors over this space.
class WordSpace {
 public:
  WordSpace(TransitionMatrix a, int depth, double ceiling = kDefaultWordCeiling);

  static std::shared_ptr<const WordSpace> make(const TransitionMatrix& a, int depth,
                                               double ceiling = kDefaultWordCeiling);

  const TransitionMatrix& matrix() const noexcept { return matrix_; }
  int depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return words_.size(); }
  const Word& word(std::size_t i) const { return words_.at(i); }
  const std::vector<Word>& words() const noexcept { return words_; }

  /// Index of the word formed by the first `depth` symbols of w.
  std::optional<std::size_t> find(std::span<const Symbol> w) const;
  std::size_t index(std::span<const Symbol> w) const;

  bool same_as(const WordSpace& other) const {
    return depth_ == other.depth_ && matrix_ == other.matrix_;
  }

 private:
  TransitionMatrix matrix_;
  int depth_;
  std::vector<Word> words_;
};

}  // namespace sftb
