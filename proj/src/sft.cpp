#include "sftbound/sft.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "sftbound/error.hpp"

namespace sftb {

namespace {

using BoolMatrix = std::vector<std::uint8_t>;

BoolMatrix bool_multiply(const BoolMatrix& x, const BoolMatrix& y, int s) {
  BoolMatrix out(x.size(), 0);
  for (int i = 0; i < s; ++i) {
    for (int k = 0; k < s; ++k) {
      if (!x[i * s + k]) continue;
      for (int j = 0; j < s; ++j) {
        out[i * s + j] |= y[k * s + j];
      }
    }
  }
  return out;
}

BoolMatrix bool_power(BoolMatrix base, long long exponent, int s) {
  BoolMatrix result(base.size(), 0);
  for (int i = 0; i < s; ++i) result[i * s + i] = 1;
  while (exponent > 0) {
    if (exponent & 1) result = bool_multiply(result, base, s);
    exponent >>= 1;
    if (exponent > 0) base = bool_multiply(base, base, s);
  }
  return result;
}

std::vector<std::vector<int>> successor_lists(const std::vector<std::uint8_t>& entries,
                                              int s) {
  std::vector<std::vector<int>> succ(s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (entries[i * s + j]) succ[i].push_back(j);
    }
  }
  return succ;
}

StructureReport compute_structure(const std::vector<std::uint8_t>& entries, int s) {
  StructureReport r;
  r.irreducible = is_strongly_connected(successor_lists(entries, s));
  // Wielandt: a primitive s x s matrix has A^n > 0 for every n >= s^2 - 2s + 2.
  const long long wielandt = static_cast<long long>(s) * s - 2LL * s + 2;
  const BoolMatrix p = bool_power(entries, wielandt, s);
  r.primitive = std::all_of(p.begin(), p.end(), [](std::uint8_t b) { return b != 0; });
  r.diagonal_ones = true;
  for (int i = 0; i < s; ++i) r.diagonal_ones = r.diagonal_ones && entries[i * s + i];
  return r;
}

}  // namespace

bool is_strongly_connected(const std::vector<std::vector<int>>& successors) {
  const std::size_t n = successors.size();
  if (n == 0) return false;
  auto reach_all = [n](const std::vector<std::vector<int>>& g) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : g[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n;
  };
  std::vector<std::vector<int>> reversed(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (int w : successors[v]) reversed[w].push_back(static_cast<int>(v));
  }
  return reach_all(successors) && reach_all(reversed);
}

TransitionMatrix::TransitionMatrix(int size, std::vector<std::uint8_t> entries)
    : size_(size), entries_(std::move(entries)), structure_(compute_structure(entries_, size_)) {}

TransitionMatrix TransitionMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const int s = static_cast<int>(rows.size());
  if (s < 2) throw InvalidMatrixError("transition matrix must have size s >= 2");
  std::vector<std::uint8_t> entries(static_cast<std::size_t>(s) * s);
  for (int i = 0; i < s; ++i) {
    if (static_cast<int>(rows[i].size()) != s) {
      throw InvalidMatrixError("transition matrix is not square (row " + std::to_string(i) +
                               " has " + std::to_string(rows[i].size()) + " entries)");
    }
    for (int j = 0; j < s; ++j) {
      const int e = rows[i][j];
      if (e != 0 && e != 1) {
        throw InvalidMatrixError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") = " + std::to_string(e) + " is not 0 or 1");
      }
      entries[i * s + j] = static_cast<std::uint8_t>(e);
    }
  }
  for (int i = 0; i < s; ++i) {
    bool row_any = false;
    bool col_any = false;
    for (int j = 0; j < s; ++j) {
      row_any = row_any || entries[i * s + j];
      col_any = col_any || entries[j * s + i];
    }
    if (!row_any) {
      throw DegenerateMatrixError("row " + std::to_string(i) +
                                  " is all zeros: symbol has no admissible successor");
    }
    if (!col_any) {
      throw DegenerateMatrixError("column " + std::to_string(i) +
                                  " is all zeros: symbol has no admissible predecessor");
    }
  }
  return TransitionMatrix(s, std::move(entries));
}

TransitionMatrix TransitionMatrix::full_shift(int s) {
  return from_rows(std::vector<std::vector<int>>(s, std::vector<int>(s, 1)));
}

Eigen::MatrixXd TransitionMatrix::dense() const {
  Eigen::MatrixXd m(size_, size_);
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) m(i, j) = allowed(i, j) ? 1.0 : 0.0;
  return m;
}

std::vector<std::vector<int>> TransitionMatrix::rows() const {
  std::vector<std::vector<int>> out(size_, std::vector<int>(size_));
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) out[i][j] = allowed(i, j) ? 1 : 0;
  return out;
}

StructureReport validate_structure(const TransitionMatrix& a) { return a.structure(); }

bool is_admissible(const TransitionMatrix& a, std::span<const Symbol> w) {
  if (w.empty()) return false;
  for (Symbol x : w) {
    if (x < 0 || x >= a.size()) return false;
  }
  for (std::size_t n = 0; n + 1 < w.size(); ++n) {
    if (!a.allowed(w[n], w[n + 1])) return false;
  }
  return true;
}

void require_admissible(const TransitionMatrix& a, std::span<const Symbol> w) {
  if (!is_admissible(a, w)) {
    throw DomainError("word '" + render_word(w, a.size()) + "' is not admissible");
  }
}

double count_words(const TransitionMatrix& a, int k) {
  if (k < 1) throw DomainError("word length must be >= 1");
  Eigen::VectorXd counts = Eigen::VectorXd::Ones(a.size());
  const Eigen::MatrixXd m = a.dense();
  for (int step = 1; step < k; ++step) counts = m * counts;
  return counts.sum();
}

std::vector<Word> enumerate_words(const TransitionMatrix& a, int k, double ceiling) {
  if (k < 1) throw DomainError("word length must be >= 1");
  const double total = count_words(a, k);
  if (total > ceiling) {
    std::ostringstream msg;
    msg << "enumerating " << total << " words of length " << k << " exceeds the ceiling of "
        << ceiling;
    throw CeilingError(msg.str());
  }
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(total));
  Word current;
  current.reserve(k);
  // Depth-first in symbol order yields lexicographic output.
  auto extend = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == k) {
      out.push_back(current);
      return;
    }
    for (Symbol j = 0; j < a.size(); ++j) {
      if (!current.empty() && !a.allowed(current.back(), j)) continue;
      current.push_back(j);
      self(self);
      current.pop_back();
    }
  };
  extend(extend);
  return out;
}

std::vector<Symbol> predecessors(const TransitionMatrix& a, Symbol j) {
  if (j < 0 || j >= a.size()) {
    throw DomainError("symbol " + std::to_string(j) + " outside alphabet of size " +
                      std::to_string(a.size()));
  }
  std::vector<Symbol> out;
  for (Symbol i = 0; i < a.size(); ++i) {
    if (a.allowed(i, j)) out.push_back(i);
  }
  return out;
}

MetricParams MetricParams::with_theta(double theta) {
  if (!(theta > 1.0) || !std::isfinite(theta)) {
    throw DomainError("theta must be a finite real > 1");
  }
  return MetricParams{theta};
}

double metric_distance(std::span<const Symbol> x, std::span<const Symbol> y,
                       const MetricParams& params) {
  if (x.size() != y.size()) throw DomainError("metric_distance: words differ in length");
  if (!(params.theta > 1.0)) throw DomainError("theta must be > 1");
  std::size_t t = 0;
  while (t < x.size() && x[t] == y[t]) ++t;
  return std::pow(params.theta, -static_cast<double>(t));
}

std::string render_word(std::span<const Symbol> w, int alphabet_size) {
  std::string out;
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (alphabet_size <= 10) {
      out.push_back(static_cast<char>('0' + w[n]));
    } else {
      if (n > 0) out.push_back('.');
      out += std::to_string(w[n]);
    }
  }
  return out;
}

Word parse_word(std::string_view text, int alphabet_size) {
  Word w;
  if (text.empty()) throw DomainError("empty word");
  auto check = [&](int v) {
    if (v < 0 || v >= alphabet_size) {
      throw DomainError("symbol " + std::to_string(v) + " outside alphabet of size " +
                        std::to_string(alphabet_size));
    }
    w.push_back(v);
  };
  if (alphabet_size <= 10) {
    for (char c : text) {
      if (c < '0' || c > '9') throw DomainError("bad symbol '" + std::string(1, c) + "' in word");
      check(c - '0');
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t dot = std::min(text.find('.', pos), text.size());
    int v = 0;
    const auto piece = text.substr(pos, dot - pos);
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc{} || ptr != piece.data() + piece.size() || piece.empty()) {
      throw DomainError("bad symbol '" + std::string(piece) + "' in word");
    }
    check(v);
    pos = dot + 1;
  }
  return w;
}

WordSpace::WordSpace(TransitionMatrix a, int depth, double ceiling)
    : matrix_(std::move(a)), depth_(depth), words_(enumerate_words(matrix_, depth, ceiling)) {}

std::shared_ptr<const WordSpace> WordSpace::make(const TransitionMatrix& a, int depth,
                                                 double ceiling) {
  return std::make_shared<const WordSpace>(a, depth, ceiling);
}

std::optional<std::size_t> WordSpace::find(std::span<const Symbol> w) const {
  if (static_cast<int>(w.size()) < depth_) return std::nullopt;
  const auto prefix = w.first(static_cast<std::size_t>(depth_));
  auto it = std::lower_bound(words_.begin(), words_.end(), prefix,
                             [](const Word& lhs, std::span<const Symbol> rhs) {
                               return std::lexicographical_compare(lhs.begin(), lhs.end(),
                                                                   rhs.begin(), rhs.end());
                             });
  if (it == words_.end() || !std::equal(it->begin(), it->end(), prefix.begin(), prefix.end())) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - words_.begin());
}

std::size_t WordSpace::index(std::span<const Symbol> w) const {
  if (auto i = find(w)) return *i;
  throw DomainError("word '" + render_word(w, matrix_.size()) +
                    "' is not an admissible word of depth " + std::to_string(depth_));
}

}  // namespace sftb
