#include "sftbound/holes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "sftbound/error.hpp"

namespace sftb {

namespace {

/// Tarjan's algorithm, iterative. Returns a component id per vertex.
std::vector<int> strongly_connected_components(const std::vector<std::vector<int>>& g,
                                               int& count) {
  const int n = static_cast<int>(g.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;
  int next_index = 0;
  count = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge < g[v].size()) {
        const int w = g[v][edge++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

double component_radius(const std::vector<std::vector<int>>& g, const std::vector<int>& members,
                        const std::vector<int>& comp, int id) {
  const std::size_t n = members.size();
  std::vector<int> local(g.size(), -1);
  for (std::size_t k = 0; k < n; ++k) local[members[k]] = static_cast<int>(k);
  std::vector<std::vector<int>> sub(n);
  bool has_edge = false;
  for (std::size_t k = 0; k < n; ++k) {
    for (int w : g[members[k]]) {
      if (comp[w] == id) {
        sub[k].push_back(local[w]);
        has_edge = true;
      }
    }
  }
  if (!has_edge) return 0.0;

  // M + I is primitive on an irreducible component; the Collatz-Wielandt
  // quotients min/max (Mx)_i/x_i bracket its spectral radius.
  std::vector<double> x(n, 1.0), y(n);
  double lower = 0.0, upper = 0.0;
  constexpr long kMaxIter = 2'000'000;
  for (long it = 0; it < kMaxIter; ++it) {
    for (std::size_t k = 0; k < n; ++k) {
      double acc = x[k];
      for (int w : sub[k]) acc += x[w];
      y[k] = acc;
    }
    lower = std::numeric_limits<double>::infinity();
    upper = 0.0;
    double norm = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double q = y[k] / x[k];
      lower = std::min(lower, q);
      upper = std::max(upper, q);
      norm = std::max(norm, y[k]);
    }
    if (upper - lower <= 1e-14 * upper) break;
    for (std::size_t k = 0; k < n; ++k) x[k] = y[k] / norm;
    if (it + 1 == kMaxIter) {
      throw ConvergenceError("spectral radius iteration did not converge", upper - lower);
    }
  }
  return 0.5 * (lower + upper) - 1.0;
}

}  // namespace

HoleSpec HoleSpec::make(const TransitionMatrix& a, const PerronData& eig, Word w,
                        const MetricParams& params) {
  require_admissible(a, w);
  HoleSpec h;
  h.depth = static_cast<int>(w.size());
  h.delta = std::pow(params.theta, -static_cast<double>(h.depth));
  h.measure = cylinder_measure(parry_from(a, eig), w);
  h.word = std::move(w);
  return h;
}

Eigen::MatrixXd PrunedSystem::dense_matrix() const {
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t v = 0; v < successors.size(); ++v) {
    for (int w : successors[v]) m(static_cast<Eigen::Index>(v), w) = 1.0;
  }
  return m;
}

double graph_spectral_radius(const std::vector<std::vector<int>>& successors) {
  int count = 0;
  const std::vector<int> comp = strongly_connected_components(successors, count);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(count));
  for (std::size_t v = 0; v < comp.size(); ++v) members[comp[v]].push_back(static_cast<int>(v));
  double radius = 0.0;
  for (int id = 0; id < count; ++id) {
    radius = std::max(radius, component_radius(successors, members[id], comp, id));
  }
  return radius;
}

PrunedSystem prune_words(const TransitionMatrix& a, const std::vector<Word>& forbidden,
                         int min_block_length) {
  if (min_block_length < 1) throw DomainError("block length must be >= 1");
  int k = min_block_length;
  for (const Word& w : forbidden) {
    require_admissible(a, w);
    k = std::max(k, static_cast<int>(w.size()));
  }
  if (count_words(a, k) > kPrunedStateCeiling) {
    throw CeilingError("higher-block presentation at block length " + std::to_string(k) +
                       " exceeds the state ceiling");
  }
  PrunedSystem ps;
  ps.block_length = k;
  ps.forbidden = forbidden;
  for (Word& x : enumerate_words(a, k)) {
    const bool hit = std::any_of(forbidden.begin(), forbidden.end(), [&](const Word& w) {
      return std::equal(w.begin(), w.end(), x.begin());
    });
    if (!hit) ps.states.push_back(std::move(x));
  }
  // States stay in lexicographic order, so successors are found by binary search.
  ps.successors.resize(ps.states.size());
  Word next(static_cast<std::size_t>(k));
  for (std::size_t v = 0; v < ps.states.size(); ++v) {
    const Word& x = ps.states[v];
    std::copy(x.begin() + 1, x.end(), next.begin());
    for (Symbol j = 0; j < a.size(); ++j) {
      if (!a.allowed(x.back(), j)) continue;
      next.back() = j;
      auto it = std::lower_bound(ps.states.begin(), ps.states.end(), next);
      if (it != ps.states.end() && *it == next) {
        ps.successors[v].push_back(static_cast<int>(it - ps.states.begin()));
      }
    }
  }
  ps.survivor_lambda = ps.states.empty() ? 0.0 : graph_spectral_radius(ps.successors);
  ps.empty_survivor = !(ps.survivor_lambda > 0.0);
  return ps;
}

PrunedSystem higher_block_prune(const TransitionMatrix& a, const Word& w) {
  if (w.empty()) throw DomainError("hole word must be nonempty");
  return prune_words(a, {w});
}

double survivor_entropy(const PrunedSystem& ps) {
  if (ps.empty_survivor) return -std::numeric_limits<double>::infinity();
  return std::log(ps.survivor_lambda);
}

double dim_upper_bound(double h, double log_lambda, double dim_m, double log_theta) {
  if (!(log_theta > 0.0)) throw DomainError("log Theta must be positive");
  if (h > log_lambda + 1e-12 * std::max(1.0, std::abs(log_lambda))) {
    throw DomainError("survivor entropy exceeds log(lambda)");
  }
  return dim_m - (log_lambda - std::min(h, log_lambda)) / log_theta;
}

double cover_count(int n, double h, double log_lambda, double dim_m, double log_theta, double a) {
  if (n < 1) throw DomainError("cover_count needs n >= 1");
  if (!(a > 0.0)) throw DomainError("cover_count needs a > 0");
  const double nn = static_cast<double>(n);
  return a * std::exp(nn * h - nn * log_lambda + nn * dim_m * log_theta);
}

double survivor_word_count(const PrunedSystem& ps, int n) {
  if (n < ps.block_length) {
    throw DomainError("survivor_word_count needs n >= block length " +
                      std::to_string(ps.block_length));
  }
  // A path spells a word whose last k-1 windows are truncated; short forbidden
  // words may still sit inside the final state, so weed those out up front.
  std::vector<double> counts(ps.states.size()), next(ps.states.size());
  for (std::size_t v = 0; v < ps.states.size(); ++v) {
    const Word& x = ps.states[v];
    bool clean = true;
    for (std::size_t start = 1; start < x.size() && clean; ++start) {
      for (const Word& f : ps.forbidden) {
        if (f.size() <= x.size() - start && std::equal(f.begin(), f.end(), x.begin() + static_cast<long>(start))) {
          clean = false;
          break;
        }
      }
    }
    counts[v] = clean ? 1.0 : 0.0;
  }
  for (int step = ps.block_length; step < n; ++step) {
    for (std::size_t v = 0; v < counts.size(); ++v) {
      double acc = 0.0;
      for (int w : ps.successors[v]) acc += counts[w];
      next[v] = acc;
    }
    counts.swap(next);
  }
  double total = 0.0;
  for (double c : counts) total += c;
  return total;
}

HoleFamilyReport hole_family_scan(const TransitionMatrix& a, int max_depth,
                                  const MetricParams& params) {
  if (max_depth < 1) throw DomainError("max hole depth must be >= 1");
  const PerronData eig = perron_eigendata(a);
  const double log_lambda = std::log(eig.lambda);
  HoleFamilyReport report;
  std::map<Word, double> lambda_of;
  report.fitted_c = std::numeric_limits<double>::infinity();
  for (int depth = 1; depth <= max_depth; ++depth) {
    for (Word& w : enumerate_words(a, depth)) {
      HoleRow row;
      const PrunedSystem ps = higher_block_prune(a, w);
      row.hole = HoleSpec::make(a, eig, std::move(w), params);
      row.survivor_lambda = ps.survivor_lambda;
      row.gap = log_lambda - survivor_entropy(ps);
      const double scale = row.hole.delta * row.hole.delta * row.hole.measure * row.hole.measure;
      row.per_hole_c = row.gap / scale;
      if (row.per_hole_c < report.fitted_c) {
        report.fitted_c = row.per_hole_c;
        report.argmin = row.hole.word;
      }
      lambda_of[row.hole.word] = row.survivor_lambda;
      report.rows.push_back(std::move(row));
    }
  }
  // Avoiding a longer word is easier: extensions never lose survivor entropy.
  for (const auto& [w, lam] : lambda_of) {
    if (static_cast<int>(w.size()) >= max_depth) continue;
    Word ext = w;
    ext.push_back(0);
    for (Symbol i = 0; i < a.size(); ++i) {
      if (!a.allowed(w.back(), i)) continue;
      ext.back() = i;
      ++report.monotonicity_checks;
      if (lambda_of.at(ext) < lam - 1e-10) report.monotone = false;
    }
  }
  return report;
}

}  // namespace sftb
