#include "sftbound/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sftbound/error.hpp"
#include "sftbound/spectral.hpp"

namespace sftb {

namespace {

constexpr double kEndpointTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kEndpointTol; }

TransitionMatrix induced_transition(const std::vector<AffineBranch>& branches) {
  const std::size_t s = branches.size();
  std::vector<double> endpoints{branches.front().lo};
  for (const auto& b : branches) endpoints.push_back(b.hi);

  std::vector<std::vector<int>> rows(s, std::vector<int>(s, 0));
  for (std::size_t i = 0; i < s; ++i) {
    const AffineBranch& b = branches[i];
    for (double y : {b.image_lo(), b.image_hi()}) {
      const bool on_grid =
          std::any_of(endpoints.begin(), endpoints.end(), [y](double e) { return near(e, y); });
      if (!on_grid) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "branch " << i << " maps its interval onto an image with endpoint " << y
            << ", which is not a partition endpoint (Markov property fails)";
        throw InputError(msg.str());
      }
    }
    for (std::size_t j = 0; j < s; ++j) {
      const bool covered = branches[j].lo >= b.image_lo() - kEndpointTol &&
                           branches[j].hi <= b.image_hi() + kEndpointTol;
      rows[i][j] = covered ? 1 : 0;
    }
  }
  return TransitionMatrix::from_rows(rows);
}

}  // namespace

ExpandingModel::ExpandingModel(std::vector<AffineBranch> branches, TransitionMatrix a, bool circle)
    : branches_(std::move(branches)), transition_(std::move(a)), circle_(circle) {
  theta0_ = std::numeric_limits<double>::infinity();
  Theta_ = 0.0;
  for (const auto& b : branches_) {
    theta0_ = std::min(theta0_, std::abs(b.slope));
    Theta_ = std::max(Theta_, std::abs(b.slope));
  }
}

ExpandingModel ExpandingModel::build(std::vector<AffineBranch> branches, bool circle) {
  if (branches.size() < 2) throw InputError("a model needs at least two branches");
  std::sort(branches.begin(), branches.end(),
            [](const AffineBranch& x, const AffineBranch& y) { return x.lo < y.lo; });
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const AffineBranch& b = branches[i];
    if (!(b.hi > b.lo)) throw InputError("branch " + std::to_string(i) + " has an empty domain");
    if (!(std::abs(b.slope) > 1.0) || !std::isfinite(b.slope) || !std::isfinite(b.intercept)) {
      throw InputError("branch " + std::to_string(i) + " is not expanding (|slope| must exceed 1)");
    }
    if (i + 1 < branches.size() && !near(b.hi, branches[i + 1].lo)) {
      throw InputError("branch domains do not tile [0,1] at branch " + std::to_string(i));
    }
    if (b.image_lo() < -kEndpointTol || b.image_hi() > 1.0 + kEndpointTol) {
      throw InputError("branch " + std::to_string(i) + " maps outside [0,1]");
    }
  }
  if (!near(branches.front().lo, 0.0) || !near(branches.back().hi, 1.0)) {
    throw InputError("branch domains must cover [0,1]");
  }
  TransitionMatrix a = induced_transition(branches);
  return ExpandingModel(std::move(branches), std::move(a), circle);
}

ExpandingModel ExpandingModel::preset(const std::string& name) {
  if (name == "doubling" || name == "triadic") {
    const int k = name == "doubling" ? 2 : 3;
    std::vector<AffineBranch> branches;
    for (int i = 0; i < k; ++i) {
      branches.push_back({static_cast<double>(i) / k, static_cast<double>(i + 1) / k,
                          static_cast<double>(k), -static_cast<double>(i)});
    }
    return build(std::move(branches), /*circle=*/true);
  }
  if (name == "golden") {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    return build({{0.0, 1.0 / phi, phi, 0.0}, {1.0 / phi, 1.0, phi, -1.0}}, /*circle=*/false);
  }
  throw InputError("unknown model preset '" + name + "' (expected doubling, triadic or golden)");
}

double ExpandingModel::distance(double x, double y) const {
  const double d = std::abs(x - y);
  return circle_ ? std::min(d, 1.0 - d) : d;
}

CylinderInterval cylinder_interval(const ExpandingModel& model, const Word& w) {
  require_admissible(model.transition(), w);
  Interval current = model.partition(w.back());
  for (std::size_t t = w.size() - 1; t-- > 0;) {
    const AffineBranch& b = model.branches()[static_cast<std::size_t>(w[t])];
    double lo = b.inverse(current.lo);
    double hi = b.inverse(current.hi);
    if (lo > hi) std::swap(lo, hi);
    current = {std::max(lo, b.lo), std::min(hi, b.hi)};
  }
  return {w, current};
}

BallCover ball_to_cylinders(const ExpandingModel& model, double x0, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw DomainError("delta must lie in (0, 1/2)");
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw DomainError("x0 must lie in [0,1]");
  BallCover cover;
  const double lo = x0 - delta;
  const double hi = x0 + delta;
  if (model.circle() && lo < 0.0) {
    cover.ball = {{0.0, hi}, {1.0 + lo, 1.0}};
  } else if (model.circle() && hi > 1.0) {
    cover.ball = {{0.0, hi - 1.0}, {lo, 1.0}};
  } else {
    cover.ball = {{std::max(0.0, lo), std::min(1.0, hi)}};
  }
  // The small offset keeps exact powers (delta = theta0^-j) from rounding up.
  cover.depth =
      static_cast<int>(std::ceil(std::log(1.0 / delta) / std::log(model.theta0()) - 1e-9)) + 1;
  if (count_words(model.transition(), cover.depth) > kPrunedStateCeiling) {
    throw CeilingError("delta too small: depth-" + std::to_string(cover.depth) +
                       " cylinders exceed the state ceiling");
  }
  for (Word& w : enumerate_words(model.transition(), cover.depth)) {
    const Interval j = cylinder_interval(model, w).interval;
    bool meets = false;
    bool inside = false;
    for (const Interval& p : cover.ball) {
      meets = meets || (j.lo < p.hi && j.hi > p.lo);
      inside = inside || (j.lo >= p.lo - kEndpointTol && j.hi <= p.hi + kEndpointTol);
    }
    if (inside) cover.inner.push_back(w);
    if (meets) cover.outer.push_back(std::move(w));
  }
  cover.inner_empty = cover.inner.empty();
  return cover;
}

namespace {

DimensionReport bound_from_hole(const ExpandingModel& model, const std::vector<Word>& hole,
                                double delta, double ball_mass) {
  const TransitionMatrix& a = model.transition();
  const PerronData eig = perron_eigendata(a);
  const MarkovMeasure parry = parry_from(a, eig);
  DimensionReport r;
  r.log_lambda = std::log(eig.lambda);
  const double log_theta = std::log(model.Theta());
  for (const Word& w : hole) r.inner_measure += cylinder_measure(parry, w);

  if (hole.empty()) {
    r.trivial = true;
    r.survivor_lambda = eig.lambda;
    r.survivor_entropy = r.log_lambda;
    r.dim_bound = 1.0;
  } else {
    const PrunedSystem ps = prune_words(a, hole);
    r.survivor_lambda = ps.survivor_lambda;
    r.empty_survivor = ps.empty_survivor;
    r.survivor_entropy = survivor_entropy(ps);
    r.dim_bound = ps.empty_survivor
                      ? 0.0
                      : std::max(0.0, dim_upper_bound(r.survivor_entropy, r.log_lambda, 1.0,
                                                      log_theta));
  }
  r.fitted_c = hole_family_scan(a, 3, MetricParams::with_theta(model.theta0())).fitted_c;
  r.outer_measure = ball_mass;
  r.gap_shape_bound = 1.0 - r.fitted_c * delta * delta * ball_mass * ball_mass / log_theta;
  return r;
}

}  // namespace

DimensionReport exceptional_dimension_bound(const ExpandingModel& model, double x0,
                                            double delta) {
  BallCover cover = ball_to_cylinders(model, x0, delta);
  const PerronData eig = perron_eigendata(model.transition());
  const MarkovMeasure parry = parry_from(model.transition(), eig);
  double outer = 0.0;
  for (const Word& w : cover.outer) outer += cylinder_measure(parry, w);

  // Avoiding the ball forces avoiding every inner cylinder, so pruning the
  // inner set bounds the survivor entropy from above.
  DimensionReport r = bound_from_hole(model, cover.inner, delta, outer);
  r.cover = std::move(cover);
  return r;
}

DimensionReport symbolic_hole_dimension_bound(const ExpandingModel& model,
                                              const std::vector<Word>& hole) {
  double delta = 1.0;
  for (const Word& w : hole) {
    delta = std::min(delta, std::pow(model.theta0(), -static_cast<double>(w.size())));
  }
  const PerronData eig = perron_eigendata(model.transition());
  const MarkovMeasure parry = parry_from(model.transition(), eig);
  double mass = 0.0;
  for (const Word& w : hole) mass += cylinder_measure(parry, w);
  return bound_from_hole(model, hole, delta, mass);
}

BoxCount box_count_dimension(const ExpandingModel& model, const std::vector<Word>& hole, int n) {
  if (n < 1) throw DomainError("box count depth must be >= 1");
  const TransitionMatrix& a = model.transition();
  for (const Word& w : hole) require_admissible(a, w);
  BoxCount out;
  double max_len = 0.0;
  Word current;
  current.reserve(static_cast<std::size_t>(n));
  auto hits_hole = [&]() {
    for (const Word& w : hole) {
      if (w.size() <= current.size() &&
          std::equal(w.rbegin(), w.rend(), current.rbegin())) {
        return true;
      }
    }
    return false;
  };
  // contraction = product of 1/|slope| over all symbols but the last.
  auto extend = [&](auto&& self, double contraction) -> void {
    if (static_cast<int>(current.size()) == n) {
      out.count += 1.0;
      const Interval last = model.partition(current.back());
      max_len = std::max(max_len, contraction * last.length());
      return;
    }
    for (Symbol j = 0; j < a.size(); ++j) {
      if (!current.empty() && !a.allowed(current.back(), j)) continue;
      const double next = current.empty()
                              ? 1.0
                              : contraction / std::abs(model.branches()[current.back()].slope);
      current.push_back(j);
      if (!hits_hole()) self(self, next);
      current.pop_back();
    }
  };
  extend(extend, 1.0);
  out.scale = max_len;
  out.dimension = out.count > 0.0 && max_len > 0.0 ? std::log(out.count) / -std::log(max_len) : 0.0;
  return out;
}

}  // namespace sftb
