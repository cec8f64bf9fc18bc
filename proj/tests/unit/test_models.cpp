#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "sftbound/error.hpp"
#include "sftbound/measures.hpp"
#include "sftbound/models.hpp"
#include "sftbound/spectral.hpp"

using namespace sftb;

namespace {

const double kDimGolden = std::log(oracle::kPhi) / std::log(2.0);

bool contains(const std::vector<Word>& ws, const Word& w) {
  return std::find(ws.begin(), ws.end(), w) != ws.end();
}

}  // namespace

TEST_CASE("presets") {
  const auto d = ExpandingModel::preset("doubling");
  CHECK(d.branch_count() == 2);
  CHECK(d.transition() == TransitionMatrix::full_shift(2));
  CHECK(d.theta0() == 2.0);
  CHECK(d.Theta() == 2.0);
  CHECK(d.circle());

  const auto t = ExpandingModel::preset("triadic");
  CHECK(t.transition() == TransitionMatrix::full_shift(3));
  CHECK(std::abs(perron_eigendata(t.transition()).lambda - 3.0) <= 1e-12);

  const auto g = ExpandingModel::preset("golden");
  CHECK(g.transition() == oracle::golden());
  CHECK_FALSE(g.circle());
  CHECK_THROWS_AS(ExpandingModel::preset("tent"), InputError);
}

TEST_CASE("golden-mean coding from branches onto [0,1] and onto the first interval") {
  const double phi = oracle::kPhi;
  // Second branch maps [1/phi, 1] onto R_0 = [0, 1/phi] only.
  const auto m = ExpandingModel::build({{0.0, 1 / phi, phi, 0.0}, {1 / phi, 1.0, phi, -1.0}});
  CHECK(m.transition() == oracle::golden());
}

TEST_CASE("non-Markov branches are rejected with the offending endpoint") {
  try {
    ExpandingModel::build({{0.0, 0.4, 2.5, 0.0}, {0.4, 1.0, 1.5, -0.6}});
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("0.9") != std::string::npos);
  }
  CHECK_THROWS_AS(ExpandingModel::build({{0.0, 0.5, 1.0, 0.0}, {0.5, 1.0, 2.0, -1.0}}), InputError);
  CHECK_THROWS_AS(ExpandingModel::build({{0.0, 0.4, 2.5, 0.0}, {0.5, 1.0, 2.0, -1.0}}), InputError);
}

TEST_CASE("cylinder_interval examples") {
  const auto d = ExpandingModel::preset("doubling");
  const auto c = cylinder_interval(d, Word{0, 1, 1});
  CHECK(c.interval.lo == doctest::Approx(0.375));
  CHECK(c.interval.hi == doctest::Approx(0.5));
  const auto c0 = cylinder_interval(d, Word{0});
  CHECK(c0.interval.lo == 0.0);
  CHECK(c0.interval.hi == 0.5);
  for (const auto& w : enumerate_words(d.transition(), 7)) {
    CHECK(std::abs(cylinder_interval(d, w).interval.length() - std::pow(2.0, -7)) <= 1e-15);
  }
  CHECK_THROWS_AS(cylinder_interval(ExpandingModel::preset("golden"), Word{1, 1}), InputError);
}

TEST_CASE("property: cylinder nesting and length bound") {
  for (const char* name : {"doubling", "triadic", "golden"}) {
    const auto m = ExpandingModel::preset(name);
    double max_part = 0.0;
    for (int i = 0; i < m.branch_count(); ++i) max_part = std::max(max_part, m.partition(i).length());
    for (int k = 1; k <= 5; ++k) {
      for (const auto& w : enumerate_words(m.transition(), k)) {
        const auto iv = cylinder_interval(m, w).interval;
        CHECK(iv.length() <= std::pow(m.theta0(), -(k - 1)) * max_part + 1e-12);
        if (k > 1) {
          const auto parent = cylinder_interval(m, Word(w.begin(), w.end() - 1)).interval;
          CHECK(iv.lo >= parent.lo - 1e-12);
          CHECK(iv.hi <= parent.hi + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("property: factor-map equivariance on doubling words up to depth 6") {
  const auto d = ExpandingModel::preset("doubling");
  for (int k = 2; k <= 6; ++k) {
    for (const auto& w : enumerate_words(d.transition(), k)) {
      const auto iv = cylinder_interval(d, w).interval;
      const auto& b = d.branches()[static_cast<std::size_t>(w[0])];
      const double lo = std::min(b.apply(iv.lo), b.apply(iv.hi));
      const double hi = std::max(b.apply(iv.lo), b.apply(iv.hi));
      const auto shifted = cylinder_interval(d, Word(w.begin() + 1, w.end())).interval;
      CHECK(lo <= shifted.lo + 1e-12);
      CHECK(hi >= shifted.hi - 1e-12);
    }
  }
}

TEST_CASE("property: Lebesgue measure of doubling cylinders equals the Parry measure") {
  const auto d = ExpandingModel::preset("doubling");
  const auto parry = parry_from(d.transition(), perron_eigendata(d.transition()));
  for (int k = 1; k <= 8; ++k) {
    for (const auto& w : enumerate_words(d.transition(), k)) {
      CHECK(std::abs(cylinder_interval(d, w).interval.length() - cylinder_measure(parry, w)) <= 1e-12);
    }
  }
}

TEST_CASE("ball_to_cylinders examples") {
  const auto d = ExpandingModel::preset("doubling");
  const auto cover = ball_to_cylinders(d, 0.0, 0.125);
  CHECK(cover.depth == 4);
  CHECK_FALSE(cover.inner_empty);
  const std::vector<Word> expected{{0, 0, 0, 0}, {0, 0, 0, 1}, {1, 1, 1, 0}, {1, 1, 1, 1}};
  CHECK(cover.outer == expected);
  CHECK(cover.inner == expected);

  CHECK_THROWS_AS(ball_to_cylinders(d, 0.2, 0.5), DomainError);
  CHECK_THROWS_AS(ball_to_cylinders(d, 1.2, 0.1), DomainError);

  const auto edge = ball_to_cylinders(d, 0.5, 0.1);
  bool left = false, right = false;
  for (const auto& w : edge.outer) (w[0] == 0 ? left : right) = true;
  CHECK(left);
  CHECK(right);
}

TEST_CASE("property: the cover sandwiches the ball") {
  for (const char* name : {"doubling", "triadic", "golden"}) {
    const auto m = ExpandingModel::preset(name);
    for (double x0 : {0.0, 0.13, 0.5, 0.71, 1.0}) {
      for (double delta : {0.3, 0.1, 0.04}) {
        const auto cover = ball_to_cylinders(m, x0, delta);
        for (const auto& w : cover.inner) CHECK(contains(cover.outer, w));
        // Inner cylinders lie in the closed ball.
        for (const auto& w : cover.inner) {
          const auto iv = cylinder_interval(m, w).interval;
          for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            CHECK(m.distance(iv.lo + t * iv.length(), x0) <= delta + 1e-12);
          }
        }
        // The outer cover contains every sample point of the open ball.
        for (int k = -99; k <= 99; ++k) {
          double x = x0 + delta * k / 100.0;
          if (m.circle()) x -= std::floor(x);
          if (x < 0.0 || x > 1.0) continue;
          bool covered = false;
          for (const auto& w : cover.outer) {
            const auto iv = cylinder_interval(m, w).interval;
            covered = covered || (x >= iv.lo - 1e-12 && x <= iv.hi + 1e-12);
          }
          CHECK(covered);
        }
      }
    }
  }
}

TEST_CASE("doubling map with hole 00") {
  const auto d = ExpandingModel::preset("doubling");
  const auto r = symbolic_hole_dimension_bound(d, {Word{0, 0}});
  CHECK(std::abs(r.survivor_lambda - oracle::kPhi) <= 1e-10);
  CHECK(std::abs(r.dim_bound - kDimGolden) <= 1e-9);
  CHECK(r.fitted_c > 0.0);
  const auto box = box_count_dimension(d, {Word{0, 0}}, 20);
  CHECK(std::abs(box.dimension - kDimGolden) <= 0.05);
  CHECK(box.count == doctest::Approx(17711.0));  // Fibonacci F(22)
}

TEST_CASE("dimension bound over a shrinking delta grid") {
  const auto d = ExpandingModel::preset("doubling");
  double previous = -1.0;
  for (int j = 0; j < 10; ++j) {
    const double delta = 0.4 * std::pow(2.0, -j);
    const auto r = exceptional_dimension_bound(d, 0.3, delta);
    CHECK(r.dim_bound >= previous - 1e-12);
    CHECK(r.dim_bound <= 1.0);
    CHECK(r.gap_shape_bound <= 1.0);
    previous = r.dim_bound;
  }
  CHECK(previous > 0.99);
}

TEST_CASE("a ball covering nearly everything collapses the bound") {
  const auto d = ExpandingModel::preset("doubling");
  const auto r = exceptional_dimension_bound(d, 0.5, 0.49);
  CHECK(r.dim_bound <= 0.05);
}

TEST_CASE("tiny balls give the trivial bound") {
  const auto g = ExpandingModel::preset("golden");
  const auto r = exceptional_dimension_bound(g, 0.3, 0.3);
  CHECK(r.dim_bound <= 1.0);
  const auto d = ExpandingModel::preset("doubling");
  // Radius below half a depth-k cylinder: no cylinder fits inside.
  const auto cover = ball_to_cylinders(d, 0.3, 0.001);
  if (cover.inner_empty) {
    const auto t = exceptional_dimension_bound(d, 0.3, 0.001);
    CHECK(t.trivial);
    CHECK(t.dim_bound == 1.0);
  }
}
