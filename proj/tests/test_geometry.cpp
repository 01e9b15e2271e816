#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <doctest.h>

#include "coco/errors.hpp"
#include "coco/geometry.hpp"
#include "coco/rng.hpp"

using namespace coco;

namespace {

bool throws_code(const std::function<void()>& fn, const std::string& code) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code() == code;
  }
  return false;
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Brute-force projection oracle: scan a grid over the 2-simplex (t, 1 - t).
Point grid_project_simplex2(const Point& p, double step) {
  Point best{0.0, 0.0};
  double best_dist = std::numeric_limits<double>::infinity();
  for (double t = 0.0; t <= 1.0 + 1e-12; t += step) {
    const Point candidate{t, 1.0 - t};
    const double d = distance(candidate, p);
    if (d < best_dist) {
      best_dist = d;
      best = candidate;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("set construction pins diameters to the geometry") {
  CHECK(DecisionSet::simplex(3).diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK(DecisionSet::box({0.0, 0.0}, {1.0, 1.0}).diameter() ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(DecisionSet::ball({0.0, 0.0}, 1.5).diameter() == doctest::Approx(3.0));
  CHECK(throws_code([] { DecisionSet::box({1.0}, {0.0}); }, "bad-config"));
}

TEST_CASE("projection returns feasible points unchanged") {
  const DecisionSet simplex2 = DecisionSet::simplex(2);
  const Point kept = project(simplex2, Point{0.2, 0.8});
  CHECK(kept[0] == doctest::Approx(0.2));
  CHECK(kept[1] == doctest::Approx(0.8));

  const DecisionSet simplex3 = DecisionSet::simplex(3);
  const Point symmetric = project(simplex3, Point{0.5, 0.5, 0.5});
  for (double x : symmetric) CHECK(x == doctest::Approx(1.0 / 3));
}

TEST_CASE("simplex projection matches the grid oracle") {
  // Frozen case: (2, 0) lands on the vertex (1, 0).
  const DecisionSet simplex2 = DecisionSet::simplex(2);
  const Point vertex = project(simplex2, Point{2.0, 0.0});
  CHECK(vertex[0] == doctest::Approx(1.0));
  CHECK(vertex[1] == doctest::Approx(0.0));

  for (int trial = 0; trial < 100; ++trial) {
    const Point p{rng::uniform_in(-1.0, 2.0, 51, trial, 0),
                  rng::uniform_in(-1.0, 2.0, 51, trial, 1)};
    const Point analytic = project(simplex2, p);
    const Point gridded = grid_project_simplex2(p, 1e-4);
    CHECK(std::abs(distance(analytic, p) - distance(gridded, p)) < 2e-4);
  }
}

TEST_CASE("projection is idempotent") {
  const DecisionSet sets[] = {DecisionSet::simplex(4),
                              DecisionSet::box({-1.0, 0.0}, {1.0, 2.0}),
                              DecisionSet::ball({0.5, -0.5}, 1.2)};
  for (const DecisionSet& set : sets) {
    for (int trial = 0; trial < 200; ++trial) {
      Point p(static_cast<std::size_t>(set.dimension()));
      for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = rng::uniform_in(-3.0, 3.0, 52, trial, i);
      }
      const Point once = project(set, p);
      const Point twice = project(set, once);
      CHECK(distance(once, twice) < 1e-12);
      CHECK(set.contains(once, 1e-9));
    }
  }
}

TEST_CASE("projection is optimal against random feasible points") {
  const DecisionSet sets[] = {DecisionSet::simplex(3),
                              DecisionSet::box({0.0, 0.0}, {1.0, 1.0}),
                              DecisionSet::ball({0.0, 0.0}, 1.0)};
  for (const DecisionSet& set : sets) {
    for (int trial = 0; trial < 1000; ++trial) {
      Point p(static_cast<std::size_t>(set.dimension()));
      for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = rng::uniform_in(-2.0, 2.0, 53, trial, i);
      }
      const Point projected = project(set, p);
      for (int inner = 0; inner < 100; ++inner) {
        const Point feasible =
            sample_point(set, 54, static_cast<std::uint64_t>(trial), inner);
        CHECK(distance(projected, p) <= distance(feasible, p) + 1e-6);
      }
    }
  }
}

TEST_CASE("simplex projection preserves coordinate order") {
  const DecisionSet simplex = DecisionSet::simplex(5);
  for (int trial = 0; trial < 300; ++trial) {
    Point p(5);
    for (std::size_t i = 0; i < 5; ++i) {
      p[i] = rng::uniform_in(-2.0, 2.0, 55, trial, i);
    }
    const Point projected = project(simplex, p);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        if (p[i] >= p[j]) CHECK(projected[i] >= projected[j] - 1e-12);
      }
    }
  }
}

TEST_CASE("oracle sets project through the supplied routine or refuse") {
  const DecisionSet with_projection = DecisionSet::oracle(
      1, 1.0, {0.0}, {1.0},
      [](std::span<const double> x) { return x[0] >= 0.0 && x[0] <= 1.0; },
      [](std::span<const double> x) {
        return Point{std::clamp(x[0], 0.0, 1.0)};
      });
  CHECK(project(with_projection, Point{2.0})[0] == doctest::Approx(1.0));

  const DecisionSet bare = DecisionSet::oracle(
      1, 1.0, {0.0}, {1.0},
      [](std::span<const double> x) { return x[0] >= 0.0 && x[0] <= 1.0; },
      nullptr);
  CHECK(throws_code([&] { project(bare, Point{2.0}); },
                    "unsupported-projection"));
}

TEST_CASE("interval cover places midpoints and satisfies the radius") {
  const DecisionSet interval = DecisionSet::box({0.0}, {1.0});
  const Cover cover = build_cover(interval, 0.5);
  REQUIRE(cover.centers.size() == 2);
  CHECK(cover.centers[0][0] == doctest::Approx(0.25));
  CHECK(cover.centers[1][0] == doctest::Approx(0.75));
  // Exhaustive scan: every grid point is within delta of a center.
  for (int k = 0; k <= 10000; ++k) {
    const double x = k / 10000.0;
    const double d = std::min(std::abs(x - 0.25), std::abs(x - 0.75));
    CHECK(d <= 0.5);
  }
}

TEST_CASE("huge delta collapses the cover to a few centers") {
  const DecisionSet sets[] = {DecisionSet::box({0.0, 0.0}, {1.0, 1.0}),
                              DecisionSet::ball({0.0, 0.0}, 1.0),
                              DecisionSet::simplex(3)};
  for (const DecisionSet& set : sets) {
    const Cover cover = build_cover(set, 2.0 * set.diameter());
    CHECK(cover.centers.size() >= 1);
    CHECK(cover.centers.size() <= 4);
    for (int s = 0; s < 2000; ++s) {
      const Point x = sample_point(set, 56, 0, s);
      double best = std::numeric_limits<double>::infinity();
      for (const Point& c : cover.centers) best = std::min(best, distance(x, c));
      CHECK(best <= cover.delta);
    }
  }
}

TEST_CASE("cover soundness and size on the disk") {
  const DecisionSet disk = DecisionSet::ball({0.0, 0.0}, 1.0);
  const double delta = 0.2;
  const Cover cover = build_cover(disk, delta);
  // Size stays within the covering-number bound (1 + 2D/delta)^d = 441.
  CHECK(static_cast<double>(cover.centers.size()) <=
        cover_size_bound(disk.diameter(), delta, 2));
  for (const Point& center : cover.centers) {
    CHECK(disk.contains(center, 1e-9));
  }
  for (int s = 0; s < 10000; ++s) {
    const Point x = sample_point(disk, 57, 0, s);
    double best = std::numeric_limits<double>::infinity();
    for (const Point& c : cover.centers) best = std::min(best, distance(x, c));
    CHECK(best <= delta);
  }
}

TEST_CASE("cover soundness on simplex and box") {
  const DecisionSet sets[] = {DecisionSet::simplex(3),
                              DecisionSet::box({-1.0, 2.0}, {1.0, 3.0})};
  for (const DecisionSet& set : sets) {
    const Cover cover = build_cover(set, 0.35);
    for (const Point& center : cover.centers) {
      CHECK(set.contains(center, 1e-9));
    }
    for (int s = 0; s < 10000; ++s) {
      const Point x = sample_point(set, 58, 1, s);
      double best = std::numeric_limits<double>::infinity();
      for (const Point& c : cover.centers) best = std::min(best, distance(x, c));
      CHECK(best <= cover.delta);
    }
  }
}

TEST_CASE("oversized lattices are rejected with an estimate") {
  const DecisionSet box = DecisionSet::box({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
  CHECK(throws_code([&] { build_cover(box, 1e-4); }, "cover-too-large"));
  CHECK(throws_code([&] { build_cover(box, 0.2, 10); }, "cover-too-large"));
}

TEST_CASE("cover size bound formula") {
  CHECK(cover_size_bound(1.0, 2.0, 3) == doctest::Approx(8.0));
  CHECK(cover_size_bound(1.0, 0.1, 1) == doctest::Approx(21.0));
  CHECK(cover_size_bound(5.0, 0.3, 0) == doctest::Approx(1.0));
}

TEST_CASE("samples land inside their sets") {
  const DecisionSet sets[] = {DecisionSet::simplex(4),
                              DecisionSet::box({0.0, -1.0}, {2.0, 1.0}),
                              DecisionSet::ball({1.0, 1.0}, 0.5)};
  for (const DecisionSet& set : sets) {
    for (int s = 0; s < 500; ++s) {
      CHECK(set.contains(sample_point(set, 59, 2, s), 1e-9));
    }
  }
}
