#include "coco/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "coco/errors.hpp"
#include "coco/rng.hpp"

namespace coco {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void check_dimension(const DecisionSet& set, std::span<const double> point) {
  if (static_cast<int>(point.size()) != set.dimension()) {
    throw Error("bad-config", "point dimension " +
                                  std::to_string(point.size()) +
                                  " does not match set dimension " +
                                  std::to_string(set.dimension()));
  }
}

// Sort-then-threshold projection onto the probability simplex.
Point project_simplex(std::span<const double> point) {
  const std::size_t n = point.size();
  std::vector<double> sorted(point.begin(), point.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double running = 0.0;
  double threshold = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    running += sorted[j];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) {
      threshold = candidate;
    } else {
      break;
    }
  }
  Point out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::max(point[i] - threshold, 0.0);
  }
  return out;
}

}  // namespace

DecisionSet DecisionSet::simplex(int n) {
  if (n < 1) throw Error("bad-config", "simplex needs n >= 1");
  DecisionSet set;
  set.kind_ = Kind::kSimplex;
  set.dimension_ = n;
  set.diameter_ = n > 1 ? std::sqrt(2.0) : 0.0;
  set.bbox_lower_.assign(static_cast<std::size_t>(n), 0.0);
  set.bbox_upper_.assign(static_cast<std::size_t>(n), 1.0);
  return set;
}

DecisionSet DecisionSet::box(Point lower, Point upper) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw Error("bad-config", "box bounds must be nonempty and equal-sized");
  }
  double diag_sq = 0.0;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) {
      throw Error("bad-config", "box lower bound above upper bound");
    }
    diag_sq += (upper[i] - lower[i]) * (upper[i] - lower[i]);
  }
  DecisionSet set;
  set.kind_ = Kind::kBox;
  set.dimension_ = static_cast<int>(lower.size());
  set.diameter_ = std::sqrt(diag_sq);
  set.bbox_lower_ = std::move(lower);
  set.bbox_upper_ = std::move(upper);
  return set;
}

DecisionSet DecisionSet::ball(Point center, double radius) {
  if (center.empty()) throw Error("bad-config", "ball needs a center");
  if (!(radius > 0.0)) throw Error("bad-config", "ball radius must be positive");
  DecisionSet set;
  set.kind_ = Kind::kBall;
  set.dimension_ = static_cast<int>(center.size());
  set.diameter_ = 2.0 * radius;
  set.radius_ = radius;
  set.bbox_lower_.resize(center.size());
  set.bbox_upper_.resize(center.size());
  for (std::size_t i = 0; i < center.size(); ++i) {
    set.bbox_lower_[i] = center[i] - radius;
    set.bbox_upper_[i] = center[i] + radius;
  }
  set.center_ = std::move(center);
  return set;
}

DecisionSet DecisionSet::oracle(int dimension, double diameter,
                                Point bbox_lower, Point bbox_upper,
                                MembershipFn membership,
                                ProjectionFn projection) {
  if (dimension < 1) throw Error("bad-config", "dimension must be >= 1");
  if (!(diameter > 0.0)) throw Error("bad-config", "diameter must be positive");
  if (static_cast<int>(bbox_lower.size()) != dimension ||
      static_cast<int>(bbox_upper.size()) != dimension) {
    throw Error("bad-config", "bounding box dimension mismatch");
  }
  if (!membership) throw Error("bad-config", "oracle set needs a membership test");
  DecisionSet set;
  set.kind_ = Kind::kOracle;
  set.dimension_ = dimension;
  set.diameter_ = diameter;
  set.bbox_lower_ = std::move(bbox_lower);
  set.bbox_upper_ = std::move(bbox_upper);
  set.membership_ = std::move(membership);
  set.projection_ = std::move(projection);
  return set;
}

bool DecisionSet::contains(std::span<const double> point, double tol) const {
  check_dimension(*this, point);
  switch (kind_) {
    case Kind::kSimplex: {
      double sum = 0.0;
      for (double x : point) {
        if (x < -tol) return false;
        sum += x;
      }
      return std::abs(sum - 1.0) <= tol * static_cast<double>(dimension_);
    }
    case Kind::kBox:
      for (int i = 0; i < dimension_; ++i) {
        if (point[static_cast<std::size_t>(i)] < bbox_lower_[static_cast<std::size_t>(i)] - tol ||
            point[static_cast<std::size_t>(i)] > bbox_upper_[static_cast<std::size_t>(i)] + tol) {
          return false;
        }
      }
      return true;
    case Kind::kBall:
      return std::sqrt(squared_distance(point, center_)) <= radius_ + tol;
    case Kind::kOracle:
      return membership_(point);
  }
  return false;
}

Point project(const DecisionSet& set, std::span<const double> point) {
  check_dimension(set, point);
  for (double x : point) {
    if (!std::isfinite(x)) {
      throw Error("bad-config", "projection input must be finite");
    }
  }
  switch (set.kind_) {
    case DecisionSet::Kind::kSimplex:
      return project_simplex(point);
    case DecisionSet::Kind::kBox: {
      Point out(point.begin(), point.end());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::clamp(out[i], set.bbox_lower_[i], set.bbox_upper_[i]);
      }
      return out;
    }
    case DecisionSet::Kind::kBall: {
      const double dist = std::sqrt(squared_distance(point, set.center_));
      Point out(point.begin(), point.end());
      if (dist <= set.radius_) return out;
      const double shrink = set.radius_ / dist;
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = set.center_[i] + shrink * (out[i] - set.center_[i]);
      }
      return out;
    }
    case DecisionSet::Kind::kOracle:
      if (!set.projection_) {
        throw Error("unsupported-projection",
                    "oracle set has no projection routine");
      }
      return set.projection_(point);
  }
  throw Error("bad-config", "unknown set kind");
}

Point sample_point(const DecisionSet& set, std::uint64_t seed,
                   std::uint64_t stream, long step) {
  const auto d = static_cast<std::size_t>(set.dimension());
  const auto t = static_cast<std::uint64_t>(step);
  switch (set.kind()) {
    case DecisionSet::Kind::kSimplex: {
      // Normalized exponentials give a uniform simplex sample.
      Point out(d);
      double sum = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double u = rng::uniform(seed, stream, t, i);
        out[i] = -std::log(1.0 - u);
        sum += out[i];
      }
      for (double& x : out) x /= sum;
      return out;
    }
    case DecisionSet::Kind::kBox: {
      Point out(d);
      for (std::size_t i = 0; i < d; ++i) {
        out[i] = rng::uniform_in(set.bbox_lower()[i], set.bbox_upper()[i],
                                 seed, stream, t, i);
      }
      return out;
    }
    case DecisionSet::Kind::kBall: {
      Point out(d);
      double norm_sq = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        out[i] = rng::gaussian(seed, stream, t, 2 * i);
        norm_sq += out[i] * out[i];
      }
      const double norm = std::sqrt(std::max(norm_sq, 1e-300));
      const double u = rng::uniform(seed, stream, t, 2 * d + 1);
      const double r = set.ball_radius() *
                       std::pow(u, 1.0 / static_cast<double>(d));
      for (std::size_t i = 0; i < d; ++i) {
        out[i] = set.ball_center()[i] + r * out[i] / norm;
      }
      return out;
    }
    case DecisionSet::Kind::kOracle: {
      for (std::uint64_t attempt = 0; attempt < 10000; ++attempt) {
        Point out(d);
        for (std::size_t i = 0; i < d; ++i) {
          out[i] = rng::uniform_in(set.bbox_lower()[i], set.bbox_upper()[i],
                                   seed, stream, t, attempt * d + i);
        }
        if (set.contains(out)) return out;
      }
      throw Error("bad-config", "rejection sampling failed for oracle set");
    }
  }
  throw Error("bad-config", "unknown set kind");
}

Cover build_cover(const DecisionSet& set, double delta,
                  std::size_t max_centers) {
  if (!(delta > 0.0)) throw Error("bad-config", "delta must be positive");
  const int d = set.dimension();
  const double spacing = delta / std::sqrt(static_cast<double>(d));

  // Equal cells of side <= spacing covering the bounding box exactly.
  std::vector<long> cells(static_cast<std::size_t>(d));
  std::vector<double> side(static_cast<std::size_t>(d));
  double estimate = 1.0;
  for (int i = 0; i < d; ++i) {
    const double extent = set.bbox_upper()[static_cast<std::size_t>(i)] -
                          set.bbox_lower()[static_cast<std::size_t>(i)];
    const long m = std::max<long>(
        1, static_cast<long>(std::ceil(extent / spacing - 1e-12)));
    cells[static_cast<std::size_t>(i)] = m;
    side[static_cast<std::size_t>(i)] = extent / static_cast<double>(m);
    estimate *= static_cast<double>(m);
    if (estimate > static_cast<double>(max_centers)) {
      throw Error("cover-too-large",
                  "lattice estimate " + std::to_string(estimate) +
                      " centers exceeds cap " + std::to_string(max_centers));
    }
  }

  double half_diag_sq = 0.0;
  for (int i = 0; i < d; ++i) {
    half_diag_sq += side[static_cast<std::size_t>(i)] * side[static_cast<std::size_t>(i)];
  }
  const double keep_radius = 0.5 * std::sqrt(half_diag_sq) + 1e-12;

  Cover cover;
  cover.delta = delta;
  cover.source = set;

  std::vector<long> index(static_cast<std::size_t>(d), 0);
  Point midpoint(static_cast<std::size_t>(d));
  while (true) {
    for (int i = 0; i < d; ++i) {
      midpoint[static_cast<std::size_t>(i)] =
          set.bbox_lower()[static_cast<std::size_t>(i)] +
          (static_cast<double>(index[static_cast<std::size_t>(i)]) + 0.5) *
              side[static_cast<std::size_t>(i)];
    }
    Point representative = project(set, midpoint);
    // A cell that intersects the set has its midpoint within half a cell
    // diagonal of the set; drop the rest.
    if (std::sqrt(squared_distance(midpoint, representative)) <= keep_radius) {
      cover.centers.push_back(std::move(representative));
    }
    int axis = 0;
    for (; axis < d; ++axis) {
      if (++index[static_cast<std::size_t>(axis)] <
          cells[static_cast<std::size_t>(axis)]) {
        break;
      }
      index[static_cast<std::size_t>(axis)] = 0;
    }
    if (axis == d) break;
  }
  return cover;
}

double cover_size_bound(double diameter, double delta, int dimension) {
  if (!(diameter > 0.0) || !(delta > 0.0) || dimension < 0) {
    throw Error("bad-config", "cover_size_bound needs positive arguments");
  }
  return std::pow(1.0 + 2.0 * diameter / delta, static_cast<double>(dimension));
}

}  // namespace coco
