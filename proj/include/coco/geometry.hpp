#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace coco {

using Point = std::vector<double>;

// Convex decision sets with exact Euclidean projection. The built-in kinds
// (simplex, box, ball) carry their own geometry; oracle sets wrap
// user-supplied membership/projection plus a bounding box.
class DecisionSet {
 public:
  enum class Kind { kSimplex, kBox, kBall, kOracle };

  using MembershipFn = std::function<bool(std::span<const double>)>;
  using ProjectionFn = std::function<Point(std::span<const double>)>;

  // Probability simplex in R^n. Diameter sqrt(2) between vertices.
  static DecisionSet simplex(int n);
  // Axis-aligned box; diameter is the Euclidean diagonal.
  static DecisionSet box(Point lower, Point upper);
  static DecisionSet ball(Point center, double radius);
  // projection may be empty; project() then throws "unsupported-projection".
  static DecisionSet oracle(int dimension, double diameter, Point bbox_lower,
                            Point bbox_upper, MembershipFn membership,
                            ProjectionFn projection);

  Kind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  double diameter() const { return diameter_; }
  const Point& bbox_lower() const { return bbox_lower_; }
  const Point& bbox_upper() const { return bbox_upper_; }
  double ball_radius() const { return radius_; }
  const Point& ball_center() const { return center_; }

  bool contains(std::span<const double> point, double tol = 1e-9) const;

  // Empty placeholder; use the factories for a meaningful set.
  DecisionSet() = default;

 private:
  friend Point project(const DecisionSet&, std::span<const double>);

  Kind kind_ = Kind::kBox;
  int dimension_ = 0;
  double diameter_ = 0.0;
  Point bbox_lower_;
  Point bbox_upper_;
  Point center_;
  double radius_ = 0.0;
  MembershipFn membership_;
  ProjectionFn projection_;
};

// Euclidean projection onto the set. Idempotent; identity on members.
// Simplex projection is the exact sort-then-threshold method.
Point project(const DecisionSet& set, std::span<const double> point);

// Uniform-ish sample from the set, deterministic in (seed, stream, step).
// Used by diagnostics and tests; oracle sets use rejection from the bounding
// box.
Point sample_point(const DecisionSet& set, std::uint64_t seed,
                   std::uint64_t stream, long step);

// Finite delta-cover: every x in the source set is within delta of some
// center and every center lies in the set.
struct Cover {
  std::vector<Point> centers;
  double delta = 0.0;
  DecisionSet source;
};

// Lattice cover: axis-aligned cells of side <= delta / sqrt(d), each kept
// cell represented by the projection of its midpoint onto the set. Cells are
// kept only when the midpoint is within half a cell diagonal of the set, so
// the cover property holds deterministically. Throws "cover-too-large" when
// the lattice estimate exceeds max_centers.
Cover build_cover(const DecisionSet& set, double delta,
                  std::size_t max_centers = 10'000'000);

// (1 + 2 D / delta)^d, the covering-number bound for a set of diameter D.
double cover_size_bound(double diameter, double delta, int dimension);

}  // namespace coco
