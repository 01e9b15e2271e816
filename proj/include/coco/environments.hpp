#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "coco/convex_policy.hpp"
#include "coco/expert_policy.hpp"
#include "coco/geometry.hpp"

namespace coco {

// Synthetic constrained-expert instance: one cheap feasible expert, one
// cheaper but heavily violating expert, two feasible decoys, and a violating
// crowd whose costs carry a zero-mean periodic component. Special experts
// draw Bernoulli costs/violations at their configured means; crowd costs are
// clip(mean + amplitude * sin(2 pi t / period + phase_i) + U(-jitter, jitter), 0, 1)
// with phase_i = 2 pi i / n. All indices are zero-based.
struct SyntheticExpertSpec {
  int n = 20;
  long horizon = 5000;
  std::uint64_t seed = 0;

  int best_feasible = 11;
  int best_unconstrained = 7;
  std::array<int, 2> decoys{2, 5};

  double feasible_cost_mean = 0.21;
  double unconstrained_cost_mean = 0.11;
  double unconstrained_violation_mean = 0.91;
  double crowd_cost_mean = 0.41;
  double crowd_violation_mean = 0.6;
  double periodic_amplitude = 0.15;
  double periodic_period = 500.0;
  double cost_jitter = 0.1;
};

ExpertRound synthetic_expert_round(const SyntheticExpertSpec& spec, long t);

// Same instance with every cost forced to zero (pure constraint
// satisfaction).
ExpertRound ocs_expert_round(const SyntheticExpertSpec& spec, long t);

// Smooth instance on a Euclidean ball: time-invariant constraint
// g(x) = ||x - x*||^2 / D^2 (so g(x*) = 0 and g <= 1 on the set) and linear
// per-round costs f_t(x) = (1 + <c_t, x - center> / radius) / 2 with
// ||c_t|| <= 1 drawn per round.
struct SmoothInstanceSpec {
  int dimension = 2;
  Point center = {0.0, 0.0};
  double radius = 1.0;
  Point feasible_point = {0.5, 0.0};
  long horizon = 1000;
  std::uint64_t seed = 0;

  DecisionSet set() const { return DecisionSet::ball(center, radius); }
  double diameter() const { return 2.0 * radius; }
  // True curvature of the constraint; declared constants may be looser.
  double constraint_smoothness() const {
    return 2.0 / (diameter() * diameter());
  }
};

struct SmoothRound {
  ConvexFunctionOracle cost;
  ConvexFunctionOracle violation;
};

SmoothRound smooth_round(const SmoothInstanceSpec& spec, long t);

// Comparator that violates by exactly total_budget over the horizon: a point
// at distance D * sqrt(B / T) from the feasible point. total_budget = 0
// returns the feasible point itself.
Point budget_comparator(const SmoothInstanceSpec& spec, double total_budget);

// Piecewise-linear 1-Lipschitz instance on [0, 1] for the cover reduction:
// f_t(x) = |x - a_t| with a_t uniform per round, g(x) = |x - x*|.
struct Lipschitz1dSpec {
  long horizon = 200;
  double feasible_point = 0.3;
  std::uint64_t seed = 0;

  DecisionSet set() const { return DecisionSet::box({0.0}, {1.0}); }
  double lipschitz() const { return 1.0; }
};

SmoothRound lipschitz1d_round(const Lipschitz1dSpec& spec, long t);

// Adversarial stress stream for the hedge engine: losses in [0, G_t] with
// G_t = growth^floor(t / scale_period), so consecutive scale ratios never
// exceed `growth`. An optional designated expert keeps loss identically zero.
struct UnboundedStreamSpec {
  int n = 2;
  long horizon = 100;
  double growth = 1.0;
  long scale_period = 1;
  std::uint64_t seed = 0;
  std::optional<int> zero_loss_expert;
};

struct StreamRound {
  std::vector<double> loss;
  double scale_bound = 1.0;
};

double stream_scale(const UnboundedStreamSpec& spec, long t);
StreamRound unbounded_loss_round(const UnboundedStreamSpec& spec, long t);

}  // namespace coco
