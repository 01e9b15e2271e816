#pragma once

#include <functional>
#include <span>
#include <utility>

#include "coco/core.hpp"
#include "coco/expert_policy.hpp"
#include "coco/geometry.hpp"

namespace coco {

// First-order oracle for one convex function: value in [0, 1] on the decision
// set plus an exact (sub)gradient. Oracles must be reentrant; the cover
// transform evaluates them across all centers.
struct ConvexFunctionOracle {
  std::function<double(std::span<const double>)> value;
  std::function<Point(std::span<const double>)> gradient;
  double declared_lipschitz = 1.0;
  double declared_smoothness = 1.0;
  bool declared_nonnegative = true;
};

// Expert instance induced by a cover: cost(i) = f(x^i) and
// violation(i) = max(0, g(x^i) - G * delta). Throws "unnormalized-oracle" if
// an oracle value leaves [0, 1].
ExpertRound cover_transform(const Cover& cover,
                            const ConvexFunctionOracle& cost,
                            const ConvexFunctionOracle& violation,
                            double lipschitz, double delta);

// Reduction policy: constrained-expert instance over the cover centers; the
// played point is the distribution-weighted combination of centers.
struct CoverPolicy {
  Cover cover;
  ConstrainedExpertPolicy inner;
  double lipschitz = 1.0;
  double delta = 0.0;
};

CoverPolicy make_cover_policy(Cover cover, long horizon, double beta,
                              double lipschitz);

// Convex combination of centers under the inner policy's current
// distribution; lies in the source set by convexity.
Point cover_policy_act(const CoverPolicy& policy);

CoverPolicy cover_policy_feedback(CoverPolicy policy,
                                  const ConvexFunctionOracle& cost,
                                  const ConvexFunctionOracle& violation,
                                  const ExpertDistribution& played);

// Projected OGD on surrogate gradients grad f + Phi'(Q(t)) grad g with the
// self-tuned step D / sqrt(2 sum ||grad||^2). In the pure constraint-
// satisfaction mode the multiplier is dropped and the gradient is grad g
// alone.
struct SmoothOgdPolicy {
  DecisionSet set;
  Point current;
  double grad_sq_sum = 0.0;
  CcvTracker ccv;
  double last_step_size = 0.0;
};

SmoothOgdPolicy make_smooth_ogd(DecisionSet set, Point start, long horizon,
                                const LyapunovConfig& lyapunov);

// Returns the point played this round (the pre-step iterate) and the updated
// policy. With an all-zero gradient history the policy holds position.
std::pair<Point, SmoothOgdPolicy> smooth_ogd_step(
    SmoothOgdPolicy policy, const ConvexFunctionOracle& cost,
    const ConvexFunctionOracle& violation);

std::pair<Point, SmoothOgdPolicy> pure_ogd_ocs_step(
    SmoothOgdPolicy policy, const ConvexFunctionOracle& violation);

// 4 D sqrt(M L(u)) + 4 D^2 M: the small-loss regret cap for nonnegative
// M-smooth losses under the adaptive OGD step schedule.
double smooth_regret_bound(double comparator_loss, double diameter,
                           double smoothness);

// Largest secant ratio ||grad(x) - grad(y)|| / ||x - y|| over sampled pairs;
// a diagnostic for declared smoothness constants.
double observed_smoothness(const ConvexFunctionOracle& oracle,
                           const DecisionSet& set, int samples,
                           std::uint64_t seed);

}  // namespace coco
