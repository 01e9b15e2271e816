#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coco/core.hpp"
#include "coco/hedge.hpp"

namespace coco {

// One revealed round of the constrained expert problem: per-expert cost and
// violation vectors, all entries in [0, 1].
struct ExpertRound {
  std::vector<double> cost;
  std::vector<double> violation;
};

// Constrained-expert policy: adaptive Hedge driven by surrogate costs
// f + Phi'(Q) * g, with the scale feed G_t = 1 + Phi'(Q(t)).
//
// Invariants maintained by feedback():
//   hedge.scale == 1 + Phi'(ccv.total)
//   hedge.growth_cap == 1.08
struct ConstrainedExpertPolicy {
  HedgeState hedge;
  CcvTracker ccv;
};

// The constant c = 10 in the expert rate schedule and the surrogate
// small-loss bound. 10 >= max(2 gamma, 7 gamma^2) for gamma = 1.08.
inline constexpr double kExpertScaleConst = 10.0;

// Rate from lambda_expert(horizon, beta, n); Q(0) = 0; initial hedge scale
// 1 + Phi'(0). The horizon must be known up front.
ConstrainedExpertPolicy make_constrained_expert(int n, long horizon,
                                                double beta);

ExpertDistribution act(const ConstrainedExpertPolicy& policy);

// Applies one revealed round: updates Q with the expected violation
// <g, played> first, then forms the surrogate with the updated Phi'(Q(t))
// and feeds it to the hedge engine with scale bound 1 + Phi'(Q(t)).
ConstrainedExpertPolicy feedback(ConstrainedExpertPolicy policy,
                                 const ExpertRound& round,
                                 const ExpertDistribution& played);

// f + phi_prime * g, entrywise; sup-norm of the result is at most
// 1 + phi_prime for inputs in [0, 1].
std::vector<double> surrogate_cost(std::span<const double> cost,
                                   std::span<const double> violation,
                                   double phi_prime);

// Sampling wrapper for selection-frequency reporting: one drawn expert per
// round, deterministic in (seed, t).
int sample_expert(const ExpertDistribution& dist, std::uint64_t seed, long t);

}  // namespace coco
