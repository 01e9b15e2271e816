#pragma once

#include <span>
#include <vector>

namespace coco {

// Probability distribution over experts; entries are nonnegative and sum to 1
// within 1e-9.
struct ExpertDistribution {
  std::vector<double> probs;
};

// Largest-probability expert, ties broken by lowest index.
int argmax_expert(const ExpertDistribution& dist);

// State of the adaptive Hedge engine for nonnegative, potentially unbounded
// losses. All transitions are pure: a run threads the state through
// distribution()/observe().
//
//   cum_losses  per-expert cumulative loss L_t
//   algo_loss   algorithm's cumulative loss L~_t = sum_t <l_t, p_t>
//   scale       G_t, running upper bound on ||l_t||_inf (monotone)
//   growth_cap  gamma, cap on G_t / G_{t-1}
struct HedgeState {
  int n = 0;
  std::vector<double> cum_losses;
  double algo_loss = 0.0;
  double scale = 1.0;
  double growth_cap = 1.08;
  long round = 0;
};

inline constexpr double kDefaultGrowthCap = 1.08;

// Standalone runs start at scale 1; the constrained-expert policy overrides
// initial_scale with 1 + Phi'(Q(0)).
HedgeState make_hedge(int n, double growth_cap = kDefaultGrowthCap,
                      double initial_scale = 1.0);

// Self-confident rate eta_t = sqrt(ln N / (G_{t-1} (L~_{t-1} + gamma G_{t-1}))).
// Non-increasing over any run since scale and algo_loss are monotone.
double learning_rate(const HedgeState& state);

// p_t(i) proportional to exp(-eta_t L_{t-1}(i)), evaluated in log domain with
// max subtraction so arbitrarily large cumulative losses cannot overflow.
// Exact ties in cum_losses yield exactly equal probabilities.
ExpertDistribution distribution(const HedgeState& state);

// Folds one revealed loss vector into the state. scale_bound must be an upper
// bound on ||loss||_inf, at least the current scale ("scale-regression"
// otherwise) and within growth_cap of it ("gamma-violation" otherwise).
HedgeState observe(HedgeState state, std::span<const double> loss,
                   const ExpertDistribution& played, double scale_bound);

// 2 gamma sqrt(L* G_T ln N) + 7 gamma^2 G_T ln N; the harness asserts
// algo_loss - L_T(i*) against this on every completed run.
double adaptive_regret_bound(double comparator_loss, double final_scale, int n,
                             double growth_cap);

// Fixed-rate Hedge baseline: softmax of -eta * cum_losses.
ExpertDistribution standard_hedge_distribution(
    std::span<const double> cum_losses, double eta);

}  // namespace coco
