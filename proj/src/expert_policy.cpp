#include "coco/expert_policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coco/errors.hpp"
#include "coco/rng.hpp"

namespace coco {

namespace {
constexpr double kEntrySlack = 1e-12;

void check_unit_range(std::span<const double> values, const char* label) {
  for (double v : values) {
    if (!(v >= -kEntrySlack) || v > 1.0 + kEntrySlack) {
      throw Error("bound-violation", std::string(label) +
                                         " entry outside [0,1]: " +
                                         std::to_string(v));
    }
  }
}
}  // namespace

ConstrainedExpertPolicy make_constrained_expert(int n, long horizon,
                                                double beta) {
  const double rate = lambda_expert(horizon, beta, n);
  ConstrainedExpertPolicy policy;
  policy.ccv = CcvTracker{0.0, 0, horizon, make_lyapunov(rate)};
  const double initial_scale = 1.0 + policy.ccv.phi_prime();  // 1 + Phi'(0)
  policy.hedge = make_hedge(n, kDefaultGrowthCap, initial_scale);
  return policy;
}

ExpertDistribution act(const ConstrainedExpertPolicy& policy) {
  return distribution(policy.hedge);
}

ConstrainedExpertPolicy feedback(ConstrainedExpertPolicy policy,
                                 const ExpertRound& round,
                                 const ExpertDistribution& played) {
  if (static_cast<int>(round.cost.size()) != policy.hedge.n ||
      static_cast<int>(round.violation.size()) != policy.hedge.n ||
      static_cast<int>(played.probs.size()) != policy.hedge.n) {
    throw Error("bad-config", "round size mismatch");
  }
  check_unit_range(round.cost, "cost");
  check_unit_range(round.violation, "violation");

  double expected_violation = 0.0;
  for (int i = 0; i < policy.hedge.n; ++i) {
    expected_violation += round.violation[i] * played.probs[i];
  }
  // Q first, then the multiplier: the surrogate uses Phi'(Q(t)), not
  // Phi'(Q(t-1)).
  policy.ccv = ccv_update(policy.ccv, expected_violation);
  const double phi_prime = policy.ccv.phi_prime();
  const std::vector<double> surrogate =
      surrogate_cost(round.cost, round.violation, phi_prime);
  policy.hedge = observe(std::move(policy.hedge), surrogate, played,
                         1.0 + phi_prime);
  return policy;
}

std::vector<double> surrogate_cost(std::span<const double> cost,
                                   std::span<const double> violation,
                                   double phi_prime) {
  if (cost.size() != violation.size()) {
    throw Error("bad-config", "cost/violation size mismatch");
  }
  std::vector<double> result(cost.size());
  for (std::size_t i = 0; i < cost.size(); ++i) {
    result[i] = cost[i] + phi_prime * violation[i];
  }
  return result;
}

int sample_expert(const ExpertDistribution& dist, std::uint64_t seed, long t) {
  const double u = rng::uniform(seed, /*stream=*/0x5a3c,
                                static_cast<std::uint64_t>(t));
  return rng::categorical(dist.probs, u);
}

}  // namespace coco
