#include <algorithm>
#include <cmath>
#include <functional>

#include <doctest.h>

#include "coco/environments.hpp"
#include "coco/errors.hpp"
#include "coco/expert_policy.hpp"
#include "coco/rng.hpp"

using namespace coco;

TEST_CASE("initialization sets the rate and the scale feed") {
  const ConstrainedExpertPolicy policy = make_constrained_expert(20, 5000, 0.75);
  CHECK(policy.ccv.lyapunov.rate ==
        doctest::Approx(0.00198483543656573759).epsilon(1e-14));
  CHECK(policy.hedge.scale ==
        doctest::Approx(1.00198483543656574).epsilon(1e-14));
  CHECK(policy.hedge.growth_cap == doctest::Approx(1.08));

  const ConstrainedExpertPolicy tiny = make_constrained_expert(2, 1, 0.0);
  CHECK(tiny.hedge.scale ==
        doctest::Approx(1.07213475204444817).epsilon(1e-14));

  // Zero initial losses: the first action is uniform.
  const ExpertDistribution first = act(policy);
  for (double p : first.probs) CHECK(p == doctest::Approx(1.0 / 20));
}

TEST_CASE("surrogate cost combines cost and weighted violation") {
  const std::vector<double> cost{0.2, 0.8};
  const std::vector<double> violation{1.0, 0.0};
  const std::vector<double> plain = surrogate_cost(cost, violation, 0.0);
  CHECK(plain[0] == doctest::Approx(0.2));
  CHECK(plain[1] == doctest::Approx(0.8));

  const std::vector<double> mixed = surrogate_cost(cost, violation, 2.0);
  CHECK(mixed[0] == doctest::Approx(2.2));
  CHECK(mixed[1] == doctest::Approx(0.8));
}

TEST_CASE("surrogate sup-norm stays within 1 + phi_prime") {
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 9;
    std::vector<double> cost(n);
    std::vector<double> violation(n);
    for (std::size_t i = 0; i < n; ++i) {
      cost[i] = rng::uniform(41, trial, 2 * i);
      violation[i] = rng::uniform(41, trial, 2 * i + 1);
    }
    const double phi_prime = 10.0 * rng::uniform(42, trial, 0);
    const std::vector<double> surrogate =
        surrogate_cost(cost, violation, phi_prime);
    const double sup =
        *std::max_element(surrogate.begin(), surrogate.end());
    CHECK(sup <= 1.0 + phi_prime + 1e-12);
  }
}

TEST_CASE("feedback leaves cost alone when nothing is violated") {
  ConstrainedExpertPolicy policy = make_constrained_expert(3, 100, 0.5);
  const ExpertDistribution played = act(policy);
  ExpertRound round{{0.4, 0.2, 0.9}, {0.0, 0.0, 0.0}};
  policy = feedback(std::move(policy), round, played);
  CHECK(policy.ccv.total == 0.0);
  // Surrogate equals the raw cost when the violation vector is zero.
  CHECK(policy.hedge.cum_losses[1] == doctest::Approx(0.2));
}

TEST_CASE("feedback applies the updated multiplier") {
  // rate = 0.1, Q moves from 9 to 10, so the surrogate uses 0.1 e^1.
  ConstrainedExpertPolicy policy = make_constrained_expert(2, 100, 0.5);
  policy.ccv.lyapunov = make_lyapunov(0.1);
  policy.ccv.total = 9.0;
  policy.hedge.scale = 1.0 + policy.ccv.phi_prime();
  policy.hedge.growth_cap = 1.2;  // e^0.1 exceeds the standard cap

  const ExpertDistribution played{{0.0, 1.0}};
  const ExpertRound round{{0.5, 0.5}, {1.0, 1.0}};
  policy = feedback(std::move(policy), round, played);
  CHECK(policy.ccv.total == doctest::Approx(10.0));
  const double expected = 0.5 + 0.1 * std::exp(1.0);
  CHECK(policy.hedge.cum_losses[0] - 0.0 ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("full violation under a uniform distribution raises Q by one") {
  ConstrainedExpertPolicy policy = make_constrained_expert(4, 50, 0.5);
  const ExpertDistribution played = act(policy);
  const ExpertRound round{{0.0, 0.0, 0.0, 0.0}, {1.0, 1.0, 1.0, 1.0}};
  policy = feedback(std::move(policy), round, played);
  CHECK(policy.ccv.total == doctest::Approx(1.0));
}

TEST_CASE("scale tracks one plus the multiplier and gamma stays capped") {
  SyntheticExpertSpec spec;
  spec.horizon = 800;
  spec.seed = 9;
  ConstrainedExpertPolicy policy =
      make_constrained_expert(spec.n, spec.horizon, 0.6);
  const double rate_cap = std::exp(policy.ccv.lyapunov.rate);
  for (long t = 1; t <= spec.horizon; ++t) {
    const ExpertDistribution played = act(policy);
    const double scale_before = policy.hedge.scale;
    policy = feedback(std::move(policy), synthetic_expert_round(spec, t),
                      played);
    const double ratio = policy.hedge.scale / scale_before;
    CHECK(ratio <= rate_cap + 1e-12);
    CHECK(ratio <= 1.08);
    // Invariant: hedge scale == 1 + Phi'(Q(t)), compared in log space.
    CHECK(std::log(policy.hedge.scale) ==
          doctest::Approx(std::log(1.0 + policy.ccv.phi_prime()))
              .epsilon(1e-9));
  }
  CHECK(policy.ccv.total <= static_cast<double>(spec.horizon));
}

TEST_CASE("preferences follow the surrogate losses after one round") {
  ConstrainedExpertPolicy policy = make_constrained_expert(2, 10, 0.5);
  const ExpertDistribution played = act(policy);
  const ExpertRound round{{0.0, 0.9}, {0.0, 0.0}};
  policy = feedback(std::move(policy), round, played);
  const ExpertDistribution next = act(policy);
  CHECK(next.probs[0] > next.probs[1]);
}

TEST_CASE("regret decomposition holds on random instances") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 4;
    const long horizon = 150;
    ConstrainedExpertPolicy policy = make_constrained_expert(n, horizon, 0.5);
    std::vector<double> cum_cost(n, 0.0);
    std::vector<double> cum_violation(n, 0.0);
    double algo_cost = 0.0;
    for (long t = 1; t <= horizon; ++t) {
      const ExpertDistribution played = act(policy);
      ExpertRound round;
      round.cost.resize(n);
      round.violation.resize(n);
      for (int i = 0; i < n; ++i) {
        round.cost[i] = rng::uniform(seed, t, 2 * i);
        // Expert 0 stays feasible so the decomposition has a zero-violation
        // comparator too.
        round.violation[i] = i == 0 ? 0.0 : rng::uniform(seed, t, 2 * i + 1);
      }
      for (int i = 0; i < n; ++i) {
        cum_cost[i] += round.cost[i];
        cum_violation[i] += round.violation[i];
        algo_cost += round.cost[i] * played.probs[i];
      }
      policy = feedback(std::move(policy), round, played);
    }
    const double rate = policy.ccv.lyapunov.rate;
    const double phi_prime_final = policy.ccv.phi_prime();
    const double phi_final = phi_prime_final / rate;
    for (int i = 0; i < n; ++i) {
      const double lhs = phi_final - 1.0 + (algo_cost - cum_cost[i]);
      const double rhs = policy.hedge.algo_loss - policy.hedge.cum_losses[i] +
                         phi_prime_final * cum_violation[i];
      CHECK(lhs <= rhs + 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("synthetic instance locks onto the cheap feasible expert") {
  SyntheticExpertSpec spec;
  spec.seed = 3;
  ConstrainedExpertPolicy policy =
      make_constrained_expert(spec.n, spec.horizon, 0.75);
  ExpertDistribution last;
  for (long t = 1; t <= spec.horizon; ++t) {
    last = act(policy);
    policy = feedback(std::move(policy), synthetic_expert_round(spec, t), last);
  }
  const int winner = argmax_expert(act(policy));
  CHECK(winner == spec.best_feasible);
  for (int i = 0; i < spec.n; ++i) {
    if (i == spec.best_feasible) continue;
    CHECK(act(policy).probs[spec.best_feasible] > act(policy).probs[i]);
  }
}

TEST_CASE("sampling wrapper is deterministic and matches the distribution") {
  const ExpertDistribution dist{{0.2, 0.5, 0.3}};
  std::vector<int> counts(3, 0);
  for (long t = 1; t <= 20000; ++t) {
    const int a = sample_expert(dist, 77, t);
    const int b = sample_expert(dist, 77, t);
    CHECK(a == b);
    counts[a] += 1;
  }
  CHECK(std::abs(counts[1] / 20000.0 - 0.5) < 0.02);
  CHECK(std::abs(counts[0] / 20000.0 - 0.2) < 0.02);
}
