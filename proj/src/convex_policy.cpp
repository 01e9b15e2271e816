#include "coco/convex_policy.hpp"

#include <cmath>
#include <string>

#include "coco/errors.hpp"

namespace coco {

namespace {
constexpr double kValueSlack = 1e-9;

double checked_unit_value(const ConvexFunctionOracle& oracle,
                          std::span<const double> point, const char* label) {
  const double v = oracle.value(point);
  if (!(v >= -kValueSlack) || v > 1.0 + kValueSlack) {
    throw Error("unnormalized-oracle", std::string(label) +
                                           " oracle value outside [0,1]: " +
                                           std::to_string(v));
  }
  return std::clamp(v, 0.0, 1.0);
}

double norm_sq(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}
}  // namespace

ExpertRound cover_transform(const Cover& cover,
                            const ConvexFunctionOracle& cost,
                            const ConvexFunctionOracle& violation,
                            double lipschitz, double delta) {
  ExpertRound round;
  round.cost.reserve(cover.centers.size());
  round.violation.reserve(cover.centers.size());
  const double slack = lipschitz * delta;
  for (const Point& center : cover.centers) {
    round.cost.push_back(checked_unit_value(cost, center, "cost"));
    const double g = checked_unit_value(violation, center, "violation");
    round.violation.push_back(std::max(0.0, g - slack));
  }
  return round;
}

CoverPolicy make_cover_policy(Cover cover, long horizon, double beta,
                              double lipschitz) {
  if (cover.centers.size() < 2) {
    throw Error("bad-config", "cover policy needs at least 2 centers");
  }
  CoverPolicy policy;
  policy.inner = make_constrained_expert(
      static_cast<int>(cover.centers.size()), horizon, beta);
  policy.lipschitz = lipschitz;
  policy.delta = cover.delta;
  policy.cover = std::move(cover);
  return policy;
}

Point cover_policy_act(const CoverPolicy& policy) {
  const ExpertDistribution dist = act(policy.inner);
  const auto d = static_cast<std::size_t>(policy.cover.source.dimension());
  Point point(d, 0.0);
  for (std::size_t i = 0; i < policy.cover.centers.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      point[j] += dist.probs[i] * policy.cover.centers[i][j];
    }
  }
  return point;
}

CoverPolicy cover_policy_feedback(CoverPolicy policy,
                                  const ConvexFunctionOracle& cost,
                                  const ConvexFunctionOracle& violation,
                                  const ExpertDistribution& played) {
  const ExpertRound round = cover_transform(policy.cover, cost, violation,
                                            policy.lipschitz, policy.delta);
  policy.inner = feedback(std::move(policy.inner), round, played);
  return policy;
}

SmoothOgdPolicy make_smooth_ogd(DecisionSet set, Point start, long horizon,
                                const LyapunovConfig& lyapunov) {
  if (!set.contains(start)) {
    throw Error("bad-config", "start point is not in the decision set");
  }
  SmoothOgdPolicy policy;
  policy.ccv = CcvTracker{0.0, 0, horizon, lyapunov};
  policy.set = std::move(set);
  policy.current = std::move(start);
  return policy;
}

namespace {

std::pair<Point, SmoothOgdPolicy> ogd_step_impl(SmoothOgdPolicy policy,
                                                const Point& grad,
                                                double realized_violation) {
  Point played = policy.current;
  policy.ccv = ccv_update(policy.ccv, realized_violation);
  policy.grad_sq_sum += norm_sq(grad);
  if (policy.grad_sq_sum > 0.0) {
    const double step =
        policy.set.diameter() / std::sqrt(2.0 * policy.grad_sq_sum);
    Point shifted = policy.current;
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      shifted[i] -= step * grad[i];
    }
    policy.current = project(policy.set, shifted);
    policy.last_step_size = step;
  } else {
    // No gradient signal yet: the step size is undefined, hold position.
    policy.last_step_size = 0.0;
  }
  return {std::move(played), std::move(policy)};
}

}  // namespace

std::pair<Point, SmoothOgdPolicy> smooth_ogd_step(
    SmoothOgdPolicy policy, const ConvexFunctionOracle& cost,
    const ConvexFunctionOracle& violation) {
  const Point& x = policy.current;
  const double g_value = checked_unit_value(violation, x, "violation");
  // Realized violation updates Q before the multiplier is formed, matching
  // the constrained-expert step order.
  const double phi_prime =
      lyapunov_derivative(policy.ccv.lyapunov, policy.ccv.total + g_value);
  Point grad = cost.gradient(x);
  const Point g_grad = violation.gradient(x);
  if (grad.size() != g_grad.size() || grad.size() != x.size()) {
    throw Error("bad-config", "gradient dimension mismatch");
  }
  for (std::size_t i = 0; i < grad.size(); ++i) {
    grad[i] += phi_prime * g_grad[i];
  }
  return ogd_step_impl(std::move(policy), grad, g_value);
}

std::pair<Point, SmoothOgdPolicy> pure_ogd_ocs_step(
    SmoothOgdPolicy policy, const ConvexFunctionOracle& violation) {
  const Point& x = policy.current;
  const double g_value = checked_unit_value(violation, x, "violation");
  const Point grad = violation.gradient(x);
  if (grad.size() != x.size()) {
    throw Error("bad-config", "gradient dimension mismatch");
  }
  return ogd_step_impl(std::move(policy), grad, g_value);
}

double smooth_regret_bound(double comparator_loss, double diameter,
                           double smoothness) {
  if (comparator_loss < 0.0 || !(diameter > 0.0) || !(smoothness > 0.0)) {
    throw Error("bad-config", "smooth_regret_bound needs nonnegative inputs");
  }
  return 4.0 * diameter * std::sqrt(smoothness * comparator_loss) +
         4.0 * diameter * diameter * smoothness;
}

double observed_smoothness(const ConvexFunctionOracle& oracle,
                           const DecisionSet& set, int samples,
                           std::uint64_t seed) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Point a = sample_point(set, seed, 101, 2 * s);
    const Point b = sample_point(set, seed, 101, 2 * s + 1);
    double dist_sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      dist_sq += (a[i] - b[i]) * (a[i] - b[i]);
    }
    if (dist_sq < 1e-16) continue;
    const Point ga = oracle.gradient(a);
    const Point gb = oracle.gradient(b);
    double diff_sq = 0.0;
    for (std::size_t i = 0; i < ga.size(); ++i) {
      diff_sq += (ga[i] - gb[i]) * (ga[i] - gb[i]);
    }
    worst = std::max(worst, std::sqrt(diff_sq / dist_sq));
  }
  return worst;
}

}  // namespace coco
