#include "coco/environments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coco/errors.hpp"
#include "coco/rng.hpp"

namespace coco {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;

// Stream ids: cost draws on 2i, violation draws on 2i+1.
double bernoulli_value(const SyntheticExpertSpec& spec, std::uint64_t stream,
                       long t, double mean) {
  return rng::bernoulli(mean, spec.seed, stream, static_cast<std::uint64_t>(t))
             ? 1.0
             : 0.0;
}
}  // namespace

ExpertRound synthetic_expert_round(const SyntheticExpertSpec& spec, long t) {
  if (t < 1 || t > spec.horizon) {
    throw Error("bad-config", "round index " + std::to_string(t) +
                                  " outside [1, horizon]");
  }
  ExpertRound round;
  round.cost.resize(static_cast<std::size_t>(spec.n));
  round.violation.resize(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) {
    const auto cost_stream = static_cast<std::uint64_t>(2 * i);
    const auto viol_stream = static_cast<std::uint64_t>(2 * i + 1);
    double cost;
    double violation;
    if (i == spec.best_feasible) {
      cost = bernoulli_value(spec, cost_stream, t, spec.feasible_cost_mean);
      violation = 0.0;
    } else if (i == spec.decoys[0] || i == spec.decoys[1]) {
      cost = bernoulli_value(spec, cost_stream, t, spec.crowd_cost_mean);
      violation = 0.0;
    } else if (i == spec.best_unconstrained) {
      cost = bernoulli_value(spec, cost_stream, t, spec.unconstrained_cost_mean);
      violation = bernoulli_value(spec, viol_stream, t,
                                  spec.unconstrained_violation_mean);
    } else {
      const double phase = kTwoPi * static_cast<double>(i) /
                           static_cast<double>(spec.n);
      const double wave =
          spec.periodic_amplitude *
          std::sin(kTwoPi * static_cast<double>(t) / spec.periodic_period +
                   phase);
      const double jitter =
          rng::uniform_in(-spec.cost_jitter, spec.cost_jitter, spec.seed,
                          cost_stream, static_cast<std::uint64_t>(t));
      cost = std::clamp(spec.crowd_cost_mean + wave + jitter, 0.0, 1.0);
      violation =
          bernoulli_value(spec, viol_stream, t, spec.crowd_violation_mean);
    }
    round.cost[static_cast<std::size_t>(i)] = cost;
    round.violation[static_cast<std::size_t>(i)] = violation;
  }
  return round;
}

ExpertRound ocs_expert_round(const SyntheticExpertSpec& spec, long t) {
  ExpertRound round = synthetic_expert_round(spec, t);
  std::fill(round.cost.begin(), round.cost.end(), 0.0);
  return round;
}

SmoothRound smooth_round(const SmoothInstanceSpec& spec, long t) {
  if (t < 1) throw Error("bad-config", "round index must be >= 1");
  const auto d = static_cast<std::size_t>(spec.dimension);

  // Cost direction: uniform draw from the unit ball.
  Point direction(d);
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    direction[i] = rng::gaussian(spec.seed, 0, static_cast<std::uint64_t>(t),
                                 2 * i);
    norm_sq += direction[i] * direction[i];
  }
  const double norm = std::sqrt(std::max(norm_sq, 1e-300));
  const double magnitude =
      std::pow(rng::uniform(spec.seed, 1, static_cast<std::uint64_t>(t)),
               1.0 / static_cast<double>(d));
  for (double& c : direction) c *= magnitude / norm;

  const Point center = spec.center;
  const double radius = spec.radius;
  const Point target = spec.feasible_point;
  const double diameter_sq = spec.diameter() * spec.diameter();

  SmoothRound round;
  round.cost.value = [direction, center, radius](std::span<const double> x) {
    double inner = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      inner += direction[i] * (x[i] - center[i]);
    }
    return 0.5 * (1.0 + inner / radius);
  };
  round.cost.gradient = [direction, radius](std::span<const double>) {
    Point g(direction.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = direction[i] / (2.0 * radius);
    }
    return g;
  };
  round.cost.declared_lipschitz = 1.0 / (2.0 * radius);
  round.cost.declared_smoothness = 0.0;

  round.violation.value = [target, diameter_sq](std::span<const double> x) {
    double dist_sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double diff = x[i] - target[i];
      dist_sq += diff * diff;
    }
    return dist_sq / diameter_sq;
  };
  round.violation.gradient = [target, diameter_sq](std::span<const double> x) {
    Point g(x.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = 2.0 * (x[i] - target[i]) / diameter_sq;
    }
    return g;
  };
  round.violation.declared_lipschitz = 1.0 / radius;
  round.violation.declared_smoothness = spec.constraint_smoothness();
  return round;
}

Point budget_comparator(const SmoothInstanceSpec& spec, double total_budget) {
  if (total_budget < 0.0) {
    throw Error("bad-config", "budget must be nonnegative");
  }
  Point point = spec.feasible_point;
  if (total_budget == 0.0) return point;
  const double offset =
      spec.diameter() *
      std::sqrt(total_budget / static_cast<double>(spec.horizon));
  point[0] += offset;
  if (!spec.set().contains(point)) {
    throw Error("bad-config",
                "budget comparator leaves the decision set; shrink the budget "
                "or move the feasible point");
  }
  return point;
}

SmoothRound lipschitz1d_round(const Lipschitz1dSpec& spec, long t) {
  if (t < 1 || t > spec.horizon) {
    throw Error("bad-config", "round index outside [1, horizon]");
  }
  const double anchor =
      rng::uniform(spec.seed, 0, static_cast<std::uint64_t>(t));
  const double target = spec.feasible_point;

  // Hinge subgradient convention: zero exactly at the kink.
  auto abs_grad = [](double x, double a) {
    if (x > a) return 1.0;
    if (x < a) return -1.0;
    return 0.0;
  };

  SmoothRound round;
  round.cost.value = [anchor](std::span<const double> x) {
    return std::abs(x[0] - anchor);
  };
  round.cost.gradient = [anchor, abs_grad](std::span<const double> x) {
    return Point{abs_grad(x[0], anchor)};
  };
  round.cost.declared_lipschitz = 1.0;
  round.violation.value = [target](std::span<const double> x) {
    return std::abs(x[0] - target);
  };
  round.violation.gradient = [target, abs_grad](std::span<const double> x) {
    return Point{abs_grad(x[0], target)};
  };
  round.violation.declared_lipschitz = 1.0;
  return round;
}

double stream_scale(const UnboundedStreamSpec& spec, long t) {
  if (spec.scale_period < 1) {
    throw Error("bad-config", "scale period must be >= 1");
  }
  if (!(spec.growth >= 1.0)) {
    throw Error("bad-config", "growth must be >= 1");
  }
  return std::pow(spec.growth, static_cast<double>(t / spec.scale_period));
}

StreamRound unbounded_loss_round(const UnboundedStreamSpec& spec, long t) {
  if (t < 1) throw Error("bad-config", "round index must be >= 1");
  StreamRound round;
  round.scale_bound = stream_scale(spec, t);
  round.loss.resize(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) {
    if (spec.zero_loss_expert && *spec.zero_loss_expert == i) {
      round.loss[static_cast<std::size_t>(i)] = 0.0;
      continue;
    }
    round.loss[static_cast<std::size_t>(i)] =
        round.scale_bound * rng::uniform(spec.seed,
                                         static_cast<std::uint64_t>(i),
                                         static_cast<std::uint64_t>(t));
  }
  return round;
}

}  // namespace coco
