#include "coco/core.hpp"

#include <cmath>
#include <string>

#include "coco/errors.hpp"

namespace coco {

namespace {
// exp() overflows a double just above this.
constexpr double kMaxExpArg = 709.0;
constexpr double kViolationSlack = 1e-9;
}  // namespace

LyapunovConfig make_lyapunov(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error("bad-config", "Lyapunov rate must be positive, got " +
                                  std::to_string(rate));
  }
  return LyapunovConfig{rate};
}

double log_lyapunov_derivative(const LyapunovConfig& cfg, double ccv) {
  return std::log(cfg.rate) + cfg.rate * ccv;
}

double lyapunov_derivative(const LyapunovConfig& cfg, double ccv) {
  const double log_value = log_lyapunov_derivative(cfg, ccv);
  if (log_value > kMaxExpArg) {
    throw Error("ccv-overflow",
                "Phi'(Q) exceeds double range: log value " +
                    std::to_string(log_value) + " with rate " +
                    std::to_string(cfg.rate) + ", ccv " + std::to_string(ccv));
  }
  return std::exp(log_value);
}

CcvTracker ccv_update(CcvTracker tracker, double violation) {
  if (!(violation >= 0.0) || violation > 1.0 + kViolationSlack) {
    throw Error("unnormalized-violation",
                "per-round violation must lie in [0,1], got " +
                    std::to_string(violation));
  }
  tracker.total += std::min(violation, 1.0);
  tracker.round += 1;
  return tracker;
}

namespace {

double horizon_factor(long horizon, double beta) {
  if (horizon < 1) throw Error("bad-config", "horizon must be >= 1");
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw Error("bad-config", "beta must lie in [0,1]");
  }
  return std::pow(static_cast<double>(horizon), -(1.0 - beta));
}

}  // namespace

double lambda_expert(long horizon, double beta, int n_experts) {
  if (n_experts < 2) throw Error("bad-config", "need at least 2 experts");
  return horizon_factor(horizon, beta) /
         (20.0 * std::log(static_cast<double>(n_experts)));
}

double lambda_smooth(long horizon, double beta, double diameter,
                     double smoothness) {
  if (!(diameter > 0.0) || !(smoothness > 0.0)) {
    throw Error("bad-config", "diameter and smoothness must be positive");
  }
  return horizon_factor(horizon, beta) /
         (8.0 * diameter * diameter * smoothness);
}

double lambda_budget(long horizon, double beta, double budget,
                     double budget_constant) {
  if (!(budget_constant > 0.0)) {
    throw Error("bad-config", "budget constant must be positive");
  }
  if (budget < 0.0) throw Error("bad-config", "budget must be nonnegative");
  const double base = horizon_factor(horizon, beta);
  if (budget == 0.0) return base;
  return std::min(1.0 / (budget_constant * budget), base);
}

void validate(const ProblemScale& scale) {
  if (scale.horizon < 0) throw Error("bad-config", "horizon must be >= 0");
  if (!(scale.beta >= 0.0 && scale.beta <= 1.0)) {
    throw Error("bad-config", "beta must lie in [0,1]");
  }
  if (scale.n_experts < 2) throw Error("bad-config", "need at least 2 experts");
  if (scale.dimension < 1) throw Error("bad-config", "dimension must be >= 1");
  if (!(scale.diameter > 0.0)) throw Error("bad-config", "diameter must be positive");
  if (!(scale.lipschitz > 0.0)) throw Error("bad-config", "lipschitz must be positive");
  if (!(scale.smoothness > 0.0)) throw Error("bad-config", "smoothness must be positive");
  if (scale.budget < 0.0) throw Error("bad-config", "budget must be nonnegative");
  // The all-feasible relaxation makes any budget beyond T vacuous.
  if (scale.budget > static_cast<double>(scale.horizon)) {
    throw Error("bad-config", "budget must not exceed the horizon");
  }
}

std::pair<double, double> normalize(double raw_cost, double raw_violation,
                                    const Normalizer& norm) {
  if (!(norm.cost_bound > 0.0) || !(norm.violation_bound > 0.0)) {
    throw Error("bad-config", "normalizer bounds must be positive");
  }
  if (std::abs(raw_cost) > norm.cost_bound * (1.0 + 1e-12)) {
    throw Error("bound-violation", "|cost| " + std::to_string(raw_cost) +
                                       " exceeds declared bound " +
                                       std::to_string(norm.cost_bound));
  }
  if (raw_violation < 0.0 ||
      raw_violation > norm.violation_bound * (1.0 + 1e-12)) {
    throw Error("bound-violation",
                "violation " + std::to_string(raw_violation) +
                    " outside [0, " + std::to_string(norm.violation_bound) +
                    "]");
  }
  return {raw_cost / (2.0 * norm.cost_bound) + 0.5,
          raw_violation / norm.violation_bound};
}

}  // namespace coco
