#include "coco/hedge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coco/errors.hpp"

namespace coco {

namespace {
constexpr double kRatioSlack = 1e-12;

// Softmax of -weights with max subtraction. Equal weights map to exactly
// equal probabilities.
ExpertDistribution softmax_of_negated(std::span<const double> weights) {
  const double lowest = *std::min_element(weights.begin(), weights.end());
  std::vector<double> probs(weights.size());
  double z = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    probs[i] = std::exp(-(weights[i] - lowest));
    z += probs[i];
  }
  for (double& p : probs) p /= z;
  return ExpertDistribution{std::move(probs)};
}
}  // namespace

int argmax_expert(const ExpertDistribution& dist) {
  if (dist.probs.empty()) throw Error("bad-config", "empty distribution");
  int best = 0;
  for (int i = 1; i < static_cast<int>(dist.probs.size()); ++i) {
    if (dist.probs[i] > dist.probs[best]) best = i;
  }
  return best;
}

HedgeState make_hedge(int n, double growth_cap, double initial_scale) {
  if (n < 2) throw Error("bad-config", "need at least 2 experts");
  if (!(growth_cap >= 1.0)) {
    throw Error("bad-config", "growth cap must be >= 1");
  }
  if (!(initial_scale > 0.0)) {
    throw Error("bad-config", "initial scale must be positive");
  }
  HedgeState state;
  state.n = n;
  state.cum_losses.assign(static_cast<std::size_t>(n), 0.0);
  state.scale = initial_scale;
  state.growth_cap = growth_cap;
  return state;
}

double learning_rate(const HedgeState& state) {
  const double log_n = std::log(static_cast<double>(state.n));
  return std::sqrt(log_n / (state.scale *
                            (state.algo_loss + state.growth_cap * state.scale)));
}

ExpertDistribution distribution(const HedgeState& state) {
  const double eta = learning_rate(state);
  std::vector<double> weights(state.cum_losses.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = eta * state.cum_losses[i];
  }
  return softmax_of_negated(weights);
}

HedgeState observe(HedgeState state, std::span<const double> loss,
                   const ExpertDistribution& played, double scale_bound) {
  if (static_cast<int>(loss.size()) != state.n ||
      static_cast<int>(played.probs.size()) != state.n) {
    throw Error("bad-config", "loss/distribution size mismatch");
  }
  double mass = 0.0;
  for (double p : played.probs) {
    if (p < 0.0) throw Error("bad-config", "negative probability");
    mass += p;
  }
  if (std::abs(mass - 1.0) > 1e-9) {
    throw Error("bad-config", "distribution mass " + std::to_string(mass) +
                                  " is not 1");
  }
  if (scale_bound < state.scale * (1.0 - kRatioSlack)) {
    throw Error("scale-regression",
                "scale bound " + std::to_string(scale_bound) +
                    " below current scale " + std::to_string(state.scale));
  }
  if (scale_bound > state.scale * state.growth_cap * (1.0 + kRatioSlack)) {
    throw Error("gamma-violation",
                "scale ratio " + std::to_string(scale_bound / state.scale) +
                    " exceeds growth cap " + std::to_string(state.growth_cap));
  }
  double inner = 0.0;
  for (std::size_t i = 0; i < loss.size(); ++i) {
    if (loss[i] < 0.0) {
      throw Error("negative-loss", "losses must be nonnegative");
    }
    if (loss[i] > scale_bound * (1.0 + kRatioSlack)) {
      throw Error("loss-exceeds-scale",
                  "loss component " + std::to_string(loss[i]) +
                      " above declared bound " + std::to_string(scale_bound));
    }
    inner += loss[i] * played.probs[i];
    state.cum_losses[i] += loss[i];
  }
  state.algo_loss += inner;
  state.scale = std::max(state.scale, scale_bound);
  state.round += 1;
  return state;
}

double adaptive_regret_bound(double comparator_loss, double final_scale, int n,
                             double growth_cap) {
  const double log_n = std::log(static_cast<double>(n));
  return 2.0 * growth_cap * std::sqrt(comparator_loss * final_scale * log_n) +
         7.0 * growth_cap * growth_cap * final_scale * log_n;
}

ExpertDistribution standard_hedge_distribution(
    std::span<const double> cum_losses, double eta) {
  if (!(eta > 0.0)) throw Error("bad-config", "eta must be positive");
  if (cum_losses.empty()) throw Error("bad-config", "empty loss vector");
  std::vector<double> weights(cum_losses.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = eta * cum_losses[i];
  }
  return softmax_of_negated(weights);
}

}  // namespace coco
