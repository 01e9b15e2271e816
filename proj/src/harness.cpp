#include "coco/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "coco/errors.hpp"
#include "coco/rng.hpp"

namespace coco {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Policy-level failures abort the run tagged with the offending round.
template <typename Fn>
auto at_round(long t, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& err) {
    throw Error(err.code(),
                "round " + std::to_string(t) + ": " + err.message());
  }
}

BoundCheck make_check(std::string name, double lhs, double rhs) {
  BoundCheck check;
  check.name = std::move(name);
  check.lhs = lhs;
  check.rhs = rhs;
  check.pass = lhs <= rhs;
  check.margin = rhs - lhs;
  return check;
}

// Guarantee inequalities for a finished constrained-expert run (also the
// inner instance of a cover run). total_cost is the cumulative expected raw
// cost; cum_cost/cum_violation are per-expert raw sums.
void append_expert_checks(std::vector<BoundCheck>& checks,
                          const ConstrainedExpertPolicy& policy,
                          std::span<const double> cum_cost,
                          std::span<const double> cum_violation,
                          double total_cost, double max_scale_ratio, long t) {
  const HedgeState& hedge = policy.hedge;
  const int n = hedge.n;
  const double log_n = std::log(static_cast<double>(n));
  const double phi_prime_final = policy.ccv.phi_prime();
  const double rate = policy.ccv.lyapunov.rate;
  const double phi_final = phi_prime_final / rate;  // Phi(Q(T)) = e^{rate Q}
  const double phi_start = 1.0;                     // Phi(0)

  checks.push_back(make_check("gamma-ratio", max_scale_ratio, 1.08));

  // Potential-drift decomposition, valid per instance for every expert.
  double worst_gap = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double lhs = phi_final - phi_start + (total_cost - cum_cost[idx]);
    const double rhs = (hedge.algo_loss - hedge.cum_losses[idx]) +
                       phi_prime_final * cum_violation[idx];
    worst_gap = std::max(worst_gap, lhs - rhs);
  }
  const double decomp_tol =
      1e-9 * std::max({1.0, phi_final, hedge.algo_loss});
  checks.push_back(make_check("regret-decomposition", worst_gap, decomp_tol));

  // Surrogate small-loss cap for the best feasible expert, with c = 10.
  const int feasible = best_feasible_comparator(cum_violation, cum_cost);
  const double surrogate_regret =
      hedge.algo_loss - hedge.cum_losses[static_cast<std::size_t>(feasible)];
  const double scale_final = hedge.scale;  // == 1 + Phi'(Q(T))
  const double surrogate_cap =
      kExpertScaleConst *
      (std::sqrt(static_cast<double>(t) * scale_final * log_n) +
       scale_final * log_n);
  checks.push_back(
      make_check("surrogate-small-loss", surrogate_regret, surrogate_cap));

  // Adaptive-hedge small-loss bound against the outright best expert.
  const double best =
      *std::min_element(hedge.cum_losses.begin(), hedge.cum_losses.end());
  checks.push_back(make_check(
      "hedge-small-loss", hedge.algo_loss - best,
      adaptive_regret_bound(best, scale_final, n, hedge.growth_cap)));
}

void finalize(RunRecord& record) {
  record.all_pass = true;
  for (const BoundCheck& check : record.checks) {
    record.all_pass = record.all_pass && check.pass;
  }
}

SyntheticExpertSpec expert_spec_from(const RunConfig& config) {
  SyntheticExpertSpec spec;
  spec.n = config.scale.n_experts;
  spec.horizon = config.scale.horizon;
  spec.seed = config.seed;
  if (spec.n < 13) {
    throw Error("bad-config",
                "the synthetic expert instance needs at least 13 experts so "
                "the designated indices exist");
  }
  return spec;
}

SmoothInstanceSpec smooth_spec_from(const RunConfig& config) {
  SmoothInstanceSpec spec;
  spec.dimension = config.scale.dimension;
  spec.radius = config.scale.diameter / 2.0;
  spec.center.assign(static_cast<std::size_t>(spec.dimension), 0.0);
  spec.feasible_point.assign(static_cast<std::size_t>(spec.dimension), 0.0);
  spec.feasible_point[0] = spec.radius / 2.0;
  spec.horizon = config.scale.horizon;
  spec.seed = config.seed;
  return spec;
}

RunRecord run_expert(const RunConfig& config) {
  const long horizon = config.scale.horizon;
  const bool constrained = config.policy == PolicyKind::kConstrainedExpert;
  const bool ocs = config.environment == EnvironmentKind::kOcsExpert;
  const SyntheticExpertSpec spec = expert_spec_from(config);
  const auto n = static_cast<std::size_t>(spec.n);
  const double baseline_eta =
      config.hedge_eta > 0.0
          ? config.hedge_eta
          : std::sqrt(8.0 * std::log(static_cast<double>(spec.n)) /
                      static_cast<double>(std::max<long>(horizon, 1)));

  RunRecord record;
  record.config = config;
  record.freq_expected.assign(n, 0.0);
  record.freq_sampled.assign(n, 0.0);

  ConstrainedExpertPolicy policy;
  CcvTracker baseline_ccv;
  std::vector<double> baseline_cum(n, 0.0);
  if (constrained) {
    if (horizon > 0) policy = make_constrained_expert(spec.n, horizon, config.scale.beta);
  } else {
    baseline_ccv = CcvTracker{
        0.0, 0, horizon,
        make_lyapunov(lambda_expert(std::max<long>(horizon, 1),
                                    config.scale.beta, spec.n))};
  }

  std::vector<double> cum_cost(n, 0.0);
  std::vector<double> cum_violation(n, 0.0);
  double total_cost = 0.0;
  double max_scale_ratio = 0.0;
  RoundProtocol protocol;

  for (long t = 1; t <= horizon; ++t) {
    ExpertDistribution played =
        constrained ? act(policy)
                    : standard_hedge_distribution(baseline_cum, baseline_eta);
    const double eta_used =
        constrained ? learning_rate(policy.hedge) : baseline_eta;
    protocol.note_action(t);
    protocol.note_reveal(t);
    const ExpertRound round =
        ocs ? ocs_expert_round(spec, t) : synthetic_expert_round(spec, t);

    const double cost_t = dot(round.cost, played.probs);
    const double violation_t = dot(round.violation, played.probs);
    double ccv_t;
    double scale_t;
    if (constrained) {
      const double scale_before = policy.hedge.scale;
      policy = at_round(
          t, [&] { return feedback(std::move(policy), round, played); });
      max_scale_ratio =
          std::max(max_scale_ratio, policy.hedge.scale / scale_before);
      ccv_t = policy.ccv.total;
      scale_t = policy.hedge.scale;
    } else {
      baseline_ccv = ccv_update(baseline_ccv, std::min(violation_t, 1.0));
      const double phi_prime =
          at_round(t, [&] { return baseline_ccv.phi_prime(); });
      const std::vector<double> surrogate =
          surrogate_cost(round.cost, round.violation, phi_prime);
      for (std::size_t i = 0; i < n; ++i) baseline_cum[i] += surrogate[i];
      ccv_t = baseline_ccv.total;
      scale_t = 1.0 + phi_prime;
    }

    for (std::size_t i = 0; i < n; ++i) {
      cum_cost[i] += round.cost[i];
      cum_violation[i] += round.violation[i];
      record.freq_expected[i] += played.probs[i];
    }
    record.freq_sampled[static_cast<std::size_t>(
        sample_expert(played, config.sample_seed, t))] += 1.0;
    total_cost += cost_t;

    record.rows.push_back({t, cost_t, violation_t, ccv_t, eta_used, scale_t,
                           argmax_expert(played)});
    record.round_probs.push_back(std::move(played.probs));
  }

  if (horizon > 0) {
    for (std::size_t i = 0; i < n; ++i) {
      record.freq_expected[i] /= static_cast<double>(horizon);
      record.freq_sampled[i] /= static_cast<double>(horizon);
    }
  }

  const int comparator = best_feasible_comparator(cum_violation, cum_cost);
  record.comparator = ComparatorId{true, comparator, {}};
  record.cum_cost = total_cost;
  record.comparator_cost = cum_cost[static_cast<std::size_t>(comparator)];
  record.regret = record.cum_cost - record.comparator_cost;
  record.ccv = record.rows.empty() ? 0.0 : record.rows.back().ccv;

  if (config.assert_bounds && constrained && horizon > 0) {
    append_expert_checks(record.checks, policy, cum_cost, cum_violation,
                         total_cost, max_scale_ratio, horizon);
  }
  finalize(record);
  return record;
}

RunRecord run_smooth(const RunConfig& config) {
  const long horizon = config.scale.horizon;
  const bool pure = config.policy == PolicyKind::kPureOgdOcs;
  const SmoothInstanceSpec spec = smooth_spec_from(config);
  const double diameter = spec.diameter();
  const double declared_m = config.scale.smoothness;
  const double budget = config.scale.budget;

  LyapunovConfig lyapunov = make_lyapunov(1.0);  // unused in pure mode
  if (!pure && horizon > 0) {
    lyapunov = make_lyapunov(
        budget > 0.0
            ? lambda_budget(horizon, config.scale.beta, budget,
                            config.budget_constant)
            : lambda_smooth(horizon, config.scale.beta, diameter, declared_m));
  }
  SmoothOgdPolicy policy =
      make_smooth_ogd(spec.set(), spec.center, horizon, lyapunov);
  const Point comparator_point =
      pure ? spec.feasible_point : budget_comparator(spec, budget);

  if (horizon > 0) {
    // M and D are trusted config; measure the constraint curvature on
    // sampled secants and warn when the declared constant is too small.
    const double measured = observed_smoothness(
        smooth_round(spec, 1).violation, policy.set, 64, config.seed);
    if (measured > declared_m * (1.0 + 1e-9)) {
      std::fprintf(stderr,
                   "warning: declared smoothness %g below the observed secant "
                   "ratio %g\n",
                   declared_m, measured);
    }
  }

  RunRecord record;
  record.config = config;

  double total_cost = 0.0;
  double comparator_cost = 0.0;
  double surrogate_algo = 0.0;
  double surrogate_comparator = 0.0;
  RoundProtocol protocol;

  for (long t = 1; t <= horizon; ++t) {
    protocol.note_action(t);  // the iterate was fixed before the reveal
    protocol.note_reveal(t);
    const SmoothRound round = smooth_round(spec, t);
    auto [played, next] = at_round(t, [&] {
      return pure ? pure_ogd_ocs_step(std::move(policy), round.violation)
                  : smooth_ogd_step(std::move(policy), round.cost,
                                    round.violation);
    });
    policy = std::move(next);

    const double cost_t = pure ? 0.0 : round.cost.value(played);
    const double violation_t = round.violation.value(played);
    const double phi_prime = pure ? 0.0 : policy.ccv.phi_prime();

    total_cost += cost_t;
    if (!pure) {
      comparator_cost += round.cost.value(comparator_point);
      surrogate_algo += cost_t + phi_prime * violation_t;
      surrogate_comparator += round.cost.value(comparator_point) +
                              phi_prime * round.violation.value(comparator_point);
    }
    record.rows.push_back({t, cost_t, violation_t, policy.ccv.total,
                           policy.last_step_size,
                           pure ? 1.0 : 1.0 + phi_prime, -1});
    record.round_points.push_back(played);
  }

  record.comparator = ComparatorId{false, -1, comparator_point};
  record.cum_cost = total_cost;
  record.comparator_cost = comparator_cost;
  record.regret = total_cost - comparator_cost;
  record.ccv = policy.ccv.total;

  if (config.assert_bounds && horizon > 0) {
    if (pure) {
      record.checks.push_back(
          make_check("ocs-ccv-cap", record.ccv,
                     4.0 * diameter * diameter * declared_m + 1e-6));
    } else {
      const double phi_prime_final = policy.ccv.phi_prime();
      const double cap = smooth_regret_bound(
          static_cast<double>(horizon) + phi_prime_final * budget, diameter,
          declared_m * (1.0 + phi_prime_final));
      record.checks.push_back(make_check("surrogate-ogd-small-loss",
                                         surrogate_algo - surrogate_comparator,
                                         cap));
    }
  }
  finalize(record);
  return record;
}

RunRecord run_cover(const RunConfig& config) {
  const long horizon = config.scale.horizon;
  const double lipschitz = config.scale.lipschitz;
  const bool ball_env = config.environment == EnvironmentKind::kSmoothBall;

  SmoothInstanceSpec ball_spec = smooth_spec_from(config);
  Lipschitz1dSpec line_spec;
  line_spec.horizon = horizon;
  line_spec.seed = config.seed;

  const DecisionSet set = ball_env ? ball_spec.set() : line_spec.set();
  const double delta =
      config.cover_delta > 0.0
          ? config.cover_delta
          : 1.0 / static_cast<double>(std::max<long>(horizon, 1));

  RunRecord record;
  record.config = config;

  const Point witness = ball_env ? ball_spec.feasible_point
                                 : Point{line_spec.feasible_point};

  if (horizon == 0) {
    record.comparator = ComparatorId{false, -1, witness};
    finalize(record);
    return record;
  }

  CoverPolicy policy = make_cover_policy(build_cover(set, delta), horizon,
                                         config.scale.beta, lipschitz);
  const auto n = policy.cover.centers.size();
  record.freq_expected.assign(n, 0.0);
  record.freq_sampled.assign(n, 0.0);

  std::vector<double> cum_cost(n, 0.0);
  std::vector<double> cum_violation(n, 0.0);
  double total_cost = 0.0;
  double comparator_cost = 0.0;
  double outer_ccv = 0.0;
  double inner_cost = 0.0;
  double inner_ccv = 0.0;
  double max_scale_ratio = 0.0;
  RoundProtocol protocol;

  for (long t = 1; t <= horizon; ++t) {
    ExpertDistribution played = act(policy.inner);
    const double eta_used = learning_rate(policy.inner.hedge);
    Point point(static_cast<std::size_t>(set.dimension()), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < point.size(); ++j) {
        point[j] += played.probs[i] * policy.cover.centers[i][j];
      }
    }
    protocol.note_action(t);
    protocol.note_reveal(t);
    const SmoothRound round = ball_env ? smooth_round(ball_spec, t)
                                       : lipschitz1d_round(line_spec, t);

    const ExpertRound expert_round = cover_transform(
        policy.cover, round.cost, round.violation, lipschitz, delta);
    const double cost_t = round.cost.value(point);
    const double violation_t = round.violation.value(point);
    inner_cost += dot(expert_round.cost, played.probs);
    inner_ccv += dot(expert_round.violation, played.probs);

    const double scale_before = policy.inner.hedge.scale;
    policy.inner = at_round(t, [&] {
      return feedback(std::move(policy.inner), expert_round, played);
    });
    max_scale_ratio =
        std::max(max_scale_ratio, policy.inner.hedge.scale / scale_before);

    for (std::size_t i = 0; i < n; ++i) {
      cum_cost[i] += expert_round.cost[i];
      cum_violation[i] += expert_round.violation[i];
      record.freq_expected[i] += played.probs[i];
    }
    record.freq_sampled[static_cast<std::size_t>(
        sample_expert(played, config.sample_seed, t))] += 1.0;

    total_cost += cost_t;
    outer_ccv += violation_t;
    comparator_cost += round.cost.value(witness);

    record.rows.push_back({t, cost_t, violation_t, outer_ccv, eta_used,
                           policy.inner.hedge.scale, argmax_expert(played)});
    record.round_points.push_back(std::move(point));
    record.round_probs.push_back(std::move(played.probs));
  }

  for (std::size_t i = 0; i < n; ++i) {
    record.freq_expected[i] /= static_cast<double>(horizon);
    record.freq_sampled[i] /= static_cast<double>(horizon);
  }

  record.comparator = ComparatorId{false, -1, witness};
  record.cum_cost = total_cost;
  record.comparator_cost = comparator_cost;
  record.regret = total_cost - comparator_cost;
  record.ccv = outer_ccv;
  record.inner_cost = inner_cost;
  record.inner_ccv = inner_ccv;

  if (config.assert_bounds) {
    const double slack =
        lipschitz * delta * static_cast<double>(horizon) + 1e-9;
    record.checks.push_back(
        make_check("cover-slack-cost", total_cost - inner_cost, slack));
    record.checks.push_back(
        make_check("cover-slack-ccv", outer_ccv - inner_ccv, slack));
    append_expert_checks(record.checks, policy.inner, cum_cost, cum_violation,
                         inner_cost, max_scale_ratio, horizon);
  }
  finalize(record);
  return record;
}

void check_compatibility(const RunConfig& config) {
  const bool expert_env =
      config.environment == EnvironmentKind::kSyntheticExpert ||
      config.environment == EnvironmentKind::kOcsExpert;
  switch (config.policy) {
    case PolicyKind::kConstrainedExpert:
    case PolicyKind::kStdHedgeBaseline:
      if (!expert_env) {
        throw Error("incompatible-policy",
                    "expert policies require an expert environment");
      }
      break;
    case PolicyKind::kCoverReduction:
      if (config.environment != EnvironmentKind::kLipschitz1d &&
          config.environment != EnvironmentKind::kSmoothBall) {
        throw Error("incompatible-policy",
                    "cover reduction requires a convex environment");
      }
      break;
    case PolicyKind::kSmoothOgd:
    case PolicyKind::kPureOgdOcs:
      if (config.environment != EnvironmentKind::kSmoothBall) {
        throw Error("incompatible-policy",
                    "gradient policies require the smooth environment");
      }
      break;
  }
}

}  // namespace

int best_feasible_comparator(std::span<const double> cum_violation,
                             std::span<const double> cum_cost) {
  if (cum_violation.size() != cum_cost.size() || cum_violation.empty()) {
    throw Error("bad-config", "comparator needs matching nonempty traces");
  }
  int best = -1;
  for (std::size_t i = 0; i < cum_violation.size(); ++i) {
    if (cum_violation[i] > 1e-12) continue;
    if (best < 0 || cum_cost[i] < cum_cost[static_cast<std::size_t>(best)]) {
      best = static_cast<int>(i);
    }
  }
  if (best < 0) {
    throw Error("infeasible-instance",
                "no expert satisfies the constraints on every round");
  }
  return best;
}

void RoundProtocol::note_action(long t) {
  if (t != acted_through_ + 1) {
    throw Error("protocol-violation",
                "action for round " + std::to_string(t) +
                    " out of order (acted through " +
                    std::to_string(acted_through_) + ")");
  }
  acted_through_ = t;
}

void RoundProtocol::note_reveal(long t) {
  if (t > acted_through_) {
    throw Error("protocol-violation",
                "round " + std::to_string(t) +
                    " revealed before the action was committed");
  }
}

RunRecord run(const RunConfig& config) {
  validate(config.scale);
  check_compatibility(config);
  const auto start = std::chrono::steady_clock::now();
  RunRecord record;
  switch (config.policy) {
    case PolicyKind::kConstrainedExpert:
    case PolicyKind::kStdHedgeBaseline:
      record = run_expert(config);
      break;
    case PolicyKind::kCoverReduction:
      record = run_cover(config);
      break;
    case PolicyKind::kSmoothOgd:
    case PolicyKind::kPureOgdOcs:
      record = run_smooth(config);
      break;
  }
  record.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return record;
}

std::vector<SweepRow> sweep(const RunConfig& base,
                            std::span<const double> betas) {
  if (betas.empty()) throw Error("bad-config", "sweep needs at least one beta");
  std::vector<SweepRow> rows;
  rows.reserve(betas.size());
  for (double beta : betas) {
    RunConfig config = base;
    config.scale.beta = beta;
    config.output.clear();
    const RunRecord record = run(config);
    rows.push_back({beta, record.regret, record.ccv});
  }
  return rows;
}

HedgeRunSummary run_adaptive_hedge(const UnboundedStreamSpec& spec) {
  HedgeState state =
      make_hedge(spec.n, std::max(1.0, spec.growth), /*initial_scale=*/1.0);
  for (long t = 1; t <= spec.horizon; ++t) {
    const ExpertDistribution played = distribution(state);
    const StreamRound round = unbounded_loss_round(spec, t);
    state = observe(std::move(state), round.loss, played, round.scale_bound);
  }
  HedgeRunSummary summary;
  summary.algo_loss = state.algo_loss;
  summary.best_loss =
      *std::min_element(state.cum_losses.begin(), state.cum_losses.end());
  summary.final_scale = state.scale;
  summary.bound = adaptive_regret_bound(summary.best_loss, summary.final_scale,
                                        spec.n, state.growth_cap);
  summary.pass = summary.algo_loss - summary.best_loss <= summary.bound;
  return summary;
}

}  // namespace coco
