#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coco/core.hpp"
#include "coco/environments.hpp"

namespace coco {

enum class PolicyKind {
  kConstrainedExpert,
  kCoverReduction,
  kSmoothOgd,
  kPureOgdOcs,
  kStdHedgeBaseline,
};

enum class EnvironmentKind {
  kSyntheticExpert,
  kOcsExpert,
  kSmoothBall,
  kLipschitz1d,
};

std::string to_string(PolicyKind kind);
std::string to_string(EnvironmentKind kind);
PolicyKind policy_from_string(std::string_view name);
EnvironmentKind environment_from_string(std::string_view name);

// Flat key=value run description. Expert policies require expert
// environments and the gradient policies require the smooth environment;
// run() rejects mismatches with "incompatible-policy".
struct RunConfig {
  PolicyKind policy = PolicyKind::kConstrainedExpert;
  EnvironmentKind environment = EnvironmentKind::kSyntheticExpert;
  ProblemScale scale;
  std::uint64_t seed = 0;
  std::uint64_t sample_seed = 1;
  std::string output;          // path stem; empty = no files
  bool assert_bounds = true;
  // std-hedge-baseline rate; 0 = sqrt(8 ln N / T), the classical tuning for
  // unit-bounded losses (which the surrogate costs are not).
  double hedge_eta = 0.0;
  double cover_delta = 0.0;    // 0 = default 1/T
  double budget_constant = 8.0;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// One guarantee inequality evaluated on a finished run.
struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  double margin = 0.0;  // rhs - lhs
};

struct RoundRow {
  long t = 0;
  double cost = 0.0;
  double violation = 0.0;
  double ccv = 0.0;        // Q(t)
  double eta = 0.0;        // rate used to act this round
  double scale = 0.0;      // G_t after the update
  int argmax_expert = -1;  // -1 for point-valued policies
};

struct ComparatorId {
  bool is_expert = false;
  int expert = -1;
  Point point;
};

struct RunRecord {
  RunConfig config;
  std::vector<RoundRow> rows;
  // Per-round distributions for expert runs (empty otherwise).
  std::vector<std::vector<double>> round_probs;
  // Per-round played points for the point-valued policies (empty otherwise).
  std::vector<Point> round_points;
  std::vector<double> freq_expected;
  std::vector<double> freq_sampled;

  ComparatorId comparator;
  double cum_cost = 0.0;
  double comparator_cost = 0.0;
  double regret = 0.0;
  double ccv = 0.0;
  // Cover runs: cumulative expected cost/violation of the inner expert
  // instance, for the reduction-slack checks.
  std::optional<double> inner_cost;
  std::optional<double> inner_ccv;

  std::vector<BoundCheck> checks;
  bool all_pass = true;
  double wall_time_s = 0.0;  // not serialized; files stay byte-stable
};

// Post-hoc comparator for the expert setting: among experts whose violation
// sums to zero, the one with the least cumulative cost (ties to the lowest
// index). Throws "infeasible-instance" when no expert is feasible.
int best_feasible_comparator(std::span<const double> cum_violation,
                             std::span<const double> cum_cost);

// Guards the action-before-reveal protocol: reveal(t) throws
// "protocol-violation" unless the action for round t was recorded first.
class RoundProtocol {
 public:
  void note_action(long t);
  void note_reveal(long t);

 private:
  long acted_through_ = 0;
};

RunRecord run(const RunConfig& config);

struct SweepRow {
  double beta = 0.0;
  double regret = 0.0;
  double ccv = 0.0;
};

// One run per beta with a shared seed.
std::vector<SweepRow> sweep(const RunConfig& base,
                            std::span<const double> betas);

// Serialized artifacts. CSV header:
//   t,cost,violation,Q,eta,G,argmax_expert[,p_0..p_{N-1} when N <= 32]
// The JSON summary echoes the config and is parseable back into a RunConfig.
std::string render_csv(const RunRecord& record);
std::string render_json(const RunRecord& record);
std::string render_frequency_csv(const RunRecord& record);
std::string render_gnuplot(const RunRecord& record, const std::string& stem);
std::string render_sweep_csv(std::span<const SweepRow> rows);
std::string render_sweep_gnuplot(const std::string& stem);
RunConfig config_from_json_text(const std::string& json_text);

// format is "csv" or "json". Honors the COCO_OUTPUT_DIR override; surfaces
// I/O failures as "io-error" with the path.
void emit(const RunRecord& record, std::string_view format,
          const std::string& path);
// Writes <stem>.csv, <stem>.json, <stem>.gp and, for expert runs,
// <stem>_freq.csv. Returns the resolved stem after the directory override.
std::string emit_run_files(const RunRecord& record, const std::string& stem);

// Re-checks the stored verdicts of a summary JSON; true iff every recorded
// inequality still holds and no verdict was stored as failing.
bool check_bounds_record(const std::string& json_text,
                         std::vector<BoundCheck>* parsed = nullptr);

// Adaptive-hedge driver for the unbounded stress stream, with the small-loss
// bound evaluated on the completed run.
struct HedgeRunSummary {
  double algo_loss = 0.0;
  double best_loss = 0.0;
  double final_scale = 1.0;
  double bound = 0.0;
  bool pass = false;
};

HedgeRunSummary run_adaptive_hedge(const UnboundedStreamSpec& spec);

}  // namespace coco
