#pragma once

#include <cstdint>
#include <utility>

namespace coco {

// Exponential potential Phi(x) = exp(rate * x) applied to the cumulative
// constraint violation. Non-decreasing and convex for any rate > 0.
struct LyapunovConfig {
  double rate = 1.0;
};

LyapunovConfig make_lyapunov(double rate);

// log(Phi'(q)) = log(rate) + rate * q. Kept in log space so callers can defer
// exponentiation to the point of use.
double log_lyapunov_derivative(const LyapunovConfig& cfg, double ccv);

// Phi'(q) = rate * exp(rate * q). Throws "ccv-overflow" if the value does not
// fit in a double; unreachable under the rate schedules below, which is itself
// asserted by the harness.
double lyapunov_derivative(const LyapunovConfig& cfg, double ccv);

// Running cumulative constraint violation Q(t). Updates are additive with
// per-round violations in [0, 1], so total <= round always.
struct CcvTracker {
  double total = 0.0;
  long round = 0;
  long horizon = 0;
  LyapunovConfig lyapunov{};

  double phi_prime() const { return lyapunov_derivative(lyapunov, total); }
};

// Throws "unnormalized-violation" unless violation is in [0, 1] (a hair of
// floating-point slack above 1 is clamped).
CcvTracker ccv_update(CcvTracker tracker, double violation);

// Rate schedules. Each returns the Lyapunov rate for one policy family:
//   expert:  T^{-(1-beta)} / (20 ln N)
//   smooth:  T^{-(1-beta)} / (8 D^2 M)
//   budget:  min(1 / (c * B), T^{-(1-beta)}), first branch dropped when B = 0
double lambda_expert(long horizon, double beta, int n_experts);
double lambda_smooth(long horizon, double beta, double diameter,
                     double smoothness);
double lambda_budget(long horizon, double beta, double budget,
                     double budget_constant);

// Problem-level constants shared by policies and the harness.
struct ProblemScale {
  long horizon = 1;        // T
  double beta = 0.0;       // trade-off knob in [0, 1]
  int n_experts = 2;       // expert setting
  int dimension = 1;       // convex setting
  double diameter = 1.0;   // D
  double lipschitz = 1.0;  // G
  double smoothness = 1.0; // M
  double budget = 0.0;     // B_T, 0 = strict feasibility
};

void validate(const ProblemScale& scale);

// Affine rescaling of raw cost/violation onto [0, 1]:
//   cost f -> f / (2 K_f) + 1/2,  violation g -> g / K_g.
struct Normalizer {
  double cost_bound = 1.0;       // K_f
  double violation_bound = 1.0;  // K_g
};

// Throws "bound-violation" when an input exceeds its declared bound.
std::pair<double, double> normalize(double raw_cost, double raw_violation,
                                    const Normalizer& norm);

}  // namespace coco
