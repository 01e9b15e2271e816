#include <cmath>
#include <functional>

#include <doctest.h>

#include "coco/core.hpp"
#include "coco/errors.hpp"
#include "coco/rng.hpp"

using namespace coco;

namespace {
bool throws_code(const std::function<void()>& fn, const std::string& code) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code() == code;
  }
  return false;
}
}  // namespace

TEST_CASE("lyapunov derivative matches the closed form") {
  CHECK(lyapunov_derivative(make_lyapunov(0.5), 0.0) == doctest::Approx(0.5));
  // 0.1 * e^(0.1 * 10)
  CHECK(lyapunov_derivative(make_lyapunov(0.1), 10.0) ==
        doctest::Approx(0.271828182845904524).epsilon(1e-14));
  const double rate = lambda_expert(5000, 0.75, 20);
  CHECK(lyapunov_derivative(make_lyapunov(rate), 0.0) ==
        doctest::Approx(rate).epsilon(1e-14));
}

TEST_CASE("lyapunov derivative overflow is reported") {
  CHECK(throws_code(
      [] { lyapunov_derivative(make_lyapunov(1.0), 1e6); }, "ccv-overflow"));
}

TEST_CASE("lyapunov derivative is log-consistent and monotone") {
  const LyapunovConfig cfg = make_lyapunov(0.05);
  double previous = 0.0;
  for (int s = 0; s < 200; ++s) {
    const double q = 100.0 * rng::uniform(7, 0, s);
    // Phi'(q) * exp(-rate q) == rate within 1e-12 relative.
    const double recovered =
        lyapunov_derivative(cfg, q) * std::exp(-cfg.rate * q);
    CHECK(recovered == doctest::Approx(cfg.rate).epsilon(1e-12));
  }
  // Convexity: Phi' non-decreasing on ordered pairs.
  for (int s = 0; s < 200; ++s) {
    const double a = 50.0 * rng::uniform(8, 0, s);
    const double b = a + 50.0 * rng::uniform(8, 1, s);
    CHECK(lyapunov_derivative(cfg, a) <= lyapunov_derivative(cfg, b));
    previous = b;
  }
  (void)previous;
}

TEST_CASE("expert rate schedule") {
  CHECK(lambda_expert(1, 0.0, 3) ==
        doctest::Approx(0.0455119613313418697).epsilon(1e-14));
  CHECK(lambda_expert(5000, 0.75, 20) ==
        doctest::Approx(0.00198483543656573759).epsilon(1e-14));
  // beta = 1 removes the horizon dependence.
  CHECK(lambda_expert(100, 1.0, 2) ==
        doctest::Approx(0.0721347520444481704).epsilon(1e-14));
  CHECK(lambda_expert(100, 1.0, 2) == lambda_expert(10000, 1.0, 2));
}

TEST_CASE("expert rate keeps the half cap exactly") {
  // rate * 10 * ln N <= 1/2, with equality at beta = 1.
  const long horizons[] = {1, 10, 1000, 50000};
  const double betas[] = {0.0, 0.3, 0.5, 0.75, 1.0};
  const int experts[] = {2, 3, 20, 500};
  for (long horizon : horizons) {
    for (double beta : betas) {
      for (int n : experts) {
        const double rate = lambda_expert(horizon, beta, n);
        CHECK(rate * 10.0 * std::log(static_cast<double>(n)) <= 0.5 + 1e-15);
      }
    }
  }
}

TEST_CASE("smooth rate schedule") {
  CHECK(lambda_smooth(1, 0.0, 1.0, 1.0) == doctest::Approx(0.125));
  CHECK(lambda_smooth(10000, 0.5, 2.0, 2.0) ==
        doctest::Approx(1.5625e-4).epsilon(1e-14));
  CHECK(lambda_smooth(123, 1.0, 1.0, 0.125) == doctest::Approx(1.0));
  CHECK(lambda_smooth(99999, 1.0, 1.0, 0.125) == doctest::Approx(1.0));
}

TEST_CASE("budget rate schedule") {
  // Zero budget falls back to the horizon schedule.
  CHECK(lambda_budget(1000, 0.5, 0.0, 8.0) ==
        doctest::Approx(0.0316227766016837933).epsilon(1e-14));
  CHECK(lambda_budget(1000, 1.0, 100.0, 8.0) == doctest::Approx(1.25e-3));
  CHECK(lambda_budget(729, 2.0 / 3.0, 9.0, 8.0) ==
        doctest::Approx(1.0 / 72.0).epsilon(1e-14));
}

TEST_CASE("ccv tracker accumulates violations") {
  CcvTracker tracker{0.0, 0, 10, make_lyapunov(0.5)};
  tracker = ccv_update(tracker, 0.0);
  CHECK(tracker.total == 0.0);
  CHECK(tracker.round == 1);

  tracker.total = 1.5;
  tracker = ccv_update(tracker, 0.25);
  CHECK(tracker.total == doctest::Approx(1.75));

  CcvTracker full{0.0, 0, 10, make_lyapunov(0.5)};
  for (int t = 0; t < 10; ++t) full = ccv_update(full, 1.0);
  CHECK(full.total == doctest::Approx(10.0));
  CHECK(full.total <= static_cast<double>(full.round));
}

TEST_CASE("ccv tracker rejects unnormalized violations") {
  CcvTracker tracker{0.0, 0, 10, make_lyapunov(0.5)};
  CHECK(throws_code([&] { ccv_update(tracker, -0.1); },
                    "unnormalized-violation"));
  CHECK(throws_code([&] { ccv_update(tracker, 1.5); },
                    "unnormalized-violation"));
}

TEST_CASE("ccv increments stay within [0,1] per round") {
  CcvTracker tracker{0.0, 0, 1000, make_lyapunov(0.01)};
  for (int t = 0; t < 1000; ++t) {
    const double before = tracker.total;
    tracker = ccv_update(tracker, rng::uniform(3, 0, t));
    const double step = tracker.total - before;
    CHECK(step >= 0.0);
    CHECK(step <= 1.0 + 1e-12);
  }
  CHECK(tracker.total <= static_cast<double>(tracker.round));
}

TEST_CASE("normalization maps declared ranges onto the unit square") {
  const Normalizer unit{1.0, 1.0};
  auto [f0, g0] = normalize(0.0, 0.0, unit);
  CHECK(f0 == doctest::Approx(0.5));
  CHECK(g0 == 0.0);

  const Normalizer wide{6.0, 4.0};
  auto [f1, g1] = normalize(3.0, 2.0, wide);
  CHECK(f1 == doctest::Approx(0.75));
  CHECK(g1 == doctest::Approx(0.5));

  auto [f2, g2] = normalize(-6.0, 4.0, wide);
  CHECK(f2 == doctest::Approx(0.0));
  CHECK(g2 == doctest::Approx(1.0));
}

TEST_CASE("normalization rejects out-of-bound inputs") {
  const Normalizer norm{2.0, 1.0};
  CHECK(throws_code([&] { normalize(3.0, 0.5, norm); }, "bound-violation"));
  CHECK(throws_code([&] { normalize(0.0, 1.5, norm); }, "bound-violation"));
  CHECK(throws_code([&] { normalize(0.0, -0.5, norm); }, "bound-violation"));
}

TEST_CASE("normalization is affine and order-preserving") {
  const Normalizer norm{5.0, 3.0};
  for (int s = 0; s < 300; ++s) {
    const double a = rng::uniform_in(-5.0, 5.0, 11, 0, s);
    const double b = rng::uniform_in(-5.0, 5.0, 11, 1, s);
    const double u = rng::uniform_in(0.0, 3.0, 11, 2, s);
    const double v = rng::uniform_in(0.0, 3.0, 11, 3, s);
    auto [fa, gu] = normalize(a, u, norm);
    auto [fb, gv] = normalize(b, v, norm);
    CHECK(fa >= 0.0);
    CHECK(fa <= 1.0);
    CHECK(gu >= 0.0);
    CHECK(gu <= 1.0);
    if (a <= b) CHECK(fa <= fb);
    if (u <= v) CHECK(gu <= gv);
    // Affine in the cost: midpoint maps to midpoint.
    auto [fm, gm] = normalize(0.5 * (a + b), 0.5 * (u + v), norm);
    CHECK(fm == doctest::Approx(0.5 * (fa + fb)).epsilon(1e-12));
    CHECK(gm == doctest::Approx(0.5 * (gu + gv)).epsilon(1e-12));
  }
}

TEST_CASE("problem scale validation") {
  ProblemScale scale;
  scale.horizon = 100;
  validate(scale);
  scale.budget = 101.0;
  CHECK(throws_code([&] { validate(scale); }, "bad-config"));
  scale.budget = 100.0;
  validate(scale);
}
