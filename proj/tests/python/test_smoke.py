"""Smoke tests for the python bindings."""

import json
import math

import pytest

import coco


def test_rate_schedules():
    assert coco.lambda_expert(1, 0.0, 3) == pytest.approx(1 / (20 * math.log(3)))
    assert coco.lambda_expert(100, 1.0, 2) == pytest.approx(1 / (20 * math.log(2)))
    assert coco.lambda_smooth(10000, 0.5, 2.0, 2.0) == pytest.approx(1.5625e-4)
    assert coco.lambda_budget(1000, 1.0, 100.0, 8.0) == pytest.approx(1.25e-3)
    assert coco.lyapunov_derivative(0.1, 10.0) == pytest.approx(0.1 * math.e)


def test_normalize_and_bounds():
    assert coco.normalize(3.0, 2.0, 6.0, 4.0) == pytest.approx((0.75, 0.5))
    with pytest.raises(coco.CocoError):
        coco.normalize(9.0, 0.0, 6.0, 4.0)
    assert coco.adaptive_regret_bound(0.0, 1.0, 2, 1.0) == pytest.approx(
        7 * math.log(2)
    )
    assert coco.smooth_regret_bound(0.0, 1.0, 1.0) == pytest.approx(4.0)
    assert coco.cover_size_bound(1.0, 2.0, 3) == pytest.approx(8.0)


def test_hedge_round_trip():
    hedge = coco.Hedge(4)
    probs = hedge.distribution()
    assert probs == pytest.approx([0.25] * 4)
    hedge.observe([1.0, 0.0, 0.5, 0.5], probs, 1.0)
    assert hedge.algo_loss == pytest.approx(0.5)
    after = hedge.distribution()
    assert after[1] == max(after)


def test_constrained_expert_policy():
    policy = coco.ConstrainedExpertPolicy(3, 100, 0.5)
    played = policy.act()
    assert played == pytest.approx([1 / 3] * 3)
    policy.feedback([0.2, 0.4, 0.9], [0.0, 1.0, 1.0], played)
    assert policy.ccv == pytest.approx(2 / 3)
    assert policy.scale == pytest.approx(
        1.0 + coco.lyapunov_derivative(policy.rate, policy.ccv)
    )
    assert policy.act()[0] == max(policy.act())


def test_geometry():
    simplex = coco.DecisionSet("simplex", n=3)
    projected = simplex.project([0.5, 0.5, 0.5])
    assert projected == pytest.approx([1 / 3] * 3)
    assert simplex.contains(projected)

    interval = coco.DecisionSet("box", lower=[0.0], upper=[1.0])
    centers = coco.build_cover(interval, 0.5)
    assert [c[0] for c in centers] == pytest.approx([0.25, 0.75])

    ball = coco.DecisionSet("ball", center=[0.0, 0.0], radius=1.0)
    assert ball.project([2.0, 0.0]) == pytest.approx([1.0, 0.0])


CONFIG = """
policy = constrained-expert
environment = synthetic-expert
horizon = 800
n_experts = 20
beta = 0.75
seed = 5
"""


def test_run_summary_round_trip():
    summary = json.loads(coco.run_summary_json(CONFIG))
    assert summary["all_pass"] is True
    assert summary["comparator"]["kind"] == "expert"
    assert summary["ccv"] <= 800.0
    names = {check["name"] for check in summary["checks"]}
    assert "gamma-ratio" in names
    assert "surrogate-small-loss" in names
    # Determinism: identical configs give identical summaries.
    assert coco.run_summary_json(CONFIG) == coco.run_summary_json(CONFIG)


def test_run_to_files(tmp_path):
    stem = coco.run_to_files(CONFIG, str(tmp_path / "smoke"))
    for suffix in (".csv", ".json", ".gp", "_freq.csv"):
        assert (tmp_path / ("smoke" + suffix)).exists()
    header = (tmp_path / "smoke.csv").read_text().splitlines()[0]
    assert header.startswith("t,cost,violation,Q,eta,G,argmax_expert")
    assert stem == str(tmp_path / "smoke")
