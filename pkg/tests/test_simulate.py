"""Monte-Carlo simulator: reproducibility, degenerate corners, analytic agreement."""

import numpy as np
import pytest

from contest_rating import (
    DesignParams,
    SimConfig,
    SimResult,
    default_params,
    deviation_value,
    lifetime_values,
    run_chain,
    run_utility,
    with_params,
)

HALF = DesignParams(0.5, 0.5, 0.5, 0.0)


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(periods=0)
    with pytest.raises(ValueError):
        SimConfig(replicates=1)
    with pytest.raises(ValueError):
        SimConfig(population=0)
    with pytest.raises(ValueError):
        SimConfig(deviate_worker=1)  # rating missing
    with pytest.raises(ValueError):
        SimConfig(deviate_worker=3, deviate_rating=1)
    with pytest.raises(ValueError):
        SimConfig(deviate_worker=1, deviate_rating=2)


def test_chain_is_reproducible(defaults):
    config = SimConfig(periods=120, replicates=4, population=12, seed=42)
    a = run_chain(HALF, defaults, config)
    b = run_chain(HALF, defaults, config)
    assert a == b
    assert a.rows() == b.rows()
    c = run_chain(HALF, defaults, SimConfig(periods=120, replicates=4, population=12, seed=43))
    assert c["eta0"].empirical != a["eta0"].empirical


def test_chain_tracks_stationary_law(defaults):
    config = SimConfig(periods=400, replicates=8, population=30, seed=11)
    result = run_chain(HALF, defaults, config)
    assert {e.metric for e in result.estimates} == {"eta0", "eta1", "social"}
    for e in result.estimates:
        assert abs(e.z) < 4.0, f"{e.metric}: z = {e.z}"
    assert result["eta0"].analytic == pytest.approx(0.24, abs=1e-12)
    assert result["social"].analytic == pytest.approx(0.38, abs=1e-12)
    # the two rating shares are one partition, so they sum to one exactly
    total = result["eta0"].empirical + result["eta1"].empirical
    assert total == pytest.approx(1.0, abs=1e-12)
    assert result.promotions > 0 and result.demotions > 0


def test_chain_without_flips_never_demotes(defaults):
    p = with_params(defaults, eps1=0.0, eps2=0.0)
    result = run_chain(HALF, p, SimConfig(periods=50, replicates=2, population=10, seed=0))
    assert result.demotions == 0
    assert result["eta0"].empirical == 0.0
    assert result["eta1"].empirical == 1.0


def test_chain_without_demotion_channel(defaults):
    design = DesignParams(0.5, 0.0, 0.5, 0.0)
    result = run_chain(design, defaults, SimConfig(periods=50, replicates=2, population=10, seed=0))
    assert result.demotions == 0
    assert result["eta0"].empirical == 0.0


def test_utility_requires_long_horizon(defaults):
    with pytest.raises(ValueError, match="horizon too short"):
        run_utility(HALF, defaults, SimConfig(periods=100, replicates=4, population=10))


def test_utility_one_period_when_myopic(defaults):
    # delta = 0 turns the discounted sum into the first period alone
    p = with_params(defaults, delta=0.0)
    config = SimConfig(periods=1, replicates=8, population=200, seed=3)
    result = run_utility(HALF, p, config)
    assert {e.metric for e in result.estimates} == {
        "vinf_w1_r0", "vinf_w2_r0", "vinf_w1_r1", "vinf_w2_r1",
    }
    assert result["vinf_w1_r0"].analytic == pytest.approx(-0.115, abs=1e-12)
    for e in result.estimates:
        assert abs(e.z) < 4.0, f"{e.metric}: z = {e.z}"


def test_utility_matches_solver_at_design(defaults, optimum):
    design = optimum.design()
    config = SimConfig(periods=270, replicates=12, population=200, seed=5)
    result = run_utility(design, defaults, config)
    for worker in (1, 2):
        values = lifetime_values(design, defaults, worker)
        for rating in (0, 1):
            e = result[f"vinf_w{worker}_r{rating}"]
            assert e.analytic == pytest.approx(values[rating], abs=1e-12)
            assert abs(e.z) < 4.0, f"{e.metric}: z = {e.z}"


def test_deviation_run_reports_only_the_deviator(defaults, optimum):
    design = optimum.design()
    base = dict(periods=270, replicates=12, population=200, seed=5)
    compliant = run_utility(design, defaults, SimConfig(**base))
    result = run_utility(
        design, defaults, SimConfig(**base, deviate_worker=1, deviate_rating=1)
    )
    assert {e.metric for e in result.estimates} == {
        "vinf_w1_r0", "vinf_w2_r0", "vinf_w1_r1_dev",
    }
    dev = result["vinf_w1_r1_dev"]
    assert dev.analytic == pytest.approx(deviation_value(1, design, defaults, 1), abs=1e-12)
    assert abs(dev.z) < 4.0
    # a sustainable design leaves the one-shot attack weakly unprofitable
    assert dev.analytic <= compliant["vinf_w1_r1"].analytic + 1e-12
    # the rating-0 block shares its seed stream with the compliant run
    assert result["vinf_w1_r0"] == compliant["vinf_w1_r0"]
    assert result["vinf_w2_r0"] == compliant["vinf_w2_r0"]


def test_result_lookup_and_rows(defaults):
    result = run_chain(HALF, defaults, SimConfig(periods=20, replicates=2, population=5, seed=1))
    with pytest.raises(KeyError):
        result["no_such_metric"]
    assert SimResult.CSV_HEADER == "metric,analytic,empirical,stderr,z"
    for row in result.rows():
        assert len(row.split(",")) == 5


def test_estimate_z_guard(defaults):
    # stderr 0 with exact agreement is a clean z of 0, not a 0/0
    p = with_params(defaults, eps1=0.0, eps2=0.0)
    result = run_chain(HALF, p, SimConfig(periods=30, replicates=2, population=6, seed=0))
    assert result["eta0"].stderr == 0.0
    assert result["eta0"].z == 0.0
