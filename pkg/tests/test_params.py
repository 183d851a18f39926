"""Parameter containers, validation, error aggregation, and config parsing."""

import dataclasses
import math

import pytest
from hypothesis import given

from conftest import intrinsic_params
from contest_rating import (
    ConfigError,
    DesignParams,
    IntrinsicParams,
    Rating,
    STRATEGIES,
    Strategy,
    default_params,
    design_violations,
    error_aggregate,
    load_config,
    parse_config,
    validate,
    with_params,
)

CONFIG_TEXT = """\
# environment
c1=0.1
c2=0.2
s1=0.2
s2=0.1
d=0.5

delta=0.95
eps1=0.2
eps2=0.05
"""


def test_defaults_validate_clean(defaults):
    report = validate(defaults)
    assert report.ok
    assert report.violations == ()
    assert report.warnings == ()


def test_default_values(defaults):
    assert defaults.c1 == 0.1
    assert defaults.c2 == 0.2
    assert defaults.s1 == 0.2
    assert defaults.s2 == 0.1
    assert defaults.d == 0.5
    assert defaults.delta == 0.95
    assert defaults.eps1 == 0.2
    assert defaults.eps2 == 0.05


def test_error_aggregate_defaults(defaults):
    err_any, err_free = error_aggregate(defaults)
    assert err_any == pytest.approx(0.24, abs=1e-15)
    assert err_free == pytest.approx(0.76, abs=1e-15)
    assert defaults.detection_margin == pytest.approx(0.72, abs=1e-15)


def test_error_aggregate_no_errors():
    p = default_params(eps1=0.0, eps2=0.0)
    assert error_aggregate(p) == (0.0, 1.0)


@given(intrinsic_params())
def test_error_split_sums_to_one_exactly(p):
    err_any, err_free = error_aggregate(p)
    assert 0.0 <= err_any < 1.0
    assert 0.0 < err_free <= 1.0
    assert err_any + err_free == 1.0


@given(intrinsic_params())
def test_validate_accepts_strategy_range(p):
    assert validate(p).ok


def test_validate_is_idempotent(defaults):
    assert validate(defaults) == validate(defaults)


@pytest.mark.parametrize(
    "overrides",
    [
        {"eps1": 0.5},
        {"eps1": 1.0},
        {"eps2": 0.5},
        {"delta": 1.0},
        {"delta": -0.01},
        {"c1": 0.0},
        {"c1": 1.0},
        {"s2": 0.0},
        {"d": 0.0},
        {"d": 1.0},
    ],
)
def test_validate_rejects_boundaries(overrides):
    report = validate(default_params(**overrides))
    assert not report.ok
    assert len(report.violations) == 1


def test_validate_delta_message():
    report = validate(default_params(delta=1.0))
    assert any("delta" in v and "[0, 1)" in v for v in report.violations)


def test_attack_cost_above_damage_warns():
    report = validate(default_params(s1=0.6))
    assert report.ok  # warning, not a violation
    assert any("s1" in w and "damage" in w for w in report.warnings)


def test_params_are_frozen(defaults):
    with pytest.raises(dataclasses.FrozenInstanceError):
        defaults.c1 = 0.3


def test_with_params_override(defaults):
    p = with_params(defaults, c1=0.3)
    assert p.c1 == 0.3
    assert p.c2 == defaults.c2


def test_worker_accessors(defaults):
    assert defaults.cost(1) == defaults.c1
    assert defaults.cost(2) == defaults.c2
    assert defaults.attack_cost(1) == defaults.s1
    assert defaults.attack_cost(2) == defaults.s2
    with pytest.raises(ValueError):
        defaults.cost(3)


def test_strategy_order_and_flags():
    assert [s.value for s in STRATEGIES] == ["CN", "CA", "SN", "SA"]
    assert Strategy.CN.crowdsources and not Strategy.CN.attacks
    assert Strategy.CA.crowdsources and Strategy.CA.attacks
    assert not Strategy.SN.crowdsources and not Strategy.SN.attacks
    assert not Strategy.SA.crowdsources and Strategy.SA.attacks
    assert [s.index for s in STRATEGIES] == [0, 1, 2, 3]


def test_rating_labels():
    assert int(Rating.BAD) == 0
    assert int(Rating.GOOD) == 1


def test_design_price():
    design = DesignParams(0.5, 0.5, 0.7, 0.1)
    assert design.price(Rating.GOOD) == 0.7
    assert design.price(0) == 0.1


def test_design_violations_optimizer_rules():
    assert design_violations(DesignParams(1.0, 0.5, 0.5, 0.0)) == ()
    assert design_violations(DesignParams(0.0, 0.5, 0.5, 0.0)) != ()
    assert design_violations(DesignParams(0.5, 0.5, 0.5, 0.5)) != ()
    assert design_violations(DesignParams(0.5, 0.5, 1.2, 0.0)) != ()


def test_design_violations_closed_square():
    # check/simulate accept the closed unit square, including beta=0 and
    # a flat price schedule
    assert design_violations(DesignParams(0.5, 0.0, 0.5, 0.5), require_price_gap=False) == ()
    assert design_violations(DesignParams(1.5, 0.5, 0.5, 0.0), require_price_gap=False) != ()


def test_parse_config_round_trip(defaults):
    assert parse_config(CONFIG_TEXT) == defaults


def test_parse_config_inline_comment_and_spaces():
    text = CONFIG_TEXT.replace("c1=0.1", "  c1 = 0.1  # crowdsourcing cost")
    assert parse_config(text).c1 == 0.1


def test_parse_config_missing_key():
    text = CONFIG_TEXT.replace("c2=0.2\n", "")
    with pytest.raises(ConfigError, match="missing key: 'c2'"):
        parse_config(text)


def test_parse_config_unknown_key():
    with pytest.raises(ConfigError, match=r"unknown key: 'cc' \(line 2\)"):
        parse_config("c1=0.1\ncc=0.2\n" + CONFIG_TEXT)


def test_parse_config_duplicate_key():
    with pytest.raises(ConfigError, match="duplicate key"):
        parse_config(CONFIG_TEXT + "c1=0.3\n")


def test_parse_config_shape_errors():
    with pytest.raises(ConfigError, match="expected key=value"):
        parse_config(CONFIG_TEXT + "what is this\n")
    with pytest.raises(ConfigError, match="not a plain decimal"):
        parse_config(CONFIG_TEXT.replace("d=0.5", "d=5e-1"))


def test_parse_config_rejects_out_of_range():
    with pytest.raises(ConfigError):
        parse_config(CONFIG_TEXT.replace("delta=0.95", "delta=1.0"))


def test_load_config(tmp_path, defaults):
    path = tmp_path / "env.cfg"
    path.write_text(CONFIG_TEXT)
    assert load_config(str(path)) == defaults


def test_load_config_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_config(str(tmp_path / "nope.cfg"))


def test_intrinsic_params_equality_and_hash(defaults):
    again = IntrinsicParams(0.1, 0.2, 0.2, 0.1, 0.5, 0.95, 0.2, 0.05)
    assert again == defaults
    assert hash(again) == hash(defaults)


def test_detection_margin_positive_on_valid_range():
    # the monitored-action informativeness margin is positive whenever
    # eps1 < 1 and eps2 < 1/2, i.e. on the whole validated range
    worst = default_params(eps1=0.449, eps2=0.449)
    assert worst.detection_margin > 0.0
    assert math.isclose(
        worst.detection_margin, (1 - 0.449) * (1 - 2 * 0.449), rel_tol=1e-12
    )
