"""Incentive analysis of compliant play under the rating protocol.

A compliant worker intends CN at every rating. Its lifetime discounted
value solves a two-state fixed point in the own-rating chain; the protocol
is sustainable when a one-shot switch to CA (the monitored deviation) is
unprofitable at both ratings. The same inequalities, rearranged at
gamma0 = 0, become affine constraints on (alpha, beta) whose intersection
is the designer's feasible band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDenominator
from .params import DesignParams, IntrinsicParams, Strategy
from .payoffs import against_compliant, payoff_line
from .ratings import transition_kernel


@dataclass(frozen=True)
class LifetimeValues:
    """Discounted compliant values by starting rating."""

    v0: float
    v1: float

    def __getitem__(self, rating: int) -> float:
        return self.v1 if rating else self.v0


def one_period_values(design: DesignParams, params: IntrinsicParams, worker: int) -> np.ndarray:
    """Per-rating compliant payoffs [v_CN(gamma0), v_CN(gamma1)]."""
    return np.array(
        [
            against_compliant(worker, Strategy.CN, design.gamma0, params),
            against_compliant(worker, Strategy.CN, design.gamma1, params),
        ]
    )


def lifetime_values(design: DesignParams, params: IntrinsicParams, worker: int) -> LifetimeValues:
    """Solve (I - delta*K) v = r for the compliant two-state value function."""
    kernel = transition_kernel(Strategy.CN, design, params)
    reward = one_period_values(design, params, worker)
    v = np.linalg.solve(np.eye(2) - params.delta * kernel, reward)
    return LifetimeValues(v0=float(v[0]), v1=float(v[1]))


def lifetime_values_iterative(
    design: DesignParams, params: IntrinsicParams, worker: int, steps: int = 1000
) -> LifetimeValues:
    """Value iteration from zero; converges geometrically at rate delta."""
    kernel = transition_kernel(Strategy.CN, design, params)
    reward = one_period_values(design, params, worker)
    v = np.zeros(2)
    for _ in range(steps):
        v = reward + params.delta * (kernel @ v)
    return LifetimeValues(v0=float(v[0]), v1=float(v[1]))


def rating_gap(design: DesignParams, params: IntrinsicParams, worker: int) -> float:
    """Closed form of v1 - v0 for the compliant worker.

    The two-state fixed point collapses: the gap is the per-period prize
    advantage divided by one minus the discounted probability of keeping
    the current rating differential.
    """
    slope, intercept = payoff_line(worker, Strategy.CN, params)
    prize_edge = slope * (design.gamma1 - design.gamma0)
    turnover = design.beta * params.error_any + design.alpha * params.error_free
    return prize_edge / (1.0 - params.delta * (1.0 - turnover))


def deviation_value(
    rating: int, design: DesignParams, params: IntrinsicParams, worker: int
) -> float:
    """Value of intending CA once at `rating`, then complying forever."""
    values = lifetime_values(design, params, worker)
    row = transition_kernel(Strategy.CA, design, params)[rating]
    one_shot = against_compliant(worker, Strategy.CA, design.price(rating), params)
    return one_shot + params.delta * (row[0] * values.v0 + row[1] * values.v1)


def compliance_margins(alpha, beta, gamma1, gamma0, params: IntrinsicParams, worker: int):
    """Deviation margins and participation value, numpy-broadcasting.

    Returns (m0, m1, v0): m_theta = delta * weight_theta * D * gap -
    deviation gain at theta, with weight 0 = alpha and weight 1 = beta, and
    v0 the lifetime compliant value at the low rating. The margins are the
    one-shot-deviation inequalities cleared of their (possibly vanishing)
    denominators, so they stay finite at delta = 0 or beta = 0 and share
    the sign of the textbook thresholds wherever those are defined.
    """
    cn_slope, cn_icept = payoff_line(worker, Strategy.CN, params)
    ca_slope, ca_icept = payoff_line(worker, Strategy.CA, params)
    v_cn0 = cn_slope * gamma0 + cn_icept
    v_cn1 = cn_slope * gamma1 + cn_icept
    gain0 = (ca_slope - cn_slope) * gamma0 + (ca_icept - cn_icept)
    gain1 = (ca_slope - cn_slope) * gamma1 + (ca_icept - cn_icept)
    turnover = beta * params.error_any + alpha * params.error_free
    gap = (v_cn1 - v_cn0) / (1.0 - params.delta * (1.0 - turnover))
    detect = params.delta * params.detection_margin
    m0 = detect * alpha * gap - gain0
    m1 = detect * beta * gap - gain1
    v0 = (v_cn0 + params.delta * alpha * params.error_free * gap) / (1.0 - params.delta)
    return m0, m1, v0


def _gap_threshold(gain: float, weight: float) -> float:
    # threshold form gain / weight, with the vacuous/impossible limits
    # pinned when the weight vanishes.
    if weight > 0.0:
        return gain / weight
    return math.inf if gain > 0.0 else -math.inf


@dataclass(frozen=True)
class WorkerIncentives:
    worker: int
    gap: float
    gain0: float
    gain1: float
    threshold0: float
    threshold1: float
    margin_combined: float
    margin0: float
    margin1: float
    lifetime: LifetimeValues
    deviation0: float
    deviation1: float
    sustainable: bool


@dataclass(frozen=True)
class SustainabilityReport:
    design: DesignParams
    workers: tuple[WorkerIncentives, ...]
    sustainable: bool
    tolerance: float
    one_period_table: dict | None = None
    ca_dominant: dict | None = None

    def rows(self) -> list[tuple]:
        """(worker, constraint id, margin) rows; gap-unit combined margin may be +-inf."""
        out = []
        for w in self.workers:
            out.append((w.worker, "deviation-rating0", w.margin0))
            out.append((w.worker, "deviation-rating1", w.margin1))
            out.append((w.worker, "combined-gap-units", w.margin_combined))
            out.append((w.worker, "participation", w.lifetime.v0))
        return out


def is_sustainable(
    design: DesignParams,
    params: IntrinsicParams,
    tolerance: float = 1e-9,
    strict: bool = False,
) -> SustainabilityReport:
    """One-shot-deviation check of CA at both ratings, for both workers.

    The verdict uses the cleared-denominator margins at weak tolerance;
    the report also carries the gap-unit thresholds (infinite when the
    corresponding correction channel is shut) and the raw lifetime and
    deviation values so callers can re-derive everything.

    With strict=True the report includes each strategy's one-period payoff
    at both prizes and whether CA is the most profitable deviation there;
    this is a diagnostic, not part of the verdict.
    """
    workers = []
    for worker in (1, 2):
        m0, m1, v0 = compliance_margins(
            design.alpha, design.beta, design.gamma1, design.gamma0, params, worker
        )
        gap = rating_gap(design, params, worker)
        cn_slope, cn_icept = payoff_line(worker, Strategy.CN, params)
        ca_slope, ca_icept = payoff_line(worker, Strategy.CA, params)
        gain0 = (ca_slope - cn_slope) * design.gamma0 + (ca_icept - cn_icept)
        gain1 = (ca_slope - cn_slope) * design.gamma1 + (ca_icept - cn_icept)
        detect = params.delta * params.detection_margin
        th0 = _gap_threshold(gain0, detect * design.alpha)
        th1 = _gap_threshold(gain1, detect * design.beta)
        values = lifetime_values(design, params, worker)
        workers.append(
            WorkerIncentives(
                worker=worker,
                gap=gap,
                gain0=gain0,
                gain1=gain1,
                threshold0=th0,
                threshold1=th1,
                margin_combined=gap - max(th0, th1),
                margin0=float(m0),
                margin1=float(m1),
                lifetime=values,
                deviation0=deviation_value(0, design, params, worker),
                deviation1=deviation_value(1, design, params, worker),
                sustainable=bool(m0 >= -tolerance and m1 >= -tolerance),
            )
        )
    table = None
    dominant = None
    if strict:
        table = {}
        dominant = {}
        for worker in (1, 2):
            for rating in (0, 1):
                prize = design.price(rating)
                per = {
                    strat.value: against_compliant(worker, strat, prize, params)
                    for strat in Strategy
                }
                table[(worker, rating)] = per
                dominant[(worker, rating)] = per["CA"] >= max(per["SN"], per["SA"]) - tolerance
    return SustainabilityReport(
        design=design,
        workers=tuple(workers),
        sustainable=all(w.sustainable for w in workers),
        tolerance=tolerance,
        one_period_table=table,
        ca_dominant=dominant,
    )


@dataclass(frozen=True)
class ConstraintCoefficients:
    """Affine (alpha, beta) constraint coefficients at gamma0 = 0.

    beta >= k1*alpha + b1 and beta >= k2*alpha + b2 are the rating-0 and
    rating-1 deviation constraints; beta <= k3*alpha + b3 is participation.
    b1 = b3 always; the k1 line sits below beta = 0 on the unit square, so
    it never binds there (kept for completeness).
    """

    worker: int
    gamma1: float
    k1: float
    b1: float
    k2: float
    b2: float
    k3: float
    b3: float


def _guarded(numer: float, denom: float, what: str) -> float:
    if abs(denom) < 1e-12:
        raise DegenerateDenominator(f"{what} denominator vanished: {denom!r}")
    return numer / denom


def constraint_coefficients(
    gamma1: float, params: IntrinsicParams, worker: int
) -> ConstraintCoefficients:
    """Rearranged sustainability and participation constraints at gamma0 = 0."""
    cn_slope, cn_icept = payoff_line(worker, Strategy.CN, params)
    ca_slope, ca_icept = payoff_line(worker, Strategy.CA, params)
    v_cn0 = cn_icept
    v_cn1 = cn_slope * gamma1 + cn_icept
    gain0 = ca_icept - cn_icept
    gain1 = (ca_slope - cn_slope) * gamma1 + (ca_icept - cn_icept)
    edge = v_cn1 - v_cn0
    err_any = params.error_any
    err_free = params.error_free
    detect = params.detection_margin
    delta = params.delta
    b1 = -_guarded(1.0 - delta, delta * err_any, "b1")
    k1 = _guarded(detect * edge - err_free * gain0, err_any * gain0, "k1")
    k2 = _guarded(err_free * gain1, detect * edge - err_any * gain1, "k2")
    b2 = k2 * (1.0 - delta) / (delta * err_free)  # delta > 0 ensured by b1 guard
    k3 = _guarded(-err_free * v_cn1, err_any * v_cn0, "k3")
    b3 = b1
    return ConstraintCoefficients(
        worker=worker, gamma1=gamma1, k1=k1, b1=b1, k2=k2, b2=b2, k3=k3, b3=b3
    )


def _linear_interval(a: float, b: float, lo: float, hi: float) -> tuple[float, float]:
    """Clip [lo, hi] to the solutions of a*x <= b; empty -> (inf, -inf)."""
    if a > 0.0:
        return lo, min(hi, b / a)
    if a < 0.0:
        return max(lo, b / a), hi
    return (lo, hi) if b >= 0.0 else (math.inf, -math.inf)


@dataclass(frozen=True)
class FeasibilityBand:
    """Affine feasible region in the (alpha, beta) unit square at gamma0 = 0.

    Membership: beta between the binding lower line (largest k2, the
    rating-1 deviation constraint) and the binding upper line (smallest
    k3, participation), inside (0, 1]^2. alpha_interval is the projection
    onto the alpha axis; the band is empty iff the interval is.
    """

    gamma1: float
    coefficients: tuple[ConstraintCoefficients, ConstraintCoefficients]
    lower_worker: int
    upper_worker: int
    uses_k1: bool
    alpha_interval: tuple[float, float] | None

    @property
    def lower(self) -> tuple[float, float]:
        c = self.coefficients[self.lower_worker - 1]
        return c.k2, c.b2

    @property
    def upper(self) -> tuple[float, float]:
        c = self.coefficients[self.upper_worker - 1]
        return c.k3, c.b3

    @property
    def empty(self) -> bool:
        return self.alpha_interval is None

    def contains(self, alpha: float, beta: float, tolerance: float = 1e-9) -> bool:
        if not (0.0 < alpha <= 1.0 and 0.0 < beta <= 1.0):
            return False
        k2, b2 = self.lower
        k3, b3 = self.upper
        if beta < k2 * alpha + b2 - tolerance:
            return False
        if beta > k3 * alpha + b3 + tolerance:
            return False
        if self.uses_k1:
            k1 = max(c.k1 for c in self.coefficients)
            b1 = self.coefficients[0].b1  # b1 is worker-independent
            if beta < k1 * alpha + b1 - tolerance:
                return False
        return True


def feasibility_band(
    gamma1: float, params: IntrinsicParams, uses_k1: bool = False
) -> FeasibilityBand:
    """Combine both workers' constraints into one band at gamma0 = 0.

    b2 is proportional to k2 with a common positive factor and b3 is
    worker-independent, so the worker with the larger k2 owns the pointwise
    highest lower line and the worker with the smaller k3 the lowest upper
    line; no crossing inside the square can change the binding worker.
    """
    coeffs = tuple(constraint_coefficients(gamma1, params, w) for w in (1, 2))
    low = max(coeffs, key=lambda c: c.k2)
    up = min(coeffs, key=lambda c: c.k3)
    lo_a, hi_a = 0.0, 1.0
    # lower line <= upper line, lower line <= 1, upper line > 0 (so that
    # some beta in (0, 1] fits); each is linear in alpha.
    lo1, hi1 = _linear_interval(low.k2 - up.k3, up.b3 - low.b2, lo_a, hi_a)
    lo2, hi2 = _linear_interval(low.k2, 1.0 - low.b2, lo_a, hi_a)
    lo3, hi3 = _linear_interval(-up.k3, up.b3 - 1e-15, lo_a, hi_a)
    lo = max(lo1, lo2, lo3)
    hi = min(hi1, hi2, hi3)
    if uses_k1:
        k1 = max(c.k1 for c in coeffs)
        b1 = coeffs[0].b1
        lo4, hi4 = _linear_interval(k1 - up.k3, up.b3 - b1, lo_a, hi_a)
        lo5, hi5 = _linear_interval(k1, 1.0 - b1, lo_a, hi_a)
        lo = max(lo, lo4, lo5)
        hi = min(hi, hi4, hi5)
    # alpha itself must be strictly positive; an interval pinched to {0} is empty
    interval = (lo, hi) if (lo <= hi and hi > 0.0) else None
    return FeasibilityBand(
        gamma1=gamma1,
        coefficients=coeffs,
        lower_worker=low.worker,
        upper_worker=up.worker,
        uses_k1=uses_k1,
        alpha_interval=interval,
    )
