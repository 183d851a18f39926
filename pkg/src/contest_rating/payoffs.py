"""One-period worker payoffs under the rating protocol with noisy monitoring.

The platform pays the contest winner the prize attached to its rating
(gamma0 or gamma1) instead of the unit prize. A worker's intent is pushed
through two independent flip channels before it lands: the first stage
(crowdsource/in-house) flips with probability eps1, the second (attack/not)
with probability eps2. Expected payoffs therefore mix a perfect-monitoring
payoff matrix over both workers' realized strategies.

Against a compliant (CN-intending) opponent every strategy's expected
payoff is affine in the prize gamma; payoff_line exposes the (slope,
intercept) pair, which the incentive and design layers reuse heavily.
"""

from __future__ import annotations

import numpy as np

from .params import STRATEGIES, DesignParams, IntrinsicParams, Strategy


def perfect_monitoring_matrix(worker: int, gamma: float, params: IntrinsicParams) -> np.ndarray:
    """4x4 realized-strategy payoff matrix for one worker, rows = own strategy.

    Row/column order is CN, CA, SN, SA. Ties (same realized pair) split the
    prize in expectation, a crowdsourcing side beats an in-house side, and
    between one attacker and one abstainer the attacker takes the contest.
    Cost accounting per cell: own c on crowdsourcing, own s on attacking,
    and the damage d whenever the opponent attacks.
    """
    c = params.cost(worker)
    s = params.attack_cost(worker)
    d = params.d
    g = gamma
    # fmt: off
    return np.array([
        # vs CN            vs CA                vs SN        vs SA
        [g / 2 - c,        -c - d,              g - c,       g - c - d],        # CN
        [g - c - s,        g / 2 - c - s - d,   g - c - s,   g - c - s - d],    # CA
        [0.0,              -d,                  g / 2,       -d],               # SN
        [-s,               -s - d,              g - s,       g / 2 - s - d],    # SA
    ])
    # fmt: on


def realized_mix(intended: Strategy, params: IntrinsicParams) -> np.ndarray:
    """Distribution of the realized strategy given the intent.

    The two stages flip independently: eps1 swaps C/S, eps2 swaps N/A.
    Returned in the CN, CA, SN, SA order; entries sum to one exactly.
    """
    probs = np.empty(4)
    for realized in STRATEGIES:
        p1 = params.eps1 if realized.crowdsources != intended.crowdsources else 1.0 - params.eps1
        p2 = params.eps2 if realized.attacks != intended.attacks else 1.0 - params.eps2
        probs[realized.index] = p1 * p2
    return probs


def expected_payoff(
    worker: int,
    intended: Strategy,
    opponent: Strategy,
    gamma: float,
    params: IntrinsicParams,
) -> float:
    """Expected one-period payoff of `worker` with prize gamma on its rating.

    Both intents are mixed through the flip channels; the prize depends only
    on this worker's own rating, so gamma enters as a scalar here.
    """
    own = realized_mix(intended, params)
    opp = realized_mix(opponent, params)
    return float(own @ perfect_monitoring_matrix(worker, gamma, params) @ opp)


def against_compliant(worker: int, intended: Strategy, gamma: float, params: IntrinsicParams) -> float:
    """Expected payoff against an opponent intending CN."""
    return expected_payoff(worker, intended, Strategy.CN, gamma, params)


def payoff_line(worker: int, intended: Strategy, params: IntrinsicParams) -> tuple[float, float]:
    """(slope, intercept) of gamma -> expected payoff against a compliant opponent.

    Affinity in gamma is exact (the matrix is affine in gamma cell by cell),
    so two evaluations pin the line.
    """
    at0 = against_compliant(worker, intended, 0.0, params)
    at1 = against_compliant(worker, intended, 1.0, params)
    return at1 - at0, at0


def rating_payoff(
    worker: int,
    intended: Strategy,
    rating: int,
    design: DesignParams,
    eta,
    params: IntrinsicParams,
) -> float:
    """One-period payoff at a given own rating, opponent drawn from eta.

    The opponent's rating only matters through matching weights; its
    compliant intent is what the payoff mixes over, so the result is the
    own-rating payoff averaged over the opponent-rating distribution, which
    collapses to a single evaluation at gamma_rating.
    """
    total = 0.0
    for opp_rating in (0, 1):
        total += eta[opp_rating] * against_compliant(worker, intended, design.price(rating), params)
    return total
