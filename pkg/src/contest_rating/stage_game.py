"""Ex-ante payoffs of the unregulated one-shot contest.

Both workers hold private productivity draws p_i ~ U[0, 1] (iid). Each
first chooses whether to crowdsource (C), which costs c_i and adds its
cost as a handicap relative to an in-house opponent, or stay in-house (S).
The stronger solution wins the unit prize; a worker leading by no more
than the attack damage d secures the win by attacking, at its own attack
cost s_i. Losing events pay zero. All expressions below are ex ante over
the productivity draws; productivity_mc re-derives them by seeded Monte
Carlo over the same event accounting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .params import IntrinsicParams

CASES = (("C", "C"), ("S", "S"), ("C", "S"), ("S", "C"))


def even_match_payoff(worker: int, params: IntrinsicParams) -> float:
    """Expected prize when both workers take the same first-stage action.

    1/2 - s_i*d + s_i*d^2/2: a fair contest, less the attack exposure of
    narrow leads. Effort costs are not included here.
    """
    s = params.attack_cost(worker)
    return 0.5 - s * params.d + s * params.d**2 / 2.0


def solo_effort_payoff(worker: int, params: IntrinsicParams) -> float:
    """Expected payoff of the lone crowdsourcing worker against an in-house opponent.

    Requires c_i + d <= 1, otherwise the derivation's case split is void.
    """
    c = params.cost(worker)
    s = params.attack_cost(worker)
    d = params.d
    if c + d > 1.0:
        raise DomainError(f"c{worker} + d = {c + d:g} exceeds 1; closed form not valid there")
    return (d - (c + d) ** 2 / 2.0) * (1.0 - c - s) + (1.0 - c - d) ** 2 * (1.0 - c) / 2.0


def first_stage_payoffs(
    action1: str, action2: str, params: IntrinsicParams
) -> tuple[float, float]:
    """Ex-ante payoff pair for one first-stage action profile.

    Crowdsourcing cost enters the symmetric profiles as the half it is paid
    in expectation (c_i/2 nets against the mirrored contest); the lone
    crowdsourcing worker's cost is already inside solo_effort_payoff.
    """
    case = (action1, action2)
    if case == ("C", "C"):
        return (
            even_match_payoff(1, params) - params.c1 / 2.0,
            even_match_payoff(2, params) - params.c2 / 2.0,
        )
    if case == ("S", "S"):
        return even_match_payoff(1, params), even_match_payoff(2, params)
    if case == ("C", "S"):
        return solo_effort_payoff(1, params), 0.0
    if case == ("S", "C"):
        return 0.0, solo_effort_payoff(2, params)
    raise ValueError(f"unknown first-stage profile: {case!r}")


def first_stage_matrix(params: IntrinsicParams) -> dict[tuple[str, str], tuple[float, float]]:
    """All four ex-ante payoff pairs keyed by (action1, action2)."""
    return {case: first_stage_payoffs(*case, params) for case in CASES}


@dataclass(frozen=True)
class McStagePayoffs:
    case: tuple[str, str]
    v1: float
    v2: float
    stderr1: float
    stderr2: float
    samples: int
    seed: int

    CSV_HEADER = "case,v1,v2,stderr,samples,seed"

    def csv_row(self) -> str:
        from .tableio import csv_line

        return csv_line(
            [
                "".join(self.case),
                self.v1,
                self.v2,
                max(self.stderr1, self.stderr2),
                self.samples,
                self.seed,
            ]
        )


def productivity_mc(
    action1: str,
    action2: str,
    params: IntrinsicParams,
    samples: int = 1_000_000,
    seed: int = 0,
) -> McStagePayoffs:
    """Monte-Carlo ex-ante payoffs under iid uniform productivity draws.

    Event accounting mirrors the closed forms case by case. In symmetric
    profiles the contest is even: a lead above d wins cleanly for 1 - cost,
    a lead in (0, d] wins by attacking for 1 - cost - s, losing pays 0 (the
    crowdsourcing fee is a prize share, so it is only paid on wins). In
    mixed profiles only the crowdsourcing side can win the prize, and it
    must clear the in-house benchmark by its own fee c before the same
    clean/attack split applies; the in-house side is paid 0 identically.
    """
    if samples < 10_000:
        raise ValueError(f"samples too small for a meaningful estimate: {samples}")
    if (action1, action2) not in CASES:
        raise ValueError(f"unknown first-stage profile: {(action1, action2)!r}")
    rng = np.random.default_rng(seed)
    p1 = rng.random(samples)
    p2 = rng.random(samples)
    d = params.d
    if action1 == action2:
        cost1 = params.c1 if action1 == "C" else 0.0
        cost2 = params.c2 if action2 == "C" else 0.0
        lead = p1 - p2
        pay1 = _event_payoffs(lead, d, cost1, params.s1)
        pay2 = _event_payoffs(-lead, d, cost2, params.s2)
    elif action1 == "C":
        pay1 = _event_payoffs(p1 - p2 - params.c1, d, params.c1, params.s1)
        pay2 = np.zeros_like(p2)
    else:
        pay2 = _event_payoffs(p2 - p1 - params.c2, d, params.c2, params.s2)
        pay1 = np.zeros_like(p1)
    v1, se1 = float(pay1.mean()), float(pay1.std(ddof=1) / np.sqrt(samples))
    v2, se2 = float(pay2.mean()), float(pay2.std(ddof=1) / np.sqrt(samples))
    return McStagePayoffs((action1, action2), v1, v2, se1, se2, samples, seed)


def _event_payoffs(lead: np.ndarray, d: float, cost: float, s: float) -> np.ndarray:
    # Losing events pay exactly zero, matching the closed-form accounting.
    win_clean = lead > d
    win_attack = (lead > 0.0) & ~win_clean
    out = np.zeros_like(lead)
    out[win_clean] = 1.0 - cost
    out[win_attack] = 1.0 - cost - s
    return out
