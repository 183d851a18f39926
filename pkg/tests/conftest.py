"""Shared fixtures and hypothesis strategies for the test suite.

The random-parameter strategies stay inside the validated ranges (and a
little away from the boundaries so closed-form denominators keep healthy
magnitudes); tests that exercise degenerate edges construct those points
explicitly instead.
"""

import pytest
from hypothesis import strategies as st

from contest_rating import DesignParams, IntrinsicParams, default_params, optimize


def _floats(lo, hi):
    return st.floats(min_value=lo, max_value=hi, allow_nan=False, allow_infinity=False)


@st.composite
def intrinsic_params(draw, delta_min=0.0, delta_max=0.98, eps_min=0.0, eps_max=0.45):
    """A valid parameter set; costs bounded so c_i + d <= 1 holds too."""
    return IntrinsicParams(
        c1=draw(_floats(0.01, 0.45)),
        c2=draw(_floats(0.01, 0.45)),
        s1=draw(_floats(0.01, 0.45)),
        s2=draw(_floats(0.01, 0.45)),
        d=draw(_floats(0.05, 0.55)),
        delta=draw(_floats(delta_min, delta_max)),
        eps1=draw(_floats(eps_min, eps_max)),
        eps2=draw(_floats(eps_min, eps_max)),
    )


@st.composite
def design_params(draw, gamma0_max=0.0):
    """A protocol with alpha, beta in (0, 1] and 0 <= gamma0 < gamma1 <= 1."""
    gamma0 = draw(_floats(0.0, gamma0_max)) if gamma0_max > 0.0 else 0.0
    gamma1 = draw(_floats(gamma0 + 0.01, 1.0))
    return DesignParams(
        alpha=draw(_floats(0.01, 1.0)),
        beta=draw(_floats(0.01, 1.0)),
        gamma1=gamma1,
        gamma0=gamma0,
    )


@pytest.fixture(scope="session")
def defaults():
    return default_params()


@pytest.fixture(scope="session")
def optimum(defaults):
    return optimize(defaults)
