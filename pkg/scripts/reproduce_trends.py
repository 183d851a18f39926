"""Print the designed-prize and requester-utility trends along each axis.

Re-optimizes the protocol while sweeping one environment parameter at a
time and prints gamma1* and U_P per grid point, with a one-word verdict on
the direction of each curve. The damage sweep is the interesting one: the
optimized utility drifts with d instead of staying flat.
"""

import argparse
import sys

import numpy as np

from contest_rating import DesignerConfig, Infeasible, default_params, optimize, with_params

SWEEPS = [
    # (label, base overrides, key, grid)
    ("c1 (c2=0.05)", dict(c2=0.05), "c1", np.arange(0.05, 0.451, 0.05)),
    ("s1", {}, "s1", np.arange(0.05, 0.451, 0.05)),
    ("s2", {}, "s2", np.arange(0.05, 0.451, 0.05)),
    ("d", {}, "d", np.arange(0.30, 0.701, 0.05)),
    ("delta", {}, "delta", np.arange(0.56, 0.981, 0.06)),
    ("eps1", {}, "eps1", np.arange(0.02, 0.341, 0.04)),
    ("eps2", {}, "eps2", np.arange(0.01, 0.171, 0.02)),
]


def direction(values, slack=1e-6):
    values = [v for v in values if v is not None]
    if len(values) < 2:
        return "degenerate"
    up = all(b >= a - slack for a, b in zip(values, values[1:]))
    down = all(b <= a + slack for a, b in zip(values, values[1:]))
    if up and down:
        return "constant"
    if up:
        return "nondecreasing"
    if down:
        return "nonincreasing"
    return "nonmonotone"


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid-m", type=int, default=100, help="gamma1 grid resolution")
    args = parser.parse_args(argv)
    config = DesignerConfig(gamma_grid_m=args.grid_m)

    for label, overrides, key, grid in SWEEPS:
        base = default_params(**overrides)
        print(f"== sweep {label} ==")
        prizes, utilities = [], []
        for value in grid:
            try:
                outcome = optimize(with_params(base, **{key: float(value)}), config)
            except Infeasible:
                print(f"  {key}={value:.2f}  infeasible")
                prizes.append(None)
                utilities.append(None)
                continue
            prizes.append(outcome.gamma1)
            utilities.append(outcome.utility)
            print(
                f"  {key}={value:.2f}  gamma1*={outcome.gamma1:.2f}  "
                f"U={outcome.utility:+.6f}  ({outcome.case_id})"
            )
        print(f"  gamma1* is {direction(prizes)}; U is {direction(utilities)}")
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
