"""How far an exhaustive grid minimum sits above the refined torus minimum.

The gap should shrink like (2 pi / resolution)^2. This is the reason a
fixed-resolution grid cannot agree with the refined value to 1e-6 for
generic states.

    python3 scripts/grid_gap.py --states 20
"""

import argparse

import numpy as np

from young import oracle
from young.fock import random_state
from young.optimize import minimize_intensity_phases


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--states", type=int, default=20)
    parser.add_argument("--seed", type=int, default=70)
    parser.add_argument("--resolutions", default="64,128,256,512,1024")
    args = parser.parse_args()

    resolutions = [int(r) for r in args.resolutions.split(",")]
    rng = np.random.default_rng(args.seed)
    states = [random_state(3, int(rng.integers(1, 4)), rng) for _ in range(args.states)]
    refined = [minimize_intensity_phases(s)[1] for s in states]

    print(f"{'resolution':>10} {'median gap':>12} {'max gap':>12} {'min gap':>12}")
    for res in resolutions:
        gaps = np.array([oracle.grid_search_min(s, res)[1] - r for s, r in zip(states, refined)])
        print(f"{res:>10} {np.median(gaps):>12.3e} {gaps.max():>12.3e} {gaps.min():>12.3e}")


if __name__ == "__main__":
    main()
