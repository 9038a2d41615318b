"""Write fringe CSVs for the optimal two-path states and their N00N counterparts.

Each file sweeps the first path's phase; the optimal states swing between
N and 0 while the N00N states stay flat at N.

    python3 scripts/fringe_gallery.py --out fringes/ --samples 360
"""

import argparse
import pathlib

import numpy as np

from young.interference import fringe_curve
from young.reference_cases import TWO_PATH_OPTIMA, noon_state, two_path_state


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="fringes")
    parser.add_argument("--samples", type=int, default=360)
    args = parser.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for n, moduli in TWO_PATH_OPTIMA.items():
        cases = {f"optimal_{n}photon": two_path_state(moduli)}
        if n > 1:
            cases[f"noon_{n}photon"] = noon_state(n)
        for name, state in cases.items():
            curve = fringe_curve(state, 0, args.samples)
            (out / f"{name}.csv").write_text(curve.to_csv())
            lo, hi = float(np.min(curve.intensities)), float(np.max(curve.intensities))
            print(f"{name:<18} min {lo:8.5f}  max {hi:8.5f}")


if __name__ == "__main__":
    main()
