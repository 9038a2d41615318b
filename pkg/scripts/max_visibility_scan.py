"""Search for the largest visibility over all input states for small L and N.

Prints one row per (L, N) and optionally writes the full reports as JSON.

    python3 scripts/max_visibility_scan.py --max-modes 4 --max-photons 4 --starts 8
"""

import argparse
import json
import time

from young import optimize as opt
from young.interference import visibility


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-modes", type=int, default=4)
    parser.add_argument("--max-photons", type=int, default=4)
    parser.add_argument("--starts", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", help="write every optimum report to this file")
    args = parser.parse_args()

    cfg = opt.CoeffOptConfig(starts=args.starts, seed=args.seed)
    reports = []
    print(f"{'L':>2} {'N':>2} {'balanced V':>12} {'best V':>14} {'worst start':>14} {'residual':>10} {'secs':>6}")
    for modes in range(2, args.max_modes + 1):
        for photons in range(1, args.max_photons + 1):
            t0 = time.perf_counter()
            best = opt.maximize_visibility_coefficients(modes, photons, cfg)
            took = time.perf_counter() - t0
            balanced = visibility(opt.balanced_product_state(modes, photons)).visibility
            print(
                f"{modes:>2} {photons:>2} {balanced:>12.9f} {best.visibility.visibility:>14.12f}"
                f" {min(best.start_visibilities):>14.12f} {best.lagrange_residual:>10.2e} {took:>6.2f}"
            )
            reports.append({"modes": modes, "photons": photons, **best.to_dict()})

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(reports, fh, indent=2)


if __name__ == "__main__":
    main()
