#!/usr/bin/env python3
"""Sweep the graded-field / spectral-diameter classifier over a (k, n, char) grid.

Example:
    python scripts/classifier_grid.py --max-n 12 --chars 0 2 3 5 7
"""

from __future__ import annotations

import argparse
import json

from qhgrass.degree_zero import classify


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=10)
    parser.add_argument("--chars", type=int, nargs="+", default=[0, 2, 3, 5, 7])
    parser.add_argument("--json", action="store_true", help="one JSON verdict per line")
    args = parser.parse_args()

    header = f"{'Gr(k,n)':>9}  {'char':>4}  {'field':>5}  {'diameter':>12}  orbits"
    if not args.json:
        print(header)
        print("-" * len(header))
    for n in range(2, args.max_n + 1):
        for k in range(1, n // 2 + 1):
            for char in args.chars:
                verdict = classify(k, n, char)
                if args.json:
                    print(json.dumps(verdict.to_json_dict()))
                    continue
                diameter = verdict.diameter.kind
                if verdict.diameter.bound is not None:
                    diameter = f"<= {verdict.diameter.bound}"
                orbits = ""
                if verdict.orbit_count is not None:
                    orbits = f"{verdict.orbit_count} {verdict.field_dims}"
                print(
                    f"{f'Gr({k},{n})':>9}  {char:>4}  {str(verdict.is_graded_field):>5}"
                    f"  {diameter:>12}  {orbits}"
                )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
