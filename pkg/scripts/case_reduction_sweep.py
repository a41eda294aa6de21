#!/usr/bin/env python3
"""Measure how many cases the cover-level check examines vs the full scan.

For each grid up to --max-dim, instrument both checkers on the full-collapse
partition and on every congruence, and print the worst (largest) ratio seen.
The cover-level number grows with the number of two-cover elements only,
while the full scan grows with n * (sum of squared block sizes).
"""

import argparse

from latcon import (
    all_congruences,
    catalog,
    certify_interval_blocks,
    congruences_generated,
    count_configurations,
    total_partition,
)


def sweep_grid(p: int, q: int) -> None:
    lat = catalog.grid(p, q)
    ip = certify_interval_blocks(lat, total_partition(lat.size))
    covers_count, naive_count = count_configurations(lat, ip)
    worst = covers_count / naive_count
    congruences = (
        all_congruences(lat).congruences
        if lat.size <= 10
        else congruences_generated(lat)
    )
    for part in congruences:
        c, n = count_configurations(lat, certify_interval_blocks(lat, part))
        worst = max(worst, c / n)
    print(
        f"grid({p},{q})  n={lat.size:3d}  collapse: {covers_count:5d} vs "
        f"{naive_count:7d}  ratio={covers_count / naive_count:.6f}  "
        f"worst over {len(congruences)} congruences: {worst:.6f}"
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-dim", type=int, default=5)
    args = parser.parse_args()
    for p in range(2, args.max_dim + 1):
        for q in range(p, args.max_dim + 1):
            sweep_grid(p, q)


if __name__ == "__main__":
    main()
