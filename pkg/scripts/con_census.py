#!/usr/bin/env python3
"""Census of congruence lattices over the named small lattices.

Prints |Con(L)|, the join-irreducible count, and whether the two
enumeration algorithms agree (they must; disagreement would falsify one).
"""

import argparse
import time

from latcon import all_congruences, catalog, join_irreducibles


def named_lattices():
    for n in range(1, 7):
        yield f"chain({n})", catalog.chain(n)
    for k in range(4):
        yield f"boolean({k})", catalog.boolean(k)
    yield "m3", catalog.m3()
    yield "n5", catalog.n5()
    yield "n5^op", catalog.n5().dual()
    for p, q in [(2, 2), (2, 3), (2, 4), (3, 3)]:
        yield f"grid({p},{q})", catalog.grid(p, q)
    yield "boolean(2)+chain(2)", catalog.ordinal_sum(catalog.boolean(2), catalog.chain(2))
    yield "m3+m3", catalog.ordinal_sum(catalog.m3(), catalog.m3())


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--algorithm", choices=["brute", "generated", "both"], default="both"
    )
    args = parser.parse_args()
    for name, lat in named_lattices():
        started = time.perf_counter()
        con = all_congruences(lat, algorithm=args.algorithm)
        elapsed = time.perf_counter() - started
        print(
            f"{name:22s} n={lat.size:3d}  |Con|={len(con):4d}  "
            f"join-irreducible={len(join_irreducibles(con)):3d}  "
            f"[{args.algorithm}, {elapsed:.3f}s]"
        )


if __name__ == "__main__":
    main()
