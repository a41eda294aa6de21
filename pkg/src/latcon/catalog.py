"""Constructors for the standard small lattices used throughout the suites.

Labelings are frozen so witness elements in tests and fixtures stay stable:
chains count upward from 0, boolean lattices use subset bitmasks, products
are row-major in the left factor.
"""

from __future__ import annotations

from .lattice import FiniteLattice, TooLarge, build_from_covers

PRODUCT_LIMIT = 4096


def chain(n: int) -> FiniteLattice:
    """The n-element chain 0 < 1 < ... < n-1."""
    return build_from_covers(n, [(i, i + 1) for i in range(n - 1)])


def boolean(k: int) -> FiniteLattice:
    """The lattice of subsets of a k-set, labeled by bitmasks."""
    if k < 0:
        raise ValueError(f"boolean(k) needs k >= 0, got {k}")
    n = 1 << k
    covers = [
        (x, x | (1 << i))
        for x in range(n)
        for i in range(k)
        if not x >> i & 1
    ]
    return build_from_covers(n, covers)


def covering_square() -> FiniteLattice:
    """The four-element square: two incomparable elements with joint bounds."""
    return boolean(2)


def m3() -> FiniteLattice:
    """Bottom 0, three pairwise-incomparable atoms 1, 2, 3, top 4."""
    return build_from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def n5() -> FiniteLattice:
    """The pentagon: 0 < 1 < 3 < 4 on one side, 0 < 2 < 4 on the other."""
    return build_from_covers(5, [(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)])


def direct_product(
    left: FiniteLattice, right: FiniteLattice, max_size: int = PRODUCT_LIMIT
) -> FiniteLattice:
    """Componentwise order on pairs; (a, b) is labeled a * |right| + b."""
    n = left.size * right.size
    if n > max_size:
        raise TooLarge(n, max_size, "direct product")
    nr = right.size
    covers = []
    for a in range(left.size):
        for b in range(right.size):
            base = a * nr + b
            for a2 in left.upper_covers(a):
                covers.append((base, a2 * nr + b))
            for b2 in right.upper_covers(b):
                covers.append((base, a * nr + b2))
    return build_from_covers(n, covers)


def grid(p: int, q: int, max_size: int = PRODUCT_LIMIT) -> FiniteLattice:
    """chain(p) x chain(q): the simplest planar distributive lattices."""
    return direct_product(chain(p), chain(q), max_size)


def ordinal_sum(lower: FiniteLattice, upper: FiniteLattice) -> FiniteLattice:
    """Stack upper atop lower, identifying upper's bottom with lower's top.

    Lower keeps its labels; upper's remaining elements take labels
    lower.size.. in ascending original order.
    """
    shift: dict[int, int] = {upper.bottom: lower.top}
    next_label = lower.size
    for v in range(upper.size):
        if v != upper.bottom:
            shift[v] = next_label
            next_label += 1
    covers = list(lower.covers)
    covers.extend((shift[x], shift[y]) for x, y in upper.covers)
    return build_from_covers(lower.size + upper.size - 1, covers)
