"""Binary relations and set partitions on a lattice carrier.

Partitions are normalized so blocks are listed by smallest member and block
ids follow that order; equality and hashing therefore work structurally.
A partition whose blocks are all intervals of a given lattice can be
certified into an :class:`IntervalPartition`, the precondition carried by
the cover-level congruence checker.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Sequence

from .lattice import FiniteLattice, Interval, LatconError


class BadPartition(LatconError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"not a partition: {reason}")


class NotEquivalence(LatconError):
    """The relation fails an equivalence axiom; names the axiom and elements."""

    def __init__(self, axiom: str, *elements: int):
        self.axiom = axiom
        self.elements = tuple(elements)
        at = ", ".join(str(e) for e in elements)
        super().__init__(f"not an equivalence: {axiom} fails at ({at})")


class NotIntervalBlocks(LatconError):
    """A block is not an interval of the lattice.

    This is deliberately distinct from any congruence verdict: the
    cover-level checker's guarantee only holds for interval-block
    partitions, so a failed certificate must never read as a violation.
    """

    def __init__(self, block_id: int, witness: int):
        self.block_id = block_id
        self.witness = witness
        super().__init__(
            f"block {block_id} is not an interval: element {witness} lies "
            f"between the block's meet and join but outside the block"
        )


@dataclass(frozen=True)
class BinaryRelation:
    """A binary relation on 0..size-1 as a dense boolean table.

    Reflexivity, symmetry and transitivity are *tested properties* of a
    value, not invariants of the type.
    """

    size: int
    pairs: tuple[tuple[bool, ...], ...]

    def holds(self, x: int, y: int) -> bool:
        return self.pairs[x][y]


@dataclass(frozen=True)
class SetPartition:
    """A partition of 0..size-1 into disjoint nonempty blocks.

    ``blocks`` is normalized: members ascending within a block, blocks
    ordered by smallest member, and ``block_of`` consistent with that order.
    """

    size: int
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    def same_block(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def __str__(self) -> str:
        return " | ".join(" ".join(str(x) for x in b) for b in self.blocks)


@dataclass(frozen=True)
class IntervalPartition:
    """A partition certified to have interval blocks; bounds[i] = (lo, hi) of block i."""

    base: SetPartition
    bounds: tuple[tuple[int, int], ...]


def _from_labels(n: int, labels: Sequence[Hashable]) -> SetPartition:
    """Normalize an element -> arbitrary-label map into a SetPartition."""
    groups: dict[Hashable, list[int]] = {}
    for x in range(n):
        groups.setdefault(labels[x], []).append(x)
    blocks = sorted(groups.values())
    block_of = [0] * n
    for i, block in enumerate(blocks):
        for x in block:
            block_of[x] = i
    return SetPartition(n, tuple(tuple(b) for b in blocks), tuple(block_of))


def partition_from_blocks(n: int, blocks: Iterable[Iterable[int]]) -> SetPartition:
    """Validate blocks as a partition of 0..n-1 and normalize them."""
    materialized = [list(block) for block in blocks]
    labels = [-1] * n
    for i, members in enumerate(materialized):
        if not members:
            raise BadPartition("empty block")
        for x in members:
            if not (0 <= x < n):
                raise BadPartition(f"element {x} out of range for n={n}")
            if labels[x] != -1:
                raise BadPartition(f"overlap at {x}")
            labels[x] = i
    for x, label in enumerate(labels):
        if label == -1:
            raise BadPartition(f"element {x} uncovered")
    return _from_labels(n, labels)


def discrete_partition(n: int) -> SetPartition:
    """Every element alone (the minimum of the partition order)."""
    return SetPartition(n, tuple((x,) for x in range(n)), tuple(range(n)))


def total_partition(n: int) -> SetPartition:
    """All elements in one block (the maximum of the partition order)."""
    return SetPartition(n, (tuple(range(n)),), (0,) * n)


def iter_set_partitions(n: int) -> Iterator[SetPartition]:
    """All partitions of 0..n-1, in restricted-growth-string order."""
    if n == 0:
        yield SetPartition(0, (), ())
        return
    rgs = [0] * n

    def rec(i: int, used: int) -> Iterator[SetPartition]:
        if i == n:
            yield _from_labels(n, rgs)
            return
        for b in range(used + 1):
            rgs[i] = b
            yield from rec(i + 1, used + (1 if b == used else 0))

    yield from rec(1, 1)


# ----------------------------------------------------------------------
# relation <-> partition conversions


def relation_of(p: SetPartition) -> BinaryRelation:
    n = p.size
    blk = p.block_of
    rows = tuple(
        tuple(blk[x] == blk[y] for y in range(n)) for x in range(n)
    )
    return BinaryRelation(n, rows)


def relation_from_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> BinaryRelation:
    """The relation holding exactly at the given (x, y) pairs."""
    rows = [[False] * n for _ in range(n)]
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise ValueError(f"pair ({x}, {y}) out of range for n={n}")
        rows[x][y] = True
    return BinaryRelation(n, tuple(tuple(r) for r in rows))


def partition_of(r: BinaryRelation) -> SetPartition:
    """Convert an equivalence relation to its partition.

    Raises NotEquivalence naming the first failed axiom (reflexivity, then
    symmetry, then transitivity, each scanned lexicographically).
    """
    n = r.size
    pairs = r.pairs
    for x in range(n):
        if not pairs[x][x]:
            raise NotEquivalence("reflexivity", x)
    for x in range(n):
        for y in range(n):
            if pairs[x][y] and not pairs[y][x]:
                raise NotEquivalence("symmetry", x, y)
    for x in range(n):
        for y in range(n):
            if not pairs[x][y]:
                continue
            for z in range(n):
                if pairs[y][z] and not pairs[x][z]:
                    raise NotEquivalence("transitivity", x, y, z)
    leaders = [min(y for y in range(n) if pairs[x][y]) for x in range(n)]
    return _from_labels(n, leaders)


# ----------------------------------------------------------------------
# interval blocks


def certify_interval_blocks(lattice: FiniteLattice, p: SetPartition) -> IntervalPartition:
    """Certify that every block is an interval [meet(B), join(B)] of the lattice.

    Raises NotIntervalBlocks(block_id, witness) where witness is the first
    element between the block's extremes that the block misses.
    """
    if p.size != lattice.size:
        raise ValueError(f"partition of {p.size} elements on lattice of {lattice.size}")
    leq = lattice.leq
    bounds = []
    for bid, block in enumerate(p.blocks):
        lo = hi = block[0]
        for x in block[1:]:
            lo = lattice.meet_table[lo][x]
            hi = lattice.join_table[hi][x]
        row_lo = leq[lo]
        for x in range(lattice.size):
            if row_lo[x] and leq[x][hi] and p.block_of[x] != bid:
                raise NotIntervalBlocks(bid, x)
        bounds.append((lo, hi))
    return IntervalPartition(p, tuple(bounds))


def restrict_partition(lattice: FiniteLattice, p: SetPartition, iv: Interval) -> SetPartition:
    """Partition induced on the sublattice of iv.

    Sub-element i stands for the i-th smallest member of iv (the convention
    used by FiniteLattice.interval_sublattice); two sub-elements share a
    block iff their originals did in p.
    """
    members = sorted(iv.members)
    return _from_labels(len(members), [p.block_of[v] for v in members])


# ----------------------------------------------------------------------
# the partition lattice: refinement order, meet, join


def partition_leq(p: SetPartition, q: SetPartition) -> bool:
    """True iff p refines q: every p-block lies inside a q-block."""
    if p.size != q.size:
        raise ValueError("partition sizes differ")
    qb = q.block_of
    return all(qb[b[0]] == qb[x] for b in p.blocks for x in b)


def partition_meet(p: SetPartition, q: SetPartition) -> SetPartition:
    """Blockwise intersection: the coarsest common refinement."""
    if p.size != q.size:
        raise ValueError("partition sizes differ")
    labels = [(p.block_of[x], q.block_of[x]) for x in range(p.size)]
    return _from_labels(p.size, labels)


def partition_join(p: SetPartition, q: SetPartition) -> SetPartition:
    """Transitive closure of the union: the finest common coarsening."""
    if p.size != q.size:
        raise ValueError("partition sizes differ")
    n = p.size
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for part in (p, q):
        for block in part.blocks:
            for x in block[1:]:
                union(block[0], x)
    return _from_labels(n, [find(x) for x in range(n)])


# ----------------------------------------------------------------------
# file formats
#
# Text: one block per line, members space-separated, blocks in normalized
# (smallest-member) order.  JSON: array of arrays.  Both round-trip exactly.


def partition_to_text(p: SetPartition) -> str:
    return "\n".join(" ".join(str(x) for x in b) for b in p.blocks) + "\n"


def partition_from_text(text: str) -> SetPartition:
    blocks: list[list[int]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            blocks.append([int(tok) for tok in line.split()])
    n = sum(len(b) for b in blocks)
    return partition_from_blocks(n, blocks)


def partition_to_json(p: SetPartition) -> str:
    return json.dumps([list(b) for b in p.blocks], separators=(",", ":")) + "\n"


def partition_from_json(text: str) -> SetPartition:
    obj = json.loads(text)
    try:
        blocks = [[int(x) for x in block] for block in obj]
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad partition JSON: {exc}") from exc
    n = sum(len(b) for b in blocks)
    return partition_from_blocks(n, blocks)
