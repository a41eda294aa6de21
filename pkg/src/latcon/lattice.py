"""Finite lattices built and validated from their cover relations.

Elements are dense indices 0..n-1; the indices carry no order meaning of
their own.  Everything downstream assumes the lattice axioms, so validation
is eager and total: a ``FiniteLattice`` that exists has a verified order
table, a verified cover list (exactly the transitive reduction), and total
join/meet tables.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class LatconError(Exception):
    """Base class for input and validation errors raised by this package."""


class CycleDetected(LatconError):
    """The supplied cover pairs close into a directed cycle."""

    def __init__(self, cycle: Sequence[int]):
        self.cycle = tuple(cycle)
        path = " -> ".join(str(v) for v in self.cycle)
        super().__init__(f"cover relation contains a cycle: {path} -> {self.cycle[0]}")


class NotALattice(LatconError):
    """Some pair of elements has no least upper bound or no greatest lower bound."""

    def __init__(self, x: int, y: int, reason: str):
        self.x = x
        self.y = y
        self.reason = reason
        super().__init__(f"not a lattice: elements {x} and {y}: {reason}")


class NotReduced(LatconError):
    """A supplied cover pair is transitively implied by the others.

    Inputs must be the cover relation itself (the transitive reduction), so
    files stay canonical; we reject rather than silently reduce.
    """

    def __init__(self, x: int, y: int):
        self.x = x
        self.y = y
        super().__init__(f"pair ({x}, {y}) is not a cover: it is implied transitively")


class NotComparable(LatconError):
    def __init__(self, a: int, b: int):
        self.a = a
        self.b = b
        super().__init__(f"element {a} is not below element {b}")


class TooLarge(LatconError):
    """A configured size guard was exceeded."""

    def __init__(self, size: int, limit: int, what: str = "lattice"):
        self.size = size
        self.limit = limit
        self.what = what
        super().__init__(f"{what} of size {size} exceeds the limit {limit}")


@dataclass(frozen=True)
class Interval:
    """The elements between ``lo`` and ``hi`` inclusive; always a sublattice."""

    lo: int
    hi: int
    members: frozenset[int]


@dataclass(frozen=True)
class FiniteLattice:
    """A fully validated finite lattice on elements 0..size-1.

    Instances should be obtained from :func:`build_from_covers` (or the
    catalog constructors built on it); the dataclass constructor itself does
    not re-validate.  All fields are immutable, so instances are safe for
    unrestricted concurrent reads.
    """

    size: int
    leq: tuple[tuple[bool, ...], ...]
    covers: tuple[tuple[int, int], ...]
    join_table: tuple[tuple[int, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    bottom: int
    top: int

    # ------------------------------------------------------------------
    # order and operation queries (total after validation)

    def le(self, x: int, y: int) -> bool:
        return self.leq[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    @cached_property
    def cover_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.covers)

    @cached_property
    def _upper(self) -> tuple[tuple[int, ...], ...]:
        ups: list[list[int]] = [[] for _ in range(self.size)]
        for x, y in self.covers:
            ups[x].append(y)
        return tuple(tuple(sorted(u)) for u in ups)

    @cached_property
    def _lower(self) -> tuple[tuple[int, ...], ...]:
        downs: list[list[int]] = [[] for _ in range(self.size)]
        for x, y in self.covers:
            downs[y].append(x)
        return tuple(tuple(sorted(d)) for d in downs)

    def upper_covers(self, x: int) -> tuple[int, ...]:
        """Elements covering x, ascending."""
        return self._upper[x]

    def lower_covers(self, x: int) -> tuple[int, ...]:
        """Elements covered by x, ascending."""
        return self._lower[x]

    def interval(self, a: int, b: int) -> Interval:
        """The interval [a, b]; raises NotComparable unless a <= b."""
        if not self.leq[a][b]:
            raise NotComparable(a, b)
        row_a = self.leq[a]
        members = frozenset(
            x for x in range(self.size) if row_a[x] and self.leq[x][b]
        )
        return Interval(a, b, members)

    def interval_length(self, iv: Interval) -> int:
        """Length of a maximum chain inside iv (number of covers along it)."""
        members = iv.members
        # process elements in any linear extension: sort by number of members below
        order = sorted(
            members, key=lambda v: sum(1 for u in members if self.leq[u][v])
        )
        longest: dict[int, int] = {}
        for v in order:
            longest[v] = max(
                (longest[u] + 1 for u in self._lower[v] if u in members),
                default=0,
            )
        return longest[iv.hi]

    def length(self) -> int:
        """Length of the whole lattice, i.e. of [bottom, top]."""
        return self.interval_length(self.interval(self.bottom, self.top))

    def dual(self) -> FiniteLattice:
        """The order-reversed lattice: covers flipped, join and meet swapped."""
        n = self.size
        leq = tuple(tuple(self.leq[y][x] for y in range(n)) for x in range(n))
        covers = tuple(sorted((y, x) for x, y in self.covers))
        return FiniteLattice(
            size=n,
            leq=leq,
            covers=covers,
            join_table=self.meet_table,
            meet_table=self.join_table,
            bottom=self.top,
            top=self.bottom,
        )

    def semimodularity_witness(self) -> tuple[int, int] | None:
        """First (x, y) with x∧y covered by x but y not covered by x∨y, or None."""
        cover_set = self.cover_set
        for x in range(self.size):
            for y in range(self.size):
                if (self.meet_table[x][y], x) in cover_set:
                    if (y, self.join_table[x][y]) not in cover_set:
                        return (x, y)
        return None

    def is_semimodular(self) -> bool:
        return self.semimodularity_witness() is None

    def relabel(self, perm: Sequence[int]) -> FiniteLattice:
        """Copy with element x renamed to perm[x]; perm must be a permutation."""
        n = self.size
        if sorted(perm) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {perm!r}")
        leq = [[False] * n for _ in range(n)]
        join_t = [[0] * n for _ in range(n)]
        meet_t = [[0] * n for _ in range(n)]
        for x in range(n):
            px = perm[x]
            for y in range(n):
                py = perm[y]
                leq[px][py] = self.leq[x][y]
                join_t[px][py] = perm[self.join_table[x][y]]
                meet_t[px][py] = perm[self.meet_table[x][y]]
        covers = tuple(sorted((perm[x], perm[y]) for x, y in self.covers))
        return FiniteLattice(
            size=n,
            leq=tuple(tuple(row) for row in leq),
            covers=covers,
            join_table=tuple(tuple(row) for row in join_t),
            meet_table=tuple(tuple(row) for row in meet_t),
            bottom=perm[self.bottom],
            top=perm[self.top],
        )

    def interval_sublattice(self, iv: Interval) -> tuple[FiniteLattice, tuple[int, ...]]:
        """Lattice induced on iv, plus the original labels.

        Sub-element i stands for labels[i], the i-th smallest member of iv.
        Covers inside an interval are the ambient covers restricted to it, so
        the sublattice is rebuilt (and re-validated) from those.
        """
        labels = tuple(sorted(iv.members))
        index = {v: i for i, v in enumerate(labels)}
        covers = [
            (index[x], index[y])
            for x, y in self.covers
            if x in iv.members and y in iv.members
        ]
        return build_from_covers(len(labels), covers), labels


def _find_cycle(n: int, succ: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """A directed cycle in the cover digraph, as a node tuple, or None."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * n
    for root in range(n):
        if color[root] != WHITE:
            continue
        stack: list[tuple[int, Iterator[int]]] = [(root, iter(succ[root]))]
        color[root] = GRAY
        path = [root]
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == GRAY:
                    return tuple(path[path.index(nxt):])
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    path.append(nxt)
                    stack.append((nxt, iter(succ[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                path.pop()
                stack.pop()
    return None


def build_from_covers(n: int, cover_pairs: Iterable[tuple[int, int]]) -> FiniteLattice:
    """Build and fully validate a lattice from its cover relation.

    Raises ValueError for malformed input, CycleDetected if the pairs close
    into a cycle, NotReduced if a pair is transitively implied (inputs must
    be canonical), and NotALattice when some pair lacks a least upper bound
    or greatest lower bound.
    """
    if n < 1:
        raise ValueError(f"a lattice needs at least one element, got n={n}")
    covers = [(int(x), int(y)) for x, y in cover_pairs]
    for x, y in covers:
        if not (0 <= x < n and 0 <= y < n):
            raise ValueError(f"cover pair ({x}, {y}) out of range for n={n}")
    seen: set[tuple[int, int]] = set()
    for x, y in covers:
        if x == y:
            raise CycleDetected((x,))
        if (x, y) in seen:
            raise NotReduced(x, y)
        seen.add((x, y))

    succ: list[list[int]] = [[] for _ in range(n)]
    for x, y in covers:
        succ[x].append(y)
    cycle = _find_cycle(n, succ)
    if cycle is not None:
        raise CycleDetected(cycle)

    # reflexive-transitive closure as up-set bitmasks, via DFS from each element
    up = [0] * n
    for start in range(n):
        if up[start]:
            continue
        # process in reverse finishing order so successors are ready first
        visiting = [(start, False)]
        while visiting:
            node, done = visiting.pop()
            if done:
                mask = 1 << node
                for nxt in succ[node]:
                    mask |= up[nxt]
                up[node] = mask
                continue
            if up[node]:
                continue
            visiting.append((node, True))
            for nxt in succ[node]:
                if not up[nxt]:
                    visiting.append((nxt, False))

    down = [0] * n
    for x in range(n):
        ux = up[x]
        for y in range(n):
            if ux >> y & 1:
                down[y] |= 1 << x

    # reject non-canonical inputs: a pair with something strictly between
    for x, y in sorted(covers):
        between = up[x] & down[y] & ~(1 << x) & ~(1 << y)
        if between:
            raise NotReduced(x, y)

    up_id = {mask: i for i, mask in enumerate(up)}
    down_id = {mask: i for i, mask in enumerate(down)}
    join_t = [[0] * n for _ in range(n)]
    meet_t = [[0] * n for _ in range(n)]
    for x in range(n):
        join_t[x][x] = x
        meet_t[x][x] = x
        for y in range(x + 1, n):
            above = up[x] & up[y]
            if not above:
                raise NotALattice(x, y, "no upper bound")
            j = up_id.get(above)
            if j is None:
                raise NotALattice(x, y, "no least among minimal upper bounds")
            join_t[x][y] = join_t[y][x] = j
            below = down[x] & down[y]
            if not below:
                raise NotALattice(x, y, "no lower bound")
            m = down_id.get(below)
            if m is None:
                raise NotALattice(x, y, "no greatest among maximal lower bounds")
            meet_t[x][y] = meet_t[y][x] = m

    bottom = 0
    top = 0
    for v in range(1, n):
        bottom = meet_t[bottom][v]
        top = join_t[top][v]

    leq = tuple(
        tuple(bool(up[x] >> y & 1) for y in range(n)) for x in range(n)
    )
    return FiniteLattice(
        size=n,
        leq=leq,
        covers=tuple(sorted(covers)),
        join_table=tuple(tuple(row) for row in join_t),
        meet_table=tuple(tuple(row) for row in meet_t),
        bottom=bottom,
        top=top,
    )


# ----------------------------------------------------------------------
# file formats
#
# Text: first line is n, then one "x y" cover pair per line; '#' starts a
# comment.  JSON: {"size": n, "covers": [[x, y], ...]}.  Saving emits the
# canonical form (covers sorted lexicographically), so save/load round-trip
# bit-exactly on canonical files and exactly on lattices in both formats.


def lattice_to_text(lattice: FiniteLattice) -> str:
    lines = [str(lattice.size)]
    lines.extend(f"{x} {y}" for x, y in lattice.covers)
    return "\n".join(lines) + "\n"


def lattice_from_text(text: str) -> FiniteLattice:
    entries: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            entries.append(line)
    if not entries:
        raise ValueError("empty lattice file")
    try:
        n = int(entries[0])
    except ValueError:
        raise ValueError(f"first entry must be the element count, got {entries[0]!r}")
    covers = []
    for line in entries[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"expected a cover pair 'x y', got {line!r}")
        covers.append((int(parts[0]), int(parts[1])))
    return build_from_covers(n, covers)


def lattice_to_json(lattice: FiniteLattice) -> str:
    payload = {"size": lattice.size, "covers": [list(c) for c in lattice.covers]}
    return json.dumps(payload, separators=(",", ":")) + "\n"


def lattice_from_json(text: str) -> FiniteLattice:
    obj = json.loads(text)
    try:
        n = int(obj["size"])
        covers = [(int(a), int(b)) for a, b in obj["covers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad lattice JSON: {exc}") from exc
    return build_from_covers(n, covers)
