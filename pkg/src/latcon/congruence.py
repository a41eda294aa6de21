"""Congruence checkers, principal congruences and the congruence lattice.

Three checkers are provided and kept deliberately independent:

* :func:`check_naive` scans the defining substitution property over every
  related pair and every element.  It is the ground-truth oracle.
* :func:`check_classical` evaluates the three classical conditions that
  characterize congruences among reflexive relations.
* :func:`check_covers` evaluates only the cover-level condition and its
  dual; its verdict matches the naive scan whenever the partition's blocks
  are intervals, which is why it takes a certified IntervalPartition.

Every scan order is fixed and lexicographic so the first violation witness
is deterministic across runs and platforms.  ``checks_performed`` counts
one per evaluated implication instance (a block-membership or relation
comparison whose hypothesis held); the unit is shared with
:func:`count_configurations` so the case-count comparison is well defined.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .lattice import FiniteLattice, LatconError, TooLarge
from .relations import (
    BinaryRelation,
    IntervalPartition,
    NotEquivalence,
    SetPartition,
    _from_labels,
    discrete_partition,
    iter_set_partitions,
    partition_join,
    partition_leq,
    partition_of,
)

BRUTE_FORCE_LIMIT = 10

JOIN_SUBSTITUTION = "JoinSubstitution"
MEET_SUBSTITUTION = "MeetSubstitution"
CLASSICAL_I = "ClassicalI"
CLASSICAL_II = "ClassicalII"
CLASSICAL_III = "ClassicalIII"
COVER_JOIN = "CoverJoin"
COVER_MEET = "CoverMeet"


class NotReflexive(LatconError):
    """The classical checker's hypothesis: the relation must be reflexive."""

    def __init__(self, x: int):
        self.x = x
        super().__init__(f"relation is not reflexive: ({x}, {x}) missing")


class AgreementFailure(Exception):
    """Two routes that must agree did not; this falsifies an implementation.

    Raised by the internal cross-check of check_classical and by
    all_congruences when its two algorithms disagree.  Never a user error.
    """


@dataclass(frozen=True)
class Witness:
    """The condition a violation instantiates, with the elements involved."""

    kind: str
    elements: tuple[int, ...]
    side: str | None = None

    def to_json(self) -> dict:
        payload: dict = {"kind": self.kind, "elements": list(self.elements)}
        if self.side is not None:
            payload["side"] = self.side
        return payload


@dataclass(frozen=True)
class CongruenceVerdict:
    is_congruence: bool
    witness: Witness | None
    checks_performed: int

    @property
    def outcome(self) -> str:
        return "Congruence" if self.is_congruence else "Violation"

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "witness": None if self.witness is None else self.witness.to_json(),
            "checks_performed": self.checks_performed,
        }


def _passed(checks: int) -> CongruenceVerdict:
    return CongruenceVerdict(True, None, checks)


def _violated(kind: str, elements: tuple[int, ...], checks: int, side: str | None = None) -> CongruenceVerdict:
    return CongruenceVerdict(False, Witness(kind, elements, side), checks)


# ----------------------------------------------------------------------
# checkers


def check_naive(lattice: FiniteLattice, p: SetPartition) -> CongruenceVerdict:
    """Full substitution scan: the textbook definition, used as oracle.

    For every ordered pair x, y in a common block and every t, the joins
    x∨t, y∨t must share a block and so must the meets; each of the two
    comparisons counts as one check.  First violation in (x, y, t) order
    is returned.
    """
    if p.size != lattice.size:
        raise ValueError(f"partition of {p.size} elements on lattice of {lattice.size}")
    n = lattice.size
    blk = p.block_of
    join_t = lattice.join_table
    meet_t = lattice.meet_table
    checks = 0
    for x in range(n):
        bx = blk[x]
        jx = join_t[x]
        mx = meet_t[x]
        for y in range(n):
            if blk[y] != bx:
                continue
            jy = join_t[y]
            my = meet_t[y]
            for t in range(n):
                checks += 1
                if blk[jx[t]] != blk[jy[t]]:
                    return _violated(JOIN_SUBSTITUTION, (x, y, t), checks)
                checks += 1
                if blk[mx[t]] != blk[my[t]]:
                    return _violated(MEET_SUBSTITUTION, (x, y, t), checks)
    return _passed(checks)


def check_classical(lattice: FiniteLattice, r: BinaryRelation) -> CongruenceVerdict:
    """The three-condition characterization for reflexive relations.

    Raises NotReflexive if the hypothesis fails.  The conditions, each
    scanned lexicographically and in this order:

    I.   r(x, y) iff r(x∧y, x∨y), for all x, y (one check per pair);
    II.  transitivity along comparable triples x <= y <= z (one check per
         triple whose hypothesis holds);
    III. for comparable related pairs x <= y and every t, joins and meets
         with t stay related (two checks per (x, y, t)).

    On a pass the relation is converted to a partition and re-checked with
    the naive scan; disagreement raises AgreementFailure, since the two
    routes are equivalent by construction.
    """
    if r.size != lattice.size:
        raise ValueError(f"relation on {r.size} elements, lattice of {lattice.size}")
    n = lattice.size
    pairs = r.pairs
    join_t = lattice.join_table
    meet_t = lattice.meet_table
    leq = lattice.leq
    for x in range(n):
        if not pairs[x][x]:
            raise NotReflexive(x)

    checks = 0
    for x in range(n):
        for y in range(n):
            checks += 1
            if pairs[x][y] != pairs[meet_t[x][y]][join_t[x][y]]:
                return _violated(CLASSICAL_I, (x, y), checks)
    for x in range(n):
        for y in range(n):
            if not (leq[x][y] and pairs[x][y]):
                continue
            for z in range(n):
                if leq[y][z] and pairs[y][z]:
                    checks += 1
                    if not pairs[x][z]:
                        return _violated(CLASSICAL_II, (x, y, z), checks)
    for x in range(n):
        for y in range(n):
            if not (leq[x][y] and pairs[x][y]):
                continue
            for t in range(n):
                checks += 1
                if not pairs[join_t[x][t]][join_t[y][t]]:
                    return _violated(CLASSICAL_III, (x, y, t), checks, side="join")
                checks += 1
                if not pairs[meet_t[x][t]][meet_t[y][t]]:
                    return _violated(CLASSICAL_III, (x, y, t), checks, side="meet")

    try:
        naive = check_naive(lattice, partition_of(r))
    except NotEquivalence as exc:
        raise AgreementFailure(
            f"classical conditions passed on a non-equivalence: {exc}"
        ) from exc
    if not naive.is_congruence:
        raise AgreementFailure(
            f"classical conditions passed but the substitution scan found {naive.witness}"
        )
    return _passed(checks)


def check_covers(lattice: FiniteLattice, ip: IntervalPartition) -> CongruenceVerdict:
    """Cover-level check, valid for interval-block partitions.

    Join side: for every x with distinct upper covers y, z (ordered pairs)
    where x and y share a block, z must share a block with y∨z.  Meet side
    is the order dual with lower covers and meets.  One check per
    configuration whose hypothesis held; join side scanned first.
    """
    p = ip.base
    if p.size != lattice.size:
        raise ValueError(f"partition of {p.size} elements on lattice of {lattice.size}")
    n = lattice.size
    blk = p.block_of
    join_t = lattice.join_table
    meet_t = lattice.meet_table
    checks = 0
    for x in range(n):
        ups = lattice.upper_covers(x)
        bx = blk[x]
        for y in ups:
            if blk[y] != bx:
                continue
            for z in ups:
                if z == y:
                    continue
                checks += 1
                if blk[z] != blk[join_t[y][z]]:
                    return _violated(COVER_JOIN, (x, y, z), checks)
    for x in range(n):
        downs = lattice.lower_covers(x)
        bx = blk[x]
        for y in downs:
            if blk[y] != bx:
                continue
            for z in downs:
                if z == y:
                    continue
                checks += 1
                if blk[z] != blk[meet_t[y][z]]:
                    return _violated(COVER_MEET, (x, y, z), checks)
    return _passed(checks)


def count_configurations(lattice: FiniteLattice, ip: IntervalPartition) -> tuple[int, int]:
    """Work counts of a full cover-level scan vs a full naive scan.

    Returns (covers_count, naive_count): configurations whose hypothesis
    holds in check_covers, and substitution evaluations in check_naive
    (two per related ordered pair per element).  Pure counting, no verdict;
    both equal the checks_performed of the respective checker on a pass.
    """
    p = ip.base
    n = lattice.size
    blk = p.block_of
    covers_count = 0
    for x in range(n):
        for cover_list in (lattice.upper_covers(x), lattice.lower_covers(x)):
            hits = sum(1 for y in cover_list if blk[y] == blk[x])
            covers_count += hits * (len(cover_list) - 1)
    naive_count = 2 * n * sum(len(b) ** 2 for b in p.blocks)
    return covers_count, naive_count


# ----------------------------------------------------------------------
# witness replay


def replay_witness(
    lattice: FiniteLattice,
    subject: SetPartition | IntervalPartition | BinaryRelation,
    witness: Witness,
) -> bool:
    """Re-evaluate the witnessed condition on its elements; True iff it still fails."""
    if isinstance(subject, IntervalPartition):
        subject = subject.base
    kind = witness.kind
    join_t = lattice.join_table
    meet_t = lattice.meet_table
    if kind in (JOIN_SUBSTITUTION, MEET_SUBSTITUTION, COVER_JOIN, COVER_MEET):
        if not isinstance(subject, SetPartition):
            raise ValueError(f"{kind} witness needs a partition")
        blk = subject.block_of
        x, y, z = witness.elements
        if kind == JOIN_SUBSTITUTION:
            return blk[x] == blk[y] and blk[join_t[x][z]] != blk[join_t[y][z]]
        if kind == MEET_SUBSTITUTION:
            return blk[x] == blk[y] and blk[meet_t[x][z]] != blk[meet_t[y][z]]
        cover_set = lattice.cover_set
        if kind == COVER_JOIN:
            return (
                (x, y) in cover_set
                and (x, z) in cover_set
                and y != z
                and blk[x] == blk[y]
                and blk[z] != blk[join_t[y][z]]
            )
        return (
            (y, x) in cover_set
            and (z, x) in cover_set
            and y != z
            and blk[x] == blk[y]
            and blk[z] != blk[meet_t[y][z]]
        )
    if not isinstance(subject, BinaryRelation):
        raise ValueError(f"{kind} witness needs a binary relation")
    pairs = subject.pairs
    leq = lattice.leq
    if kind == CLASSICAL_I:
        x, y = witness.elements
        return pairs[x][y] != pairs[meet_t[x][y]][join_t[x][y]]
    if kind == CLASSICAL_II:
        x, y, z = witness.elements
        return (
            leq[x][y] and leq[y][z]
            and pairs[x][y] and pairs[y][z]
            and not pairs[x][z]
        )
    if kind == CLASSICAL_III:
        x, y, t = witness.elements
        if not (leq[x][y] and pairs[x][y]):
            return False
        if witness.side == "join":
            return not pairs[join_t[x][t]][join_t[y][t]]
        return not pairs[meet_t[x][t]][meet_t[y][t]]
    raise ValueError(f"unknown witness kind {kind!r}")


# ----------------------------------------------------------------------
# principal congruences and Con(L)


def principal_congruence(lattice: FiniteLattice, a: int, b: int) -> SetPartition:
    """The least congruence relating a and b, by substitution-closure fixpoint."""
    n = lattice.size
    join_t = lattice.join_table
    meet_t = lattice.meet_table
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    work = [(a, b)]
    while work:
        x, y = work.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[ry] = rx
        jx = join_t[x]
        jy = join_t[y]
        mx = meet_t[x]
        my = meet_t[y]
        for t in range(n):
            if find(jx[t]) != find(jy[t]):
                work.append((jx[t], jy[t]))
            if find(mx[t]) != find(my[t]):
                work.append((mx[t], my[t]))
    return _from_labels(n, [find(x) for x in range(n)])


@dataclass(frozen=True)
class ConLattice:
    """All congruences of a lattice, ordered by refinement.

    ``congruences`` is sorted by block_of vector (so the total partition
    comes first and the discrete one last); ``leq[i][j]`` says congruence i
    refines congruence j; join-irreducibles are the members with exactly
    one lower cover in that order.
    """

    congruences: tuple[SetPartition, ...]
    leq: tuple[tuple[bool, ...], ...]
    join_irreducible_flags: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.congruences)


def join_irreducibles(con: ConLattice) -> tuple[SetPartition, ...]:
    return tuple(
        p for p, flag in zip(con.congruences, con.join_irreducible_flags) if flag
    )


def congruences_brute(lattice: FiniteLattice, max_size: int = BRUTE_FORCE_LIMIT) -> list[SetPartition]:
    """Every partition passing the naive scan; guarded exhaustive enumeration."""
    if lattice.size > max_size:
        raise TooLarge(lattice.size, max_size, "brute-force congruence enumeration")
    return [
        p
        for p in iter_set_partitions(lattice.size)
        if check_naive(lattice, p).is_congruence
    ]


def congruences_generated(lattice: FiniteLattice) -> list[SetPartition]:
    """Principal congruences of all covers, closed under join, plus the discrete one."""
    closed: set[SetPartition] = {discrete_partition(lattice.size)}
    work = []
    for x, y in lattice.covers:
        p = principal_congruence(lattice, x, y)
        if p not in closed:
            closed.add(p)
            work.append(p)
    while work:
        p = work.pop()
        for q in list(closed):
            j = partition_join(p, q)
            if j not in closed:
                closed.add(j)
                work.append(j)
    return sorted(closed, key=lambda part: part.block_of)


def _con_from_members(members: Iterable[SetPartition]) -> ConLattice:
    congruences = tuple(sorted(set(members), key=lambda p: p.block_of))
    k = len(congruences)
    leq = tuple(
        tuple(partition_leq(congruences[i], congruences[j]) for j in range(k))
        for i in range(k)
    )
    strictly_below = [
        [j for j in range(k) if j != i and leq[j][i]] for i in range(k)
    ]
    flags = []
    for i in range(k):
        below = strictly_below[i]
        lower_covers = [
            j for j in below if not any(leq[j][m] and leq[m][i] for m in below if m != j)
        ]
        flags.append(len(lower_covers) == 1)
    return ConLattice(congruences, leq, tuple(flags))


def all_congruences(
    lattice: FiniteLattice,
    algorithm: str = "both",
    max_size: int = BRUTE_FORCE_LIMIT,
) -> ConLattice:
    """The congruence lattice, by brute force, generation, or both cross-checked.

    ``both`` raises AgreementFailure if the two algorithms disagree (they
    never should; a disagreement falsifies one of them) and TooLarge if the
    carrier exceeds the brute-force guard.
    """
    if algorithm == "brute":
        members = congruences_brute(lattice, max_size)
    elif algorithm == "generated":
        members = congruences_generated(lattice)
    elif algorithm == "both":
        brute = congruences_brute(lattice, max_size)
        generated = congruences_generated(lattice)
        if set(brute) != set(generated):
            only_brute = [str(p) for p in brute if p not in set(generated)]
            only_gen = [str(p) for p in generated if p not in set(brute)]
            raise AgreementFailure(
                f"congruence algorithms disagree: brute-only={only_brute}, "
                f"generated-only={only_gen}"
            )
        members = brute
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return _con_from_members(members)


# ----------------------------------------------------------------------
# ConLattice exports


def con_to_json(con: ConLattice) -> str:
    edges = _refinement_covers(con)
    payload = {
        "count": len(con.congruences),
        "congruences": [[list(b) for b in p.blocks] for p in con.congruences],
        "refinement_edges": [list(e) for e in edges],
        "join_irreducible": [i for i, f in enumerate(con.join_irreducible_flags) if f],
    }
    return json.dumps(payload, separators=(",", ":")) + "\n"


def con_to_dot(con: ConLattice) -> str:
    lines = ["digraph con {", "  rankdir=BT;"]
    for i, p in enumerate(con.congruences):
        shape = ", shape=box" if con.join_irreducible_flags[i] else ""
        lines.append(f'  {i} [label="{p}"{shape}];')
    for i, j in _refinement_covers(con):
        lines.append(f"  {i} -> {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _refinement_covers(con: ConLattice) -> list[tuple[int, int]]:
    k = len(con.congruences)
    leq = con.leq
    edges = []
    for i in range(k):
        for j in range(k):
            if i == j or not leq[i][j]:
                continue
            if not any(
                m != i and m != j and leq[i][m] and leq[m][j] for m in range(k)
            ):
                edges.append((i, j))
    return edges
