"""Finite-lattice congruence toolkit.

Build validated lattices from cover relations, certify interval-block
partitions, check congruences three ways (full substitution scan, the
classical three-condition test, and the cover-level test), and compute the
whole congruence lattice as ground truth.
"""

from .lattice import (
    CycleDetected,
    FiniteLattice,
    Interval,
    LatconError,
    NotALattice,
    NotComparable,
    NotReduced,
    TooLarge,
    build_from_covers,
    lattice_from_json,
    lattice_from_text,
    lattice_to_json,
    lattice_to_text,
)
from .relations import (
    BadPartition,
    BinaryRelation,
    IntervalPartition,
    NotEquivalence,
    NotIntervalBlocks,
    SetPartition,
    certify_interval_blocks,
    discrete_partition,
    iter_set_partitions,
    partition_from_blocks,
    partition_from_json,
    partition_from_text,
    partition_join,
    partition_leq,
    partition_meet,
    partition_of,
    partition_to_json,
    partition_to_text,
    relation_from_pairs,
    relation_of,
    restrict_partition,
    total_partition,
)
from .congruence import (
    AgreementFailure,
    BRUTE_FORCE_LIMIT,
    ConLattice,
    CongruenceVerdict,
    NotReflexive,
    Witness,
    all_congruences,
    check_classical,
    check_covers,
    check_naive,
    con_to_dot,
    con_to_json,
    congruences_brute,
    congruences_generated,
    count_configurations,
    join_irreducibles,
    principal_congruence,
    replay_witness,
)
from . import catalog

__all__ = [
    "AgreementFailure",
    "BRUTE_FORCE_LIMIT",
    "BadPartition",
    "BinaryRelation",
    "ConLattice",
    "CongruenceVerdict",
    "CycleDetected",
    "FiniteLattice",
    "Interval",
    "IntervalPartition",
    "LatconError",
    "NotALattice",
    "NotComparable",
    "NotEquivalence",
    "NotIntervalBlocks",
    "NotReduced",
    "NotReflexive",
    "SetPartition",
    "TooLarge",
    "Witness",
    "all_congruences",
    "build_from_covers",
    "catalog",
    "certify_interval_blocks",
    "check_classical",
    "check_covers",
    "check_naive",
    "con_to_dot",
    "con_to_json",
    "congruences_brute",
    "congruences_generated",
    "count_configurations",
    "discrete_partition",
    "iter_set_partitions",
    "join_irreducibles",
    "lattice_from_json",
    "lattice_from_text",
    "lattice_to_json",
    "lattice_to_text",
    "partition_from_blocks",
    "partition_from_json",
    "partition_from_text",
    "partition_join",
    "partition_leq",
    "partition_meet",
    "partition_of",
    "partition_to_json",
    "partition_to_text",
    "principal_congruence",
    "relation_from_pairs",
    "relation_of",
    "replay_witness",
    "restrict_partition",
    "total_partition",
]
