import json

import pytest
from hypothesis import given, settings

from latcon import (
    NotIntervalBlocks,
    NotReflexive,
    TooLarge,
    all_congruences,
    certify_interval_blocks,
    check_classical,
    check_covers,
    check_naive,
    con_to_dot,
    con_to_json,
    congruences_brute,
    congruences_generated,
    count_configurations,
    discrete_partition,
    iter_set_partitions,
    join_irreducibles,
    partition_from_blocks,
    partition_join,
    partition_leq,
    partition_meet,
    principal_congruence,
    relation_from_pairs,
    relation_of,
    replay_witness,
    total_partition,
)
from latcon import catalog

from catalogs import CATALOG, SMALL
from oracles import oracle_is_congruence
from strategies import lattice_with_partition


def _reflexive(n, extra=()):
    return relation_from_pairs(n, [(x, x) for x in range(n)] + list(extra))


def _certified_partitions(lat):
    for p in iter_set_partitions(lat.size):
        try:
            yield certify_interval_blocks(lat, p)
        except NotIntervalBlocks:
            continue


# ----------------------------------------------------------------------
# naive checker


def test_square_congruence_passes():
    b2 = catalog.boolean(2)
    p = partition_from_blocks(4, [{0, 1}, {2, 3}])
    assert check_naive(b2, p).is_congruence


def test_square_violation_witness():
    b2 = catalog.boolean(2)
    p = partition_from_blocks(4, [{0, 1}, {2}, {3}])
    verdict = check_naive(b2, p)
    assert not verdict.is_congruence
    assert verdict.witness.kind == "JoinSubstitution"
    assert verdict.witness.elements == (0, 1, 2)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_discrete_and_total_are_congruences(name):
    lat = CATALOG[name]
    assert check_naive(lat, discrete_partition(lat.size)).is_congruence
    assert check_naive(lat, total_partition(lat.size)).is_congruence


@pytest.mark.parametrize("name", sorted(SMALL))
def test_naive_matches_two_sided_definition(name):
    lat = SMALL[name]
    for p in iter_set_partitions(lat.size):
        assert check_naive(lat, p).is_congruence == oracle_is_congruence(lat, p)


@given(lattice_with_partition(max_size=10))
@settings(max_examples=60)
def test_naive_matches_two_sided_definition_sampled(pair):
    lat, p = pair
    assert check_naive(lat, p).is_congruence == oracle_is_congruence(lat, p)


def test_naive_size_mismatch():
    with pytest.raises(ValueError):
        check_naive(catalog.chain(3), discrete_partition(4))


# ----------------------------------------------------------------------
# classical checker


def test_comparable_pair_breaks_substitution():
    ch = catalog.chain(3)
    verdict = check_classical(ch, _reflexive(3, [(0, 2), (2, 0)]))
    assert not verdict.is_congruence
    assert verdict.witness.kind == "ClassicalIII"
    assert verdict.witness.elements == (0, 2, 1)
    assert verdict.witness.side == "join"
    assert verdict.to_json()["witness"] == {
        "kind": "ClassicalIII",
        "elements": [0, 2, 1],
        "side": "join",
    }


def test_transitivity_gap_detected():
    ch = catalog.chain(3)
    r = _reflexive(3, [(0, 1), (1, 0), (1, 2), (2, 1)])
    verdict = check_classical(ch, r)
    assert not verdict.is_congruence
    assert verdict.witness.kind == "ClassicalII"
    assert verdict.witness.elements == (0, 1, 2)


def test_incomparable_pair_without_collapsed_interval():
    b2 = catalog.boolean(2)
    verdict = check_classical(b2, _reflexive(4, [(1, 2), (2, 1)]))
    assert not verdict.is_congruence
    assert verdict.witness.kind == "ClassicalI"
    assert verdict.witness.elements == (1, 2)


def test_reflexivity_is_a_precondition():
    with pytest.raises(NotReflexive) as info:
        check_classical(catalog.chain(2), relation_from_pairs(2, [(0, 0)]))
    assert info.value.x == 1


def test_classical_accepts_congruence_relations():
    n5 = catalog.n5()
    p = partition_from_blocks(5, [{0, 2}, {1, 3, 4}])
    verdict = check_classical(n5, relation_of(p))
    assert verdict.is_congruence
    assert verdict.checks_performed > 0


# ----------------------------------------------------------------------
# cover-level checker


def test_cover_violation_in_the_square():
    b2 = catalog.boolean(2)
    ip = certify_interval_blocks(b2, partition_from_blocks(4, [{0, 1}, {2}, {3}]))
    verdict = check_covers(b2, ip)
    assert not verdict.is_congruence
    assert verdict.witness.kind == "CoverJoin"
    assert verdict.witness.elements == (0, 1, 2)


def test_pentagon_side_collapse_is_a_congruence():
    n5 = catalog.n5()
    p = partition_from_blocks(5, [{1, 3}, {0}, {2}, {4}])
    ip = certify_interval_blocks(n5, p)
    assert check_covers(n5, ip).is_congruence
    assert check_naive(n5, p).is_congruence


def test_chains_fire_no_configurations():
    ch = catalog.chain(4)
    p = partition_from_blocks(4, [{0, 1}, {2, 3}])
    ip = certify_interval_blocks(ch, p)
    verdict = check_covers(ch, ip)
    assert verdict.is_congruence
    assert verdict.checks_performed == 0


@pytest.mark.parametrize("name", sorted(SMALL))
def test_cover_verdict_equals_naive_verdict(name):
    lat = SMALL[name]
    for ip in _certified_partitions(lat):
        assert check_covers(lat, ip).is_congruence == check_naive(lat, ip.base).is_congruence


@pytest.mark.parametrize("name", sorted(SMALL))
def test_cover_verdict_is_self_dual(name):
    lat = SMALL[name]
    dual = lat.dual()
    for ip in _certified_partitions(lat):
        dual_ip = certify_interval_blocks(dual, ip.base)
        assert check_covers(lat, ip).is_congruence == check_covers(dual, dual_ip).is_congruence


@given(lattice_with_partition(max_size=10))
@settings(max_examples=80)
def test_cover_verdict_equals_naive_on_composed_lattices(pair):
    # same equivalence as the exhaustive catalog scan, but over randomly
    # composed lattices (duals, ordinal sums, products of the basic ones)
    lat, p = pair
    try:
        ip = certify_interval_blocks(lat, p)
    except NotIntervalBlocks:
        return
    assert check_covers(lat, ip).is_congruence == check_naive(lat, p).is_congruence


# ----------------------------------------------------------------------
# instrumentation


def test_square_configuration_counts():
    b2 = catalog.boolean(2)
    ip = certify_interval_blocks(b2, partition_from_blocks(4, [{0, 1}, {2, 3}]))
    covers_count, naive_count = count_configurations(b2, ip)
    assert covers_count == 2
    assert naive_count == 2 * 4 * (2 ** 2 + 2 ** 2)


def test_chain_covers_count_is_zero():
    ch = catalog.chain(6)
    ip = certify_interval_blocks(ch, partition_from_blocks(6, [{0, 1, 2}, {3, 4, 5}]))
    assert count_configurations(ch, ip)[0] == 0


def test_discrete_partition_counts_but_passes():
    b3 = catalog.boolean(3)
    ip = certify_interval_blocks(b3, discrete_partition(8))
    covers_count, naive_count = count_configurations(b3, ip)
    assert covers_count == 0  # no two covers of one element ever share a block
    assert naive_count == 2 * 8 * 8
    assert check_covers(b3, ip).is_congruence


@pytest.mark.parametrize("name", sorted(SMALL))
def test_counts_match_checker_work_on_passing_runs(name):
    lat = SMALL[name]
    for ip in _certified_partitions(lat):
        covers_count, naive_count = count_configurations(lat, ip)
        cover_verdict = check_covers(lat, ip)
        if cover_verdict.is_congruence:
            assert cover_verdict.checks_performed == covers_count
        naive_verdict = check_naive(lat, ip.base)
        if naive_verdict.is_congruence:
            assert naive_verdict.checks_performed == naive_count


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_full_scans_perform_checks_on_nontrivial_lattices(name):
    lat = CATALOG[name]
    if lat.size < 2:
        return
    assert check_naive(lat, discrete_partition(lat.size)).checks_performed > 0
    verdict = check_classical(lat, relation_of(discrete_partition(lat.size)))
    assert verdict.checks_performed > 0


# ----------------------------------------------------------------------
# principal congruences


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_collapsing_nothing_gives_discrete(name):
    lat = CATALOG[name]
    for a in range(lat.size):
        assert principal_congruence(lat, a, a) == discrete_partition(lat.size)


def test_square_principal():
    b2 = catalog.boolean(2)
    assert principal_congruence(b2, 1, 3) == partition_from_blocks(4, [{0, 2}, {1, 3}])


def test_pentagon_principal():
    n5 = catalog.n5()
    expected = partition_from_blocks(5, [{0, 2}, {1, 3, 4}])
    assert principal_congruence(n5, 0, 2) == expected


@pytest.mark.parametrize("name", sorted(SMALL))
def test_principal_is_least_containing_the_pair(name):
    lat = SMALL[name]
    con = all_congruences(lat)
    members = set(con.congruences)
    for a in range(lat.size):
        for b in range(lat.size):
            pc = principal_congruence(lat, a, b)
            assert pc in members
            for c in con.congruences:
                if c.same_block(a, b):
                    assert partition_leq(pc, c)


# ----------------------------------------------------------------------
# Con(L)


@pytest.mark.parametrize("n", range(1, 7))
def test_chain_congruence_count(n):
    con = all_congruences(catalog.chain(n))
    assert len(con) == 2 ** (n - 1)


def test_m3_is_simple():
    con = all_congruences(catalog.m3())
    assert len(con) == 2


def test_pentagon_congruences_frozen():
    con = all_congruences(catalog.n5())
    expected = {
        discrete_partition(5),
        partition_from_blocks(5, [{1, 3}, {0}, {2}, {4}]),
        partition_from_blocks(5, [{0, 2}, {1, 3, 4}]),
        partition_from_blocks(5, [{0, 1, 3}, {2, 4}]),
        total_partition(5),
    }
    assert set(con.congruences) == expected


def test_brute_force_guard():
    with pytest.raises(TooLarge):
        congruences_brute(catalog.grid(3, 4))
    with pytest.raises(TooLarge):
        all_congruences(catalog.grid(3, 4), algorithm="both")


def test_generated_handles_larger_carriers():
    assert len(congruences_generated(catalog.grid(3, 4))) == 2 ** 5


def test_unknown_algorithm_rejected():
    with pytest.raises(ValueError):
        all_congruences(catalog.chain(2), algorithm="fast")


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_enumeration_algorithms_agree(name):
    lat = CATALOG[name]
    assert set(congruences_brute(lat)) == set(congruences_generated(lat))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_con_lattice_structure(name):
    lat = CATALOG[name]
    con = all_congruences(lat)
    members = set(con.congruences)
    assert discrete_partition(lat.size) in members
    assert total_partition(lat.size) in members
    for p in con.congruences:
        assert check_naive(lat, p).is_congruence
        for q in con.congruences:
            assert partition_meet(p, q) in members
            assert partition_join(p, q) in members


def test_join_irreducible_counts():
    assert len(join_irreducibles(all_congruences(catalog.chain(3)))) == 2
    m3_irr = join_irreducibles(all_congruences(catalog.m3()))
    assert len(m3_irr) == 1
    assert m3_irr[0] == total_partition(5)
    assert join_irreducibles(all_congruences(catalog.chain(1))) == ()


def test_con_export_formats():
    con = all_congruences(catalog.chain(3))
    payload = json.loads(con_to_json(con))
    assert payload["count"] == 4
    assert len(payload["refinement_edges"]) == 4  # Con(chain3) is the square
    dot = con_to_dot(con)
    assert dot.count("->") == 4
    assert con_to_dot(con) == dot  # deterministic


# ----------------------------------------------------------------------
# verdict serialization and witness replay


def test_verdict_json_shape():
    b2 = catalog.boolean(2)
    verdict = check_naive(b2, partition_from_blocks(4, [{0, 1}, {2}, {3}]))
    payload = verdict.to_json()
    assert payload["outcome"] == "Violation"
    assert payload["witness"] == {"kind": "JoinSubstitution", "elements": [0, 1, 2]}
    assert payload["checks_performed"] == verdict.checks_performed
    passing = check_naive(b2, discrete_partition(4)).to_json()
    assert passing == {
        "outcome": "Congruence",
        "witness": None,
        "checks_performed": passing["checks_performed"],
    }


def test_witnesses_replay_for_all_three_checkers():
    b2 = catalog.boolean(2)
    p = partition_from_blocks(4, [{0, 1}, {2}, {3}])
    naive = check_naive(b2, p)
    assert replay_witness(b2, p, naive.witness)
    ip = certify_interval_blocks(b2, p)
    cover = check_covers(b2, ip)
    assert replay_witness(b2, ip, cover.witness)
    ch = catalog.chain(3)
    r = _reflexive(3, [(0, 2), (2, 0)])
    classical = check_classical(ch, r)
    assert replay_witness(ch, r, classical.witness)


def test_every_witness_kind_replays():
    b2 = catalog.boolean(2)
    upper_halves = partition_from_blocks(4, [{2, 3}, {0}, {1}])
    naive = check_naive(b2, upper_halves)
    assert naive.witness.kind == "MeetSubstitution"
    assert naive.witness.elements == (2, 3, 1)
    assert replay_witness(b2, upper_halves, naive.witness)

    cover = check_covers(b2, certify_interval_blocks(b2, upper_halves))
    assert cover.witness.kind == "CoverMeet"
    assert cover.witness.elements == (3, 2, 1)
    assert replay_witness(b2, upper_halves, cover.witness)

    ch = catalog.chain(3)
    gap = _reflexive(3, [(0, 1), (1, 0), (1, 2), (2, 1)])
    classical_ii = check_classical(ch, gap)
    assert classical_ii.witness.kind == "ClassicalII"
    assert replay_witness(ch, gap, classical_ii.witness)

    atoms = _reflexive(4, [(1, 2), (2, 1)])
    classical_i = check_classical(b2, atoms)
    assert classical_i.witness.kind == "ClassicalI"
    assert replay_witness(b2, atoms, classical_i.witness)
    # JoinSubstitution, CoverJoin and ClassicalIII are replayed in
    # test_witnesses_replay_for_all_three_checkers


@pytest.mark.parametrize("name", sorted(SMALL))
def test_witnesses_replay_exhaustively(name):
    lat = SMALL[name]
    for p in iter_set_partitions(lat.size):
        verdict = check_naive(lat, p)
        if not verdict.is_congruence:
            assert replay_witness(lat, p, verdict.witness)
        try:
            ip = certify_interval_blocks(lat, p)
        except NotIntervalBlocks:
            continue
        cover_verdict = check_covers(lat, ip)
        if not cover_verdict.is_congruence:
            assert replay_witness(lat, ip, cover_verdict.witness)


def test_classical_witnesses_replay_exhaustively():
    # every reflexive relation on the 3-chain and the square
    for lat in (catalog.chain(3), catalog.boolean(2)):
        n = lat.size
        cells = [(x, y) for x in range(n) for y in range(n) if x != y]
        diagonal = [(x, x) for x in range(n)]
        for mask in range(1 << len(cells)):
            extra = [cells[i] for i in range(len(cells)) if mask >> i & 1]
            r = relation_from_pairs(n, diagonal + extra)
            verdict = check_classical(lat, r)
            if not verdict.is_congruence:
                assert replay_witness(lat, r, verdict.witness)


def test_replay_fails_on_innocent_partitions():
    b2 = catalog.boolean(2)
    bad = partition_from_blocks(4, [{0, 1}, {2}, {3}])
    witness = check_naive(b2, bad).witness
    good = partition_from_blocks(4, [{0, 1}, {2, 3}])
    assert not replay_witness(b2, good, witness)


def test_replay_requires_the_right_subject():
    b2 = catalog.boolean(2)
    p = partition_from_blocks(4, [{0, 1}, {2}, {3}])
    witness = check_naive(b2, p).witness
    with pytest.raises(ValueError):
        replay_witness(b2, relation_of(p), witness)
