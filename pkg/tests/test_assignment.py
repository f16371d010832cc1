import numpy as np
import pytest

from tests.factories import make_field
from wsnsim.error_handlers import InvalidArgument
from wsnsim.field.services import bs_distances, distance
from wsnsim.protocols.assignment import (
    assign_modified,
    assign_nearest,
    modified_join_violations,
    redundant_members,
)


def _nearest_by_scan(field, member, heads):
    return min(
        heads, key=lambda h: (distance(field.nodes[member], field.nodes[h]), h)
    )


def _random_instance(rng):
    n = int(rng.integers(2, 21))
    coords = rng.uniform(0, 100, (n, 2))
    bs = tuple(rng.uniform(-20, 120, 2))
    field = make_field(coords, bs=bs, width=100.0, height=100.0)
    heads = sorted(
        int(h)
        for h in rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False)
    )
    return field, list(range(n)), heads


def test_single_head_takes_every_member():
    field = make_field([(0, 0), (5, 5), (9, 1)], bs=(50, 50))
    assert assign_nearest([0, 1, 2], [1], field) == {0: 1, 2: 1}


def test_equidistant_member_joins_lowest_head_id():
    points = [(5, 5)] + [(30, 30)] * 2 + [(0, 5)] + [(40, 40)] * 3 + [(10, 5)]
    field = make_field(points, bs=(50, 50))
    assert assign_nearest([0], [7, 3], field) == {0: 3}


def test_assign_nearest_needs_a_head():
    field = make_field([(0, 0), (1, 1)], bs=(5, 5))
    with pytest.raises(InvalidArgument):
        assign_nearest([0, 1], [], field)


def test_assign_nearest_matches_brute_force_scan():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        field, nodes, heads = _random_instance(rng)
        membership = assign_nearest(nodes, heads, field)
        assert set(membership) == set(nodes) - set(heads)
        for member, head in membership.items():
            assert head == _nearest_by_scan(field, member, heads)


def test_member_skips_nearer_head_farther_from_base_station():
    # Node 0 is member A, node 1 is CH1 and node 2 is CH2.
    field = make_field([(10, 0), (12, 0), (5, 5)], bs=(0, 0))
    membership, direct = assign_modified([0], [1, 2], field)
    assert membership == {0: 2}
    assert direct == set()
    assert assign_nearest([0], [1, 2], field) == {0: 1}


def test_member_without_closer_head_sends_directly():
    field = make_field([(8, 0), (12, 0), (9, 9)], bs=(0, 0))
    membership, direct = assign_modified([0], [1, 2], field)
    assert membership == {}
    assert direct == {0}


def test_modified_rule_equals_nearest_when_head_is_closest_to_bs():
    field = make_field([(1, 1), (20, 30), (40, 5), (35, 35)], bs=(0, 0))
    membership, direct = assign_modified([1, 2, 3], [0], field)
    assert membership == assign_nearest([1, 2, 3], [0], field)
    assert direct == set()


def test_modified_rule_with_no_heads_sends_everyone_directly():
    field = make_field([(1, 1), (2, 2)], bs=(0, 0))
    assert assign_modified([0, 1], [], field) == ({}, {0, 1})


def test_assign_modified_matches_brute_force_scan():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        field, nodes, heads = _random_instance(rng)
        to_bs = bs_distances(field)
        membership, direct = assign_modified(nodes, heads, field)
        assert set(membership) | direct == set(nodes) - set(heads)
        assert not set(membership) & direct
        for member in set(nodes) - set(heads):
            closer = [h for h in heads if to_bs[h] < to_bs[member]]
            if closer:
                expected = _nearest_by_scan(field, member, closer)
                assert membership[member] == expected
            else:
                assert member in direct
        assert modified_join_violations(membership, direct, heads, field) == []


def test_redundant_transfer_removed_by_modified_rule():
    # Node 0 sits between the base station and head 1; head 2 is closer
    # to the base station but farther from node 0.
    field = make_field([(10, 0), (12, 0), (3, 8)], bs=(0, 0))
    nearest = assign_nearest([0], [1, 2], field)
    assert redundant_members(nearest, field) == [0]
    membership, _ = assign_modified([0], [1, 2], field)
    assert membership == {0: 2}
    assert redundant_members(membership, field) == []


def test_join_audit_reports_each_violation():
    field = make_field([(10, 0), (12, 0), (3, 8), (1, 0)], bs=(0, 0))
    problems = modified_join_violations({0: 1}, {3}, [1, 2], field)
    assert len(problems) == 1
    assert "member 0" in problems[0]
    problems = modified_join_violations({}, {0}, [1, 2], field)
    assert problems == [
        "direct sender 0 had a head closer to the base station"
    ]


def test_modified_rule_never_shortens_a_member_link():
    # The price of skipping redundant transfers: a joined member reaches
    # its head over a link at least as long as the nearest-head one.
    rng = np.random.default_rng(7)
    longer = 0
    for _ in range(200):
        coords = rng.uniform(0, 100, (100, 2))
        field = make_field(coords, bs=(50, 175), width=100.0, height=100.0)
        heads = sorted(int(h) for h in rng.choice(100, 5, replace=False))
        members = [n for n in range(100) if n not in heads]
        nearest = assign_nearest(members, heads, field)
        modified, _ = assign_modified(members, heads, field)
        for member, head in modified.items():
            plain = distance(field.nodes[member], field.nodes[nearest[member]])
            joined = distance(field.nodes[member], field.nodes[head])
            assert joined >= plain
            longer += joined > plain
    assert longer > 0
