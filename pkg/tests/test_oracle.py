import random

import pytest
from hypothesis import given, settings

from wedgetree.errors import BoundExceeded, NotFinite, NotMeetClosed
from wedgetree.oracle import (
    MAX_ENUMERATION,
    FiniteTree,
    brute_check_family,
    brute_retract,
    compare_retractions,
    compare_spec,
    cone,
    embed,
    enumerate_trees,
    is_meet_closed,
    meet_closed_subsets,
    random_meet_closed,
    spec_of,
)
from wedgetree.ordinal import OMEGA
from wedgetree.treealg import CappedBinary, Chain, FullTree, Graft

from .oracles import count_rooted_trees
from .strategies import rngs

# 0 - 1 - 3
#   \ 2 - 4
#       \ 5
Y = FiniteTree((-1, 0, 0, 1, 2, 2))


def test_tree_basics():
    assert len(Y) == 6
    assert Y.meet(3, 4) == 0 and Y.meet(4, 5) == 2
    assert Y.depth(5) == 2
    assert Y.ims(2) == [4, 5]
    assert cone(Y, 2) == {2, 4, 5}
    assert Y.levels() == {0: [0], 1: [1, 2], 2: [3, 4, 5]}


def test_invalid_parents():
    with pytest.raises(ValueError):
        FiniteTree((-1, 2, 1))


def test_canonical_forms_identify_isomorphic_trees():
    a = FiniteTree((-1, 0, 0, 1))
    b = FiniteTree((-1, 0, 0, 2))
    assert a.canonical() == b.canonical()
    assert a.canonical() != FiniteTree((-1, 0, 1, 2)).canonical()


@pytest.mark.parametrize("n", range(1, 9))
def test_enumeration_counts(n):
    trees = list(enumerate_trees(n))
    assert len(trees) == count_rooted_trees(n)
    assert len({t.canonical() for t in trees}) == len(trees)
    assert all(len(t) == n for t in trees)


def test_enumeration_bound():
    with pytest.raises(BoundExceeded):
        next(enumerate_trees(MAX_ENUMERATION + 1))


class TestRetract:
    def test_examples(self):
        A = {0, 2}
        assert [brute_retract(Y, A, t) for t in Y.nodes] == [0, 0, 2, 0, 2, 2]
        assert brute_retract(Y, {0, 1, 2, 4}, 4) == 4

    def test_not_meet_closed(self):
        assert not is_meet_closed(Y, {0, 3, 4, 5})
        with pytest.raises(NotMeetClosed):
            brute_retract(Y, {0, 4, 5}, 3)

    def test_subsets(self):
        subsets = list(meet_closed_subsets(Y, 6))
        assert all(0 in A and is_meet_closed(Y, A) for A in subsets)
        assert frozenset({0, 4, 5, 2}) in subsets
        assert frozenset({0, 4, 5}) not in subsets

    @settings(max_examples=30, deadline=None)
    @given(rngs())
    def test_random_meet_closed(self, rng):
        tree = rng.choice(list(enumerate_trees(8)))
        A = random_meet_closed(tree, rng, 3)
        assert is_meet_closed(tree, A) and 0 in A
        for t in tree.nodes:
            r = brute_retract(tree, A, t)
            assert r in A and tree.le(r, t)
            assert brute_retract(tree, A, r) == r


def test_family_check():
    cones = [cone(Y, v) for v in (1, 2, 3, 4, 5)]
    report = brute_check_family(Y, cones)
    assert report.t0 and report.point_counts == (0, 1, 1, 2, 2, 2)
    report = brute_check_family(Y, cones[:2])
    assert not report.t0 and (4, 5) in report.unseparated


class TestEmbed:
    def test_sizes(self):
        assert len(embed(Chain(3))[0]) == 4
        assert len(embed(FullTree(2, 2))[0]) == 7
        assert len(embed(Graft(Chain(1), [Chain(2), Chain(1)]))[0]) == 7

    def test_infinite(self):
        for spec in (Chain(OMEGA), CappedBinary(), FullTree("w", 1)):
            with pytest.raises(NotFinite):
                embed(spec)

    def test_spec_of_round_trip(self):
        for tree in enumerate_trees(6):
            spec, path = spec_of(tree)
            back, paths = embed(spec)
            assert back.canonical() == tree.canonical()
            for s in tree.nodes:
                for t in tree.nodes:
                    assert tree.le(s, t) == (path[s] <= path[t])


class TestCompare:
    def test_full_binary_exhaustive(self):
        report = compare_spec(FullTree(2, 2), all_subsets=True)
        assert report.to_json() == {"checks": 364, "mismatches": 0, "examples": []}

    def test_sampled(self):
        report = compare_spec(Graft(Chain(1), [Chain(2), FullTree(2, 1)]), rng=random.Random(5), samples=30)
        assert report.checks > 0 and not report.mismatches

    def test_detects_a_wrong_map(self):
        T = FiniteTree((-1, 0, 1))
        spec, path = spec_of(T)
        swapped = {0: path[0], 1: path[2], 2: path[1]}
        report = compare_retractions(T, [frozenset({0, 1})], spec, swapped)
        assert report.mismatches
