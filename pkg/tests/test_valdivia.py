import itertools
import random

import pytest
from hypothesis import given, settings

from wedgetree.errors import HeightTooLarge, RangeExceeded, SamePoint
from wedgetree.oracle import brute_check_family, embed, enumerate_trees, spec_of
from wedgetree.ordinal import OMEGA, OMEGA1, OMEGA2, literal_product
from wedgetree.sampling import random_node
from wedgetree.topology import Cone, Wedge, member
from wedgetree.treealg import (
    OMEGA1_ARITY,
    OMEGA_ARITY,
    ROOT,
    CappedBinary,
    Chain,
    Explicit,
    FullTree,
    Graft,
    NodePath,
)
from wedgetree.valdivia import (
    WitnessFamily,
    check_star,
    classify,
    family_member_containing,
    in_induced_D,
    point_count_tag,
    t0_separate,
    verify_witness_family,
    witness_violates_star,
)

from .strategies import rngs

W = OMEGA
R = NodePath.of
CB = CappedBinary()
LOW = [Chain(OMEGA1), FullTree(2, OMEGA1), FullTree(OMEGA1_ARITY, W), FullTree(OMEGA_ARITY, OMEGA1),
       Graft(FullTree(2, W), [Chain(OMEGA1), FullTree(3, 2)])]


class TestStar:
    @pytest.mark.parametrize("spec", [Chain(OMEGA2), CB, FullTree(2, OMEGA1), FullTree(OMEGA1_ARITY, W),
                                      Graft(FullTree(2, OMEGA1), [FullTree(OMEGA_ARITY, OMEGA1)])])
    def test_holds(self, spec):
        assert check_star(spec).holds

    @pytest.mark.parametrize("spec", [FullTree(OMEGA_ARITY, OMEGA1 + 1),
                                      FullTree(OMEGA1_ARITY, literal_product(OMEGA1, 3)),
                                      Graft(Chain(OMEGA1), [FullTree(OMEGA_ARITY, literal_product(OMEGA1, 2))]),
                                      Graft(Chain(1), [FullTree(OMEGA_ARITY, OMEGA1 + 1)])])
    def test_fails_with_a_checkable_witness(self, spec):
        report = check_star(spec)
        assert not report.holds
        assert witness_violates_star(spec, report.witness)

    def test_witness_is_the_first_bad_node(self):
        report = check_star(Graft(Chain(OMEGA1), [FullTree(OMEGA_ARITY, literal_product(OMEGA1, 2))]))
        assert report.witness == R((0, literal_product(OMEGA1, 2)))
        assert report.to_json() == {"holds": False, "witness": "runs[(0, w1*2)]"}

    def test_finite_trees_always_hold(self):
        for tree in enumerate_trees(6):
            assert check_star(spec_of(tree)[0]).holds


class TestClassify:
    def test_rules(self):
        assert classify(Chain(OMEGA1)).cls == "Valdivia"
        assert classify(FullTree(2, OMEGA1)).rule == "Thm4.1(1)"
        c = classify(CB)
        assert (c.cls, c.rule) == ("NonCommutativeOnly", "S4-Example")
        c = classify(Chain(OMEGA2))
        assert (c.cls, c.rule) == ("NonCommutativeOnly", "Thm4.1(2)")
        c = classify(FullTree(OMEGA_ARITY, OMEGA1 + 1))
        assert (c.cls, c.rule) == ("NoSkeleton", "Thm3.1")
        assert c.witness == R((0, OMEGA1))
        c = classify(Graft(Chain(OMEGA1), [Chain(0), Chain(0)]))
        assert (c.cls, c.rule) == ("UnknownByPaper", "Thm3.1")

    def test_json_keys(self):
        assert set(classify(CB).to_json()) == {"class", "rule", "justification", "witness"}

    @settings(max_examples=30, deadline=None)
    @given(rngs())
    def test_valdivia_iff_star_and_low(self, rng):
        k = rng.randrange(4)
        spec = FullTree(rng.choice([1, 2, OMEGA_ARITY, OMEGA1_ARITY]),
                        rng.choice([W, OMEGA1, OMEGA1 + k, literal_product(OMEGA1, 2)]))
        c = classify(spec)
        if not check_star(spec).holds:
            assert c.cls == "NoSkeleton"
        elif spec.max_len <= OMEGA1:
            assert c.cls == "Valdivia"
        else:
            assert c.cls != "Valdivia"


class TestFamily:
    def test_membership(self):
        family = WitnessFamily(Chain(OMEGA1))
        assert Cone(R((0, 3))) in family
        assert Cone(ROOT) not in family
        assert Wedge(R((0, 3))) not in family

    def test_height_bound(self):
        with pytest.raises(HeightTooLarge):
            WitnessFamily(CB)
        with pytest.raises(HeightTooLarge):
            t0_separate(Chain(OMEGA2), ROOT, R((0, 1)))

    def test_members_containing(self):
        family = WitnessFamily(Chain(OMEGA1))
        assert list(family.members_containing(R((0, 3)))) == [Cone(R((0, k))) for k in (1, 2, 3)]
        got = list(itertools.islice(family.members_containing(R((0, W + 1))), 50))
        assert Cone(R((0, W + 1))) in got and Cone(R((0, 17))) in got
        with pytest.raises(RangeExceeded):
            next(family.members_containing(R((0, OMEGA1))))

    def test_family_member_containing(self):
        spec = FullTree(2, OMEGA1)
        x = R((0, W), (1, 4))
        assert family_member_containing(spec, x, R((0, 5))) == Cone(R((0, 5)))
        assert family_member_containing(spec, x, R((0, W))) is None
        assert family_member_containing(spec, x, R((1, 1))) is None

    def test_t0_examples(self):
        spec = FullTree(2, OMEGA1)
        assert t0_separate(spec, ROOT, R((0, 1))) == Cone(R((0, 1)))
        assert t0_separate(spec, R((0, W)), R((0, W), (1, 1))) == Cone(R((0, W), (1, 1)))
        assert t0_separate(spec, R((0, W)), R((0, OMEGA1))) == Cone(R((0, W + 1)))
        with pytest.raises(SamePoint):
            t0_separate(spec, ROOT, ROOT)

    @settings(max_examples=40, deadline=None)
    @given(rngs())
    def test_t0_separation(self, rng):
        for spec in LOW:
            s = random_node(spec, rng)
            t = random_node(spec, rng, s if rng.random() < 0.5 else None)
            if s == t:
                continue
            U = t0_separate(spec, s, t)
            assert U in WitnessFamily(spec)
            assert member(U, s) != member(U, t)

    def test_point_counts(self):
        spec = Chain(OMEGA1)
        assert point_count_tag(spec, R((0, W))) == "Countable"
        assert point_count_tag(spec, R((0, OMEGA1))) == "Uncountable"
        assert not in_induced_D(spec, R((0, OMEGA1)))

    @pytest.mark.parametrize("spec", LOW)
    def test_sampled_verification(self, spec):
        report = verify_witness_family(spec, random.Random(3), pairs=200, nodes=200)
        assert report.passed
        assert report.to_json() == {"t0Pairs": 200, "pointCountNodes": 200, "failures": []}


def _family_on(spec):
    tree, paths = embed(spec)
    family = WitnessFamily(spec)
    cones = {U for p in paths for U in family.members_containing(p)}
    return tree, paths, [{i for i, p in enumerate(paths) if member(U, p)} for U in cones]


def test_family_matches_oracle_on_finite_trees():
    for n in range(1, 8):
        for tree in enumerate_trees(n):
            spec, _ = spec_of(tree)
            T, paths, sets = _family_on(spec)
            report = brute_check_family(T, sets)
            assert report.t0
            # a node lies in one cone per successor-level node below it
            assert report.point_counts == tuple(T.depth(v) for v in T.nodes)


def test_family_on_a_named_finite_tree():
    T, paths, sets = _family_on(Explicit((0, 0, 1, 1, 2)))
    report = brute_check_family(T, sets)
    assert report.to_json() == {"t0": True, "pointCounts": [0, 1, 1, 2, 2, 2], "unseparated": []}
