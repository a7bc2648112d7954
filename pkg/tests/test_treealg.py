import pytest
from hypothesis import given, settings

from wedgetree.errors import HeightExceeded, MalformedPath, MalformedSpec, NotANode
from wedgetree.oracle import FiniteTree, embed
from wedgetree.ordinal import OMEGA, OMEGA1, OMEGA2, Cofinality, Ordinal, literal_product
from wedgetree.sampling import random_node, random_ordinal_upto
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
    cf_node,
    contains,
    ht,
    ims_descriptor,
    is_capped_binary_pattern,
    is_leaf,
    meet,
    successor_levels_below,
    tree_height,
    truncate,
)

from .strategies import rngs

W = OMEGA
R = NodePath.of
CB = CappedBinary()

SPECS = [
    Chain(OMEGA1),
    Chain(literal_product(OMEGA1, 2)),
    CB,
    FullTree(2, OMEGA1),
    FullTree(3, W + 5),
    FullTree(OMEGA_ARITY, OMEGA1 + W),
    FullTree(OMEGA1_ARITY, W),
    Graft(Chain(1), [Chain(2), Chain(1)]),
    Graft(FullTree(2, W), [CB, FullTree(OMEGA_ARITY, 3)]),
    Explicit((0, 0, 1, 1, 2)),
]


class TestNodePath:
    def test_canonical_merging(self):
        assert R((0, 2), (0, W)) == R((0, W))
        assert R((0, W), (0, 2)) == R((0, W + 2))
        assert R((0, 1), (1, 1)).runs == ((0, Ordinal.coerce(1)), (1, Ordinal.coerce(1)))

    def test_rejects_non_canonical(self):
        with pytest.raises(MalformedPath):
            NodePath(((0, Ordinal.coerce(1)), (0, Ordinal.coerce(1))))
        with pytest.raises(MalformedPath):
            NodePath(((0, Ordinal()),))

    def test_prefix_order(self):
        a, b = R((0, W)), R((0, W), (1, 3))
        assert a < b and a <= b and not b <= a
        assert ROOT <= a
        assert not R((1, 1)).comparable(R((0, 1)))
        assert R((0, OMEGA1)) < R((0, OMEGA1), cap=True)

    def test_str(self):
        assert str(R((0, W), (1, 3))) == "runs[(0, w), (1, 3)]"
        assert str(R((0, OMEGA1), cap=True)) == "runs[(0, w1)]+cap"


class TestQueries:
    def test_contains(self):
        assert contains(Chain(OMEGA1), R((0, W)))
        assert not contains(FullTree(2, W), R((0, W), (1, 1)))
        assert contains(CB, R((0, OMEGA1), cap=True))
        assert not contains(CB, R((0, W), cap=True))
        assert not contains(FullTree(2, 3), R((2, 1)))

    def test_heights(self):
        assert ht(Chain(5), ROOT) == Ordinal()
        assert ht(FullTree(2, W + 5), R((0, W), (1, 2))) == W + 2
        assert ht(CB, R((0, OMEGA1), cap=True)) == OMEGA1 + 1

    def test_not_a_node(self):
        with pytest.raises(NotANode):
            ht(Chain(3), R((0, 4)))

    def test_cofinality(self):
        assert cf_node(Chain(OMEGA1), R((0, W))) == Cofinality.OMEGA
        assert cf_node(CB, R((1, OMEGA1))) == Cofinality.OMEGA1
        assert cf_node(CB, ROOT) == Cofinality.ZERO

    def test_meet(self):
        t = R((0, W), (1, 3))
        assert meet(FullTree(3, W + 5), t, t) == t
        assert meet(FullTree(3, W + 5), R((0, W), (1, 1)), R((0, W), (2, 1))) == R((0, W))

    def test_meet_agrees_with_finite_oracle(self):
        spec = FullTree(2, 5)
        s, t = R((0, 5)), R((0, 3), (1, 2))
        assert meet(spec, s, t) == R((0, 3))
        # recompute on the explicit copy of the tree
        tree, paths = embed(spec)
        index = {p: i for i, p in enumerate(paths)}
        assert paths[tree.meet(index[s], index[t])] == R((0, 3))

    def test_truncate(self):
        t = R((0, W), (1, 3))
        assert truncate(FullTree(2, W + 5), t, ht(FullTree(2, W + 5), t)) == t
        assert truncate(Chain(literal_product(W, 2)), R((0, literal_product(W, 2))), W) == R((0, W))
        r = truncate(FullTree(2, W + 5), t, W + 1)
        assert r == R((0, W), (1, 1))
        assert meet(FullTree(2, W + 5), r, t) == r and r.height == W + 1
        with pytest.raises(HeightExceeded):
            truncate(FullTree(2, W + 5), t, W + 4)

    def test_ims(self):
        assert ims_descriptor(Chain(W), R((0, W))).nodes == ()
        d = ims_descriptor(FullTree(OMEGA_ARITY, OMEGA1), R((0, 5)))
        assert d.kind == "countable" and not d.is_finite
        assert d.child(7) == R((0, 5), (7, 1)) and d.child(7) in d
        top = R((0, OMEGA1))
        assert ims_descriptor(CB, top).nodes == (top.capped(),)
        assert ims_descriptor(FullTree(OMEGA1_ARITY, W), ROOT).kind == "uncountable"

    def test_tree_height(self):
        assert tree_height(Chain(OMEGA1)) == OMEGA1 + 1
        assert tree_height(CB) == OMEGA1 + 2
        assert tree_height(FullTree(2, 3)) == Ordinal.coerce(4)
        assert tree_height(Chain(OMEGA2)) == OMEGA2 + 1
        assert tree_height(Graft(Chain(1), [Chain(2), Chain(1)])) == Ordinal.coerce(5)

    def test_full_tree_height_by_enumeration(self):
        tree, _ = embed(FullTree(2, 3))
        assert len(tree) == 15
        assert 1 + max(tree.depth(v) for v in tree.nodes) == 4

    def test_graft(self):
        g = Graft(Chain(1), [Chain(2), Chain(1)])
        tree, paths = embed(g)
        # root, the leaf, then 3 + 2 nodes of the two copies
        assert len(tree) == 1 + 1 + 3 + 2
        assert R((0, 1), (1, 1), (0, 1)) in paths
        assert is_leaf(g, R((0, 4)))
        with pytest.raises(MalformedSpec):
            Graft(CB, [Chain(1)])

    def test_explicit(self):
        spec = Explicit((0, 0, 1))
        assert spec.path_of(3) == R((0, 2))
        assert spec.path_of(2) == R((1, 1))
        assert spec.index_of(R((0, 2))) == 3
        with pytest.raises(MalformedSpec):
            Explicit((0, 3))

    def test_capped_binary_pattern(self):
        assert is_capped_binary_pattern(CB)
        assert is_capped_binary_pattern(Graft(FullTree(2, OMEGA1), [FullTree(1, 0)]))
        assert not is_capped_binary_pattern(Graft(Chain(OMEGA1), [Chain(0), Chain(0)]))

    def test_successor_levels(self):
        f = successor_levels_below(R((0, OMEGA1)))
        assert f(W) == R((0, W + 1))


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(rngs())
    def test_meet_laws(self, rng):
        for spec in SPECS:
            s, t, u = (random_node(spec, rng) for _ in range(3))
            m = meet(spec, s, t)
            assert m == meet(spec, t, s)
            assert m <= s and m <= t and contains(spec, m)
            assert meet(spec, meet(spec, s, t), u) == meet(spec, s, meet(spec, t, u))
            # the meet is the largest common lower bound along the chain below s
            if m != s:
                above = truncate(spec, s, m.height.succ())
                assert not above <= t

    @settings(max_examples=60, deadline=None)
    @given(rngs())
    def test_truncation_is_ancestor(self, rng):
        for spec in SPECS:
            t = random_node(spec, rng)
            beta = random_ordinal_upto(rng, t.height)
            r = truncate(spec, t, beta)
            assert r.height == beta and r <= t and contains(spec, r)

    @settings(max_examples=60, deadline=None)
    @given(rngs())
    def test_immediate_successors_have_next_height(self, rng):
        for spec in SPECS:
            t = random_node(spec, rng)
            d = ims_descriptor(spec, t)
            kids = d.nodes if d.is_finite else [d.child(i) for i in range(3)]
            for x in kids:
                assert contains(spec, x) and t < x and x.height == t.height.succ()

    @settings(max_examples=40, deadline=None)
    @given(rngs())
    def test_random_nodes_are_below_tree_height(self, rng):
        for spec in SPECS:
            t = random_node(spec, rng)
            assert contains(spec, t) and t.height < tree_height(spec)

    def test_embedding_is_a_tree(self):
        tree, paths = embed(Explicit((0, 0, 1, 1, 2)))
        assert isinstance(tree, FiniteTree) and len(paths) == 6
        for i, p in enumerate(paths):
            for j, q in enumerate(paths):
                assert tree.le(i, j) == (p <= q)
