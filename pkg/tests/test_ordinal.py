import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from wedgetree.sampling import random_ordinal_below
from wedgetree.errors import NotOmegaCofinal, RangeExceeded, Underflow
from wedgetree.ordinal import (
    OMEGA,
    OMEGA1,
    OMEGA2,
    ONE,
    ZERO,
    Cofinality,
    Comparison,
    Ordinal,
    cnf_normalize,
    enumerate_below,
    literal_power,
    literal_product,
    omega_power,
    ord_add,
    ord_cmp,
    ord_cofinality,
    ord_fundamental,
    ord_is_limit,
    ord_left_sub,
    ord_succ,
    ord_sup,
)

from .oracles import flat_add, flat_cmp, flatten
from .strategies import cnf, ordinals, rngs

W = OMEGA
E1 = (((), 1),)  # the exponent 1
W_PLUS_1 = ((E1, 1), ((), 1))
W_W = omega_power(OMEGA)


def w_times(k):
    return literal_product(OMEGA, k)


def w1_times(x):
    return literal_product(OMEGA1, x)


class TestExamples:
    def test_cmp(self):
        assert ord_cmp(W, W) == Comparison.EQ
        assert ord_cmp(W + 1, w_times(2)) == Comparison.LT
        assert ord_cmp(OMEGA1, W_W) == Comparison.GT

    def test_add(self):
        assert ord_add(W, 1) == Ordinal.countable(W_PLUS_1)
        assert ord_add(1, W) == W
        assert ord_add(OMEGA1, w1_times(2) + 3) == w1_times(3) + 3

    def test_add_matches_rewriting_oracle(self):
        # frozen from the flat-atom oracle: w1 + (w1*2 + 3) has atoms w1, w1, w1, 1, 1, 1
        result = ord_add(OMEGA1, w1_times(2) + 3)
        assert flatten(result) == flat_add(OMEGA1, w1_times(2) + 3)
        assert len(flatten(result)) == 6

    def test_left_sub(self):
        assert ord_left_sub(W, W + 5) == Ordinal.coerce(5)
        assert ord_left_sub(0, OMEGA1) == OMEGA1
        g = ord_left_sub(W + 1, w_times(2))
        assert g == W
        assert ord_add(W + 1, g) == w_times(2)

    def test_left_sub_underflow(self):
        with pytest.raises(Underflow):
            ord_left_sub(OMEGA1, W)

    def test_succ_and_limits(self):
        assert ord_succ(W) == W + 1
        assert ord_is_limit(OMEGA1)
        assert not ord_is_limit(OMEGA2 + 1)
        assert not ord_is_limit(ZERO)

    def test_cofinality(self):
        assert ord_cofinality(OMEGA1 + W) == Cofinality.OMEGA
        assert ord_cofinality(w1_times(2)) == Cofinality.OMEGA1
        assert ord_cofinality(OMEGA2) == Cofinality.OMEGA2
        assert ord_cofinality(ZERO) == Cofinality.ZERO
        assert ord_cofinality(OMEGA2 + 1) == Cofinality.ONE
        assert ord_cofinality(w1_times(W)) == Cofinality.OMEGA

    def test_fundamental_examples(self):
        for m in range(6):
            assert ord_fundamental(W, m) == Ordinal.coerce(m)
        assert ord_fundamental(W_W, 3) == omega_power(3)
        assert ord_fundamental(w1_times(W), 2) == w1_times(2)

    def test_fundamental_w_to_the_w_is_increasing(self):
        terms = [ord_fundamental(W_W, m) for m in range(10)]
        assert all(ord_cmp(a, b) == Comparison.LT for a, b in zip(terms, terms[1:]))
        assert all(t < W_W for t in terms)

    def test_w1_times_w_sup_property(self):
        alpha = w1_times(W)
        terms = [alpha.fundamental(m) for m in range(20)]
        assert terms == sorted(terms)
        # every ordinal below w1*w is passed by some term
        for beta in (w1_times(7) + W_W, w1_times(19), OMEGA1 + 1):
            m = alpha.fundamental_bound(beta)
            assert alpha.fundamental(m) >= beta
            assert m == 0 or alpha.fundamental(m - 1) < beta

    def test_no_fundamental_sequence(self):
        for alpha in (OMEGA1, OMEGA2, W + 1, ZERO):
            with pytest.raises(NotOmegaCofinal):
                alpha.fundamental(0)

    def test_strings(self):
        assert str(W) == "w"
        assert str(OMEGA1 + W_W + 3) == "w1 + w^w + 3"
        assert str(Ordinal(2, W_PLUS_1, ())) == "w2*2 + w1*(w + 1)"
        assert str(omega_power(W + 1)) == "w^(w + 1)"

    def test_literal_products(self):
        assert literal_product(W + 1, W) == omega_power(2)
        assert literal_product(W, W + 1) == omega_power(2) + W
        assert literal_product(3, OMEGA1) == OMEGA1
        assert literal_power(2, 5) == Ordinal.coerce(32)
        with pytest.raises(RangeExceeded):
            literal_product(OMEGA1, OMEGA1)
        with pytest.raises(RangeExceeded):
            literal_power(2, W)

    def test_sup(self):
        assert ord_sup([W, OMEGA1, ONE]) == OMEGA1
        assert ord_sup([]) == ZERO


class TestLaws:
    @given(ordinals(), ordinals(), ordinals())
    def test_associative(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @given(ordinals(), ordinals())
    def test_add_agrees_with_oracle(self, a, b):
        assert flatten(a + b) == flat_add(a, b)

    @given(ordinals(), ordinals())
    def test_order_agrees_with_oracle(self, a, b):
        expected = flat_cmp(flatten(a), flatten(b))
        assert int(ord_cmp(a, b)) == expected

    @given(ordinals(), ordinals())
    def test_left_sub_inverse(self, a, b):
        lo, hi = sorted((a, b))
        g = lo.left_sub(hi)
        assert lo + g == hi
        assert flat_add(lo, g) == flatten(hi)

    @given(ordinals(), ordinals())
    def test_right_monotone(self, a, b):
        assume(b)
        assert a < a + b

    @given(ordinals())
    def test_succ_pred(self, a):
        assert a.succ().pred() == a
        assert a.succ().is_successor

    @given(st.lists(st.tuples(cnf(1), st.integers(0, 3)), max_size=5))
    def test_normalize_idempotent(self, terms):
        once = cnf_normalize(terms)
        assert cnf_normalize(once) == once
        assert Ordinal.countable(once).is_normal()

    @given(ordinals())
    @settings(max_examples=200)
    def test_fundamental_sequence(self, a):
        assume(a.cofinality() == Cofinality.OMEGA)
        terms = [a.fundamental(m) for m in range(12)]
        assert all(x < y for x, y in zip(terms, terms[1:]))
        assert all(t < a for t in terms)

    @given(ordinals(), rngs())
    def test_fundamental_bound_is_least(self, a, rng):
        assume(a.cofinality() == Cofinality.OMEGA)
        b = random_ordinal_below(rng, a)
        m = a.fundamental_bound(b)
        assert a.fundamental(m) >= b
        if m:
            assert a.fundamental(m - 1) < b


class TestEnumeration:
    def test_finite(self):
        assert list(enumerate_below(Ordinal.coerce(4))) == [Ordinal.coerce(i) for i in range(4)]

    def test_below_w_plus_3(self):
        got = [x for _, x in zip(range(200), enumerate_below(W + 3))]
        assert len(set(got)) == len(got)
        assert all(x < W + 3 for x in got)
        assert {W, W + 1, W + 2} <= set(got)

    def test_below_w_to_the_w_is_injective(self):
        got = [x for _, x in zip(range(2000), enumerate_below(W_W))]
        assert len(set(got)) == len(got)
        assert all(x < W_W for x in got)
        assert omega_power(3) + w_times(2) + 1 in got

    def test_rank_classes_are_exhausted(self):
        # independent generation of every CNF with <= 3 terms, coefficients <= 3
        # and exponents drawn from the same class one level down
        def level(n):
            if n == 0:
                return [()]
            exps = sorted(set(level(n - 1)), reverse=True)
            out = set()
            for size in range(n + 1):
                for chosen in itertools.combinations(exps, size):
                    for coeffs in itertools.product(range(1, n + 1), repeat=size):
                        out.add(tuple(zip(chosen, coeffs)))
            return sorted(out)

        alpha = omega_power(2) + W + 2
        expected = {Ordinal.countable(c) for c in level(3)}
        expected = {x for x in expected if x < alpha}
        prefix = set(itertools.islice(enumerate_below(alpha), len(expected)))
        assert prefix == expected

    def test_uncountable_rejected(self):
        with pytest.raises(RangeExceeded):
            next(enumerate_below(OMEGA1))
