"""Hypothesis strategies for ordinals and nodes."""

import random

from hypothesis import strategies as st

from wedgetree.ordinal import Ordinal


def cnf(depth=2, max_terms=3):
    """Countable ordinals in CNF with exponents nested ``depth`` levels deep."""
    if depth == 0:
        exps = st.just(())
    else:
        exps = cnf(depth - 1, 2)
    terms = st.lists(st.tuples(exps, st.integers(1, 3)), max_size=max_terms)

    def build(ts):
        merged = {}
        for e, k in ts:
            merged[e] = merged.get(e, 0) + k
        return tuple(sorted(merged.items(), reverse=True))

    return terms.map(build)


def ordinals(max_omega2=2):
    return st.builds(Ordinal, st.integers(0, max_omega2), st.one_of(st.just(()), cnf()), cnf())


def countable_ordinals():
    return cnf().map(Ordinal.countable)


def rngs():
    return st.integers(0, 2**32 - 1).map(random.Random)
