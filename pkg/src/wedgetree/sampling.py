"""Random ordinals and random nodes of a tree spec.

The generators are biased towards structurally interesting values (limit
heights, w1, leaves, caps) because uniform sampling over an uncountable tree
is meaningless anyway.  All randomness flows through a ``random.Random``.
"""

from __future__ import annotations

import random
from typing import List, Optional

from .ordinal import (
    CNF_OMEGA,
    OMEGA,
    OMEGA1,
    Ordinal,
    cnf_add,
    cnf_nat,
)
from .treealg import (
    OMEGA1_ARITY,
    OMEGA_ARITY,
    ROOT,
    CappedBinary,
    Explicit,
    FullTree,
    Graft,
    NodePath,
    TreeSpec,
    _graft_path,
    _merge,
    _take,
)

_OMEGA_SQ = ((cnf_nat(2), 1),)
_BIG = ((_OMEGA_SQ, 1),)  # w^(w^2): a generous bound for "any countable ordinal"


def random_below_power(rng: random.Random, e) -> tuple:
    """A random countable ordinal below ``w^e``."""
    if e == () or rng.random() < 0.25:
        return ()
    f = random_cnf_below(rng, e)
    head = ((f, rng.randint(1, 3)),)
    return cnf_add(head, random_below_power(rng, f))


def random_cnf_below(rng: random.Random, c) -> tuple:
    """A random countable ordinal strictly below the nonzero ``c``."""
    i = rng.randrange(len(c))
    e, k = c[i]
    j = rng.randrange(k)
    head = c[:i] + (((e, j),) if j else ())
    return cnf_add(head, random_below_power(rng, e))


def random_countable(rng: random.Random) -> Ordinal:
    return Ordinal(0, (), random_cnf_below(rng, _BIG))


def random_ordinal(rng: random.Random, max_omega2: int = 2) -> Ordinal:
    """A random ordinal of the whole representable range (``w2`` coefficient bounded)."""
    n = rng.randint(0, max_omega2) if rng.random() < 0.3 else 0
    b = random_cnf_below(rng, _BIG) if rng.random() < 0.5 else ()
    return Ordinal(n, b, random_cnf_below(rng, _BIG))


def random_ordinal_below(rng: random.Random, bound: Ordinal) -> Ordinal:
    if not bound:
        raise ValueError("nothing is below 0")
    options = []
    if bound.omega2:
        options.append("n")
    if bound.omega1:
        options.append("b")
    if bound.tail:
        options.append("c")
    pick = rng.choice(options)
    if pick == "n":
        b = random_cnf_below(rng, _BIG) if rng.random() < 0.5 else ()
        return Ordinal(rng.randrange(bound.omega2), b, random_cnf_below(rng, _BIG))
    if pick == "b":
        return Ordinal(bound.omega2, random_cnf_below(rng, bound.omega1), random_cnf_below(rng, _BIG))
    return Ordinal(bound.omega2, bound.omega1, random_cnf_below(rng, bound.tail))


_LANDMARKS = [OMEGA, OMEGA1, OMEGA1 + OMEGA, OMEGA1 + 1, Ordinal(0, (((), 2),), ()),
              Ordinal(0, CNF_OMEGA, ())]


def random_ordinal_upto(rng: random.Random, bound: Ordinal) -> Ordinal:
    """A random ordinal ``<= bound``; the bound itself and landmarks are favoured."""
    roll = rng.random()
    if roll < 0.25 or not bound:
        return bound
    if roll < 0.4:
        marks = [m for m in _LANDMARKS if m <= bound]
        if marks:
            return rng.choice(marks)
    return random_ordinal_below(rng, bound)


def _random_label(rng, arity):
    if arity == OMEGA_ARITY:
        return rng.randrange(6)
    if arity == OMEGA1_ARITY:
        if rng.random() < 0.3:
            return random_countable(rng)
        return rng.randrange(6)
    return rng.randrange(arity)


def random_runs(rng: random.Random, gamma: Ordinal, arity) -> tuple:
    """Random runs of total length ``gamma`` with labels drawn from ``arity``."""
    if not gamma:
        return ()
    cuts = sorted({random_ordinal_below(rng, gamma) for _ in range(rng.randint(0, 3))})
    points = [Ordinal()] + [c for c in cuts if c] + [gamma]
    runs = []
    for lo, hi in zip(points, points[1:]):
        runs.append((_random_label(rng, arity), lo.left_sub(hi)))
    return _merge(runs)


def random_node(spec: TreeSpec, rng: random.Random, above: Optional[NodePath] = None) -> NodePath:
    """A random node of ``spec``, above ``above`` when given."""
    base = ROOT if above is None else above
    if isinstance(spec, FullTree):
        rem = base.length.left_sub(spec.max_len)
        gamma = random_ordinal_upto(rng, rem)
        return base.extend(*random_runs(rng, gamma, spec.arity))
    if isinstance(spec, CappedBinary):
        if base.cap:
            return base
        rem = base.length.left_sub(OMEGA1)
        gamma = random_ordinal_upto(rng, rem)
        node = base.extend(*random_runs(rng, gamma, 2))
        if node.length == OMEGA1 and rng.random() < 0.5:
            node = node.capped()
        return node
    if isinstance(spec, Explicit):
        i = spec.index_of(base)
        while spec._children[i] and rng.random() < 0.75:
            i = rng.choice(spec._children[i])
        return spec.path_of(i)
    if isinstance(spec, Graft):
        return _random_graft(spec, rng, base, leaf_only=False)
    raise TypeError(f"unsupported spec {spec!r}")


def random_leaf(spec: TreeSpec, rng: random.Random, above: Optional[NodePath] = None) -> NodePath:
    base = ROOT if above is None else above
    if isinstance(spec, FullTree):
        rem = base.length.left_sub(spec.max_len)
        return base.extend(*random_runs(rng, rem, spec.arity))
    if isinstance(spec, CappedBinary):
        if base.cap:
            return base
        rem = base.length.left_sub(OMEGA1)
        return base.extend(*random_runs(rng, rem, 2)).capped()
    if isinstance(spec, Explicit):
        i = spec.index_of(base)
        while spec._children[i]:
            i = rng.choice(spec._children[i])
        return spec.path_of(i)
    if isinstance(spec, Graft):
        return _random_graft(spec, rng, base, leaf_only=True)
    raise TypeError(f"unsupported spec {spec!r}")


def _random_graft(spec: Graft, rng, base: NodePath, leaf_only: bool) -> NodePath:
    lam, i, local = spec._locate(base)
    if lam is None:
        if not leaf_only and rng.random() < 0.5:
            return random_node(spec.root, rng, base)
        leaf = random_leaf(spec.root, rng, base)
        i = rng.randrange(len(spec.children))
        head = leaf.runs + ((i, Ordinal.coerce(1)),)
        local = None
    elif i is None:
        i = rng.randrange(len(spec.children))
        head = base.runs + ((i, Ordinal.coerce(1)),)
        local = None
    else:
        head = _take(base.runs, lam.succ())
    child = spec.children[i]
    inner = random_leaf(child, rng, local) if leaf_only else random_node(child, rng, local)
    return _graft_path(head, inner)


def random_nodes(spec: TreeSpec, rng: random.Random, k: int) -> List[NodePath]:
    return [random_node(spec, rng) for _ in range(k)]
