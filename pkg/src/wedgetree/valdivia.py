"""Condition (*), classification of tree specs, and the clopen witness family.

A tree has a retractional skeleton iff every node of cofinality at least w1
has finitely many immediate successors.  Trees of height at most w1+1 are
Valdivia, certified here by the family of cones ``V_t`` over successor-level
nodes, which is T0-separating and point-countable exactly on the nodes of
countable cofinality.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import HeightTooLarge, RangeExceeded, SamePoint
from .ordinal import OMEGA1, OMEGA2, Cofinality, enumerate_below
from .topology import Cone
from .treealg import (
    OMEGA1_ARITY,
    OMEGA_ARITY,
    CappedBinary,
    Explicit,
    FullTree,
    Graft,
    NodePath,
    TreeSpec,
    _graft_path,
    _meet_paths,
    _truncate_path,
    cf_node,
    ims_descriptor,
    is_capped_binary_pattern,
    tree_height,
)

VALDIVIA_HEIGHT_BOUND = OMEGA1.succ()


@dataclass(frozen=True)
class StarReport:
    holds: bool
    witness: Optional[NodePath] = None

    def to_json(self):
        return {"holds": self.holds, "witness": None if self.witness is None else str(self.witness)}


def _star_witness(spec: TreeSpec) -> Optional[NodePath]:
    if isinstance(spec, FullTree):
        if spec.arity in (OMEGA_ARITY, OMEGA1_ARITY) and OMEGA1 < spec.max_len:
            return NodePath.of((0, OMEGA1))
        return None
    if isinstance(spec, (CappedBinary, Explicit)):
        return None
    if isinstance(spec, Graft):
        # leaves of the root receive finitely many children, so violations
        # come from the root's interior or from inside a child
        w = _star_witness(spec.root)
        if w is not None:
            return w
        for i, child in enumerate(spec.children):
            w = _star_witness(child)
            if w is not None:
                leaf = spec.root.some_leaf()
                return _graft_path(leaf.runs + ((i, 1),), w)
        return None
    raise TypeError(f"unsupported spec {spec!r}")


@functools.lru_cache(maxsize=256)
def check_star(spec: TreeSpec) -> StarReport:
    w = _star_witness(spec)
    return StarReport(w is None, w)


def witness_violates_star(spec: TreeSpec, w: NodePath) -> bool:
    """Independent recheck of a reported witness at node level."""
    return cf_node(spec, w) >= Cofinality.OMEGA1 and not ims_descriptor(spec, w).is_finite


def in_induced_D(spec: TreeSpec, t: NodePath) -> bool:
    return cf_node(spec, t) <= Cofinality.OMEGA


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    cls: str  # Valdivia | NonCommutativeOnly | NoSkeleton | UnknownByPaper
    rule: str
    justification: str
    witness: Optional[NodePath] = None

    def to_json(self):
        return {"class": self.cls, "rule": self.rule, "justification": self.justification,
                "witness": None if self.witness is None else str(self.witness)}


def classify(spec: TreeSpec) -> Classification:
    star = check_star(spec)
    if not star.holds:
        return Classification("NoSkeleton", "Thm3.1",
                              "a node of cofinality >= w1 has infinitely many immediate successors",
                              star.witness)
    height = tree_height(spec)
    if height <= VALDIVIA_HEIGHT_BOUND:
        return Classification("Valdivia", "Thm4.1(1)", f"height {height} <= w1 + 1")
    if is_capped_binary_pattern(spec):
        return Classification("NonCommutativeOnly", "S4-Example",
                              "binary tree of height w1 + 2 with unique caps: skeleton, but not Valdivia")
    if height > OMEGA2:
        return Classification("NonCommutativeOnly", "Thm4.1(2)",
                              f"condition (*) holds but height {height} >= w2 + 1 rules out Valdivia")
    return Classification("UnknownByPaper", "Thm3.1",
                          f"condition (*) gives a skeleton; Valdivia-ness at height {height} is not decided")


# ---------------------------------------------------------------------------
# the witness family {V_t : ht(t) successor}


def _require_height(spec: TreeSpec):
    height = tree_height(spec)
    if height > VALDIVIA_HEIGHT_BOUND:
        raise HeightTooLarge(f"tree height {height} exceeds w1 + 1")


def is_family_node(t: NodePath) -> bool:
    return t.height.is_successor


@dataclass(frozen=True)
class WitnessFamily:
    """The clopen family of cones over successor-level nodes of ``spec``."""

    spec: TreeSpec
    rule: str = "V_t for t in D with ht(t) a successor ordinal"

    def __post_init__(self):
        _require_height(self.spec)

    def __contains__(self, basic) -> bool:
        return isinstance(basic, Cone) and is_family_node(basic.t)

    def members_containing(self, x: NodePath) -> Iterator[Cone]:
        """Enumerate ``U(x)``; only possible when ``x`` has countable height."""
        if not x.height.is_countable:
            raise RangeExceeded(f"U({x}) is uncountable")
        for beta in enumerate_below(x.height):
            yield Cone(_truncate_path(x, beta.succ()))


def family_member_containing(spec: TreeSpec, x: NodePath, t: NodePath) -> Optional[Cone]:
    _require_height(spec)
    cf_node(spec, x)
    if in_induced_D(spec, t) and is_family_node(t) and t <= x:
        return Cone(t)
    return None


def t0_separate(spec: TreeSpec, s: NodePath, t: NodePath) -> Cone:
    """A member of the family containing exactly one of ``s`` and ``t``."""
    _require_height(spec)
    cf_node(spec, s)
    cf_node(spec, t)
    if s == t:
        raise SamePoint(f"{s} = {t}")
    for a, b in ((s, t), (t, s)):
        if is_family_node(a):
            if not a < b:
                return Cone(a)
            return Cone(_truncate_path(b, a.height.succ()))
    if t < s:
        return Cone(_truncate_path(s, t.height.succ()))
    if s < t:
        return Cone(_truncate_path(t, s.height.succ()))
    return Cone(_truncate_path(t, _meet_paths(s, t).height.succ()))


def point_count_tag(spec: TreeSpec, t: NodePath) -> str:
    _require_height(spec)
    cf_node(spec, t)
    return "Countable" if t.height < OMEGA1 else "Uncountable"


@dataclass
class WitnessReport:
    pairs: int = 0
    nodes: int = 0
    failures: list = None

    def __post_init__(self):
        if self.failures is None:
            self.failures = []

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self):
        return {"t0Pairs": self.pairs, "pointCountNodes": self.nodes, "failures": list(self.failures)}


def verify_witness_family(spec: TreeSpec, rng, pairs: int = 500, nodes: int = 500) -> WitnessReport:
    """Sample T0 separation and point-countability of the cone family on ``spec``."""
    from .sampling import random_node
    from .topology import member

    family = WitnessFamily(spec)
    report = WitnessReport()
    while report.pairs < pairs:
        s = random_node(spec, rng)
        # half of the pairs share a long common stem, the interesting case
        t = random_node(spec, rng, _truncate_path(s, s.height) if rng.random() < 0.5 else None)
        if s == t:
            continue
        report.pairs += 1
        cone = t0_separate(spec, s, t)
        if cone not in family or member(cone, s) == member(cone, t):
            report.failures.append({"s": str(s), "t": str(t), "cone": cone.to_json()})
    for _ in range(nodes):
        x = random_node(spec, rng)
        report.nodes += 1
        countable = point_count_tag(spec, x) == "Countable"
        if countable != in_induced_D(spec, x):
            report.failures.append({"x": str(x), "tag": point_count_tag(spec, x)})
    return report
