"""Basic clopen sets of the coarse wedge topology, as membership predicates.

Trees are uncountable in general, so sets are never materialised: each basic
set is a small descriptor and :func:`member` decides membership exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable

from .errors import BadDepth, BadExclusion, MalformedSet, NotANode
from .ordinal import Ordinal
from .treealg import (
    NodePath,
    TreeSpec,
    _truncate_path,
    contains,
    ims_descriptor,
)


def _subbasic_height(t: NodePath) -> bool:
    return not t.height or t.height.is_successor


class BasicOpenSet:
    kind = ""

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Cone(BasicOpenSet):
    """``V_t``: every node above or equal to ``t``."""

    t: NodePath
    kind = "cone"

    def __post_init__(self):
        if not _subbasic_height(self.t):
            raise MalformedSet(f"V_t is only subbasic for t minimal or on a successor level, got {self.t}")

    def to_json(self):
        return {"kind": "cone", "t": str(self.t)}


@dataclass(frozen=True)
class Wedge(BasicOpenSet):
    """``W_s^F``: the cone over ``s`` minus the cones over the nodes in ``F``."""

    s: NodePath
    F: FrozenSet[NodePath] = frozenset()
    kind = "wedge"

    def __post_init__(self):
        object.__setattr__(self, "F", frozenset(self.F))
        if not _subbasic_height(self.s):
            raise MalformedSet(f"wedge base {self.s} must be the root or on a successor level")
        for r in self.F:
            if not self.s < r:
                raise MalformedSet(f"excluded node {r} is not above {self.s}")

    def to_json(self):
        return {"kind": "wedge", "s": str(self.s),
                "F": sorted((str(r) for r in self.F))}


@dataclass(frozen=True)
class Bounded(BasicOpenSet):
    """``V(g, alpha)``: nodes agreeing with ``g`` on the first ``alpha`` coordinates."""

    g: NodePath
    alpha: Ordinal
    kind = "bounded"

    def __post_init__(self):
        object.__setattr__(self, "alpha", Ordinal.coerce(self.alpha))
        if self.g.cap or self.g.length < self.alpha:
            raise MalformedSet(f"{self.g} is shorter than {self.alpha}")

    def to_json(self):
        return {"kind": "bounded", "g": str(self.g), "alpha": str(self.alpha)}


def member(basic: BasicOpenSet, x: NodePath) -> bool:
    if isinstance(basic, Cone):
        return basic.t <= x
    if isinstance(basic, Wedge):
        return basic.s <= x and not any(r <= x for r in basic.F)
    if isinstance(basic, Bounded):
        if x.length < basic.alpha:
            return False
        return _truncate_path(NodePath(x.runs), basic.alpha) == _truncate_path(basic.g, basic.alpha)
    raise MalformedSet(f"unknown basic set {basic!r}")


def _check_exclusion(spec, t, F):
    succ = ims_descriptor(spec, t)
    for r in F:
        if not contains(spec, r) or r not in succ:
            raise BadExclusion(f"{r} is not an immediate successor of {t}")


def local_base_element(spec: TreeSpec, t: NodePath, depth=None, F: Iterable[NodePath] = ()) -> Wedge:
    """A member of the canonical local base at ``t``.

    For ``t`` at height zero or a successor height the set is ``W_t^F``; at a
    limit height it is ``W_s^F`` with ``s`` the ancestor of ``t`` at the
    successor height ``depth``.  ``F`` must consist of immediate successors of ``t``.
    """
    if not contains(spec, t):
        raise NotANode(f"{t} is not a node of {spec}")
    F = frozenset(F)
    _check_exclusion(spec, t, F)
    if _subbasic_height(t):
        return Wedge(t, F)
    if depth is None:
        raise BadDepth(f"{t} is on a limit level; a depth is required")
    depth = Ordinal.coerce(depth)
    if not depth.is_successor or not depth < t.height:
        raise BadDepth(f"depth {depth} must be a successor below {t.height}")
    return Wedge(_truncate_path(t, depth), F)


def is_isolated(spec: TreeSpec, t: NodePath) -> bool:
    d = ims_descriptor(spec, t)
    return _subbasic_height(t) and d.is_finite


def isolating_wedge(spec: TreeSpec, t: NodePath) -> Wedge:
    """``W_t^{ims(t)}``, which is ``{t}`` exactly when ``t`` is isolated."""
    d = ims_descriptor(spec, t)
    if not (_subbasic_height(t) and d.is_finite):
        raise BadExclusion(f"{t} is not isolated")
    return Wedge(t, d.nodes)


def intersect_cone(W: Wedge, t: NodePath) -> Wedge:
    """``W ∩ V_t`` for ``t`` in ``W`` on a successor level (or the root)."""
    if not member(W, t):
        raise MalformedSet(f"{t} is not in the wedge")
    return Wedge(t, frozenset(r for r in W.F if t < r))


def basic_set_from_json(data: dict) -> BasicOpenSet:
    from .dsl import parse_node

    kind = data.get("kind")
    if kind == "cone":
        return Cone(parse_node(data["t"]))
    if kind == "wedge":
        return Wedge(parse_node(data["s"]), frozenset(parse_node(r) for r in data.get("F", [])))
    if kind == "bounded":
        from .dsl import parse_ordinal

        return Bounded(parse_node(data["g"]), parse_ordinal(data["alpha"]))
    raise MalformedSet(f"unknown basic set kind {kind!r}")
