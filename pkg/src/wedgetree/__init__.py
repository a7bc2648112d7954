"""Retractional skeletons and Valdivia witnesses for trees with the coarse wedge topology."""

from .ordinal import OMEGA, OMEGA1, OMEGA2, ONE, ZERO, Cofinality, Ordinal
from .treealg import (
    ROOT,
    CappedBinary,
    Chain,
    Explicit,
    FullTree,
    Graft,
    NodePath,
    TreeSpec,
    meet,
)
from .topology import Bounded, Cone, Wedge, member
from .skeleton import SkeletonIndex, retract, saturate
from .valdivia import check_star, classify
from .dsl import parse

__all__ = [
    "OMEGA", "OMEGA1", "OMEGA2", "ONE", "ZERO", "Cofinality", "Ordinal",
    "ROOT", "CappedBinary", "Chain", "Explicit", "FullTree", "Graft", "NodePath", "TreeSpec",
    "meet", "Bounded", "Cone", "Wedge", "member", "SkeletonIndex", "retract", "saturate",
    "check_star", "classify", "parse",
]
