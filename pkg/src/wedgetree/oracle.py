"""Brute-force ground truth on small explicit finite trees.

Everything here works directly from parent arrays, with no ordinals and no
words, so it shares no code paths with the symbolic engine it checks.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import BoundExceeded, NotFinite, NotMeetClosed

MAX_ENUMERATION = 12
MAX_EMBED = 10_000


@dataclass(frozen=True)
class FiniteTree:
    """A rooted tree on nodes ``0..n-1``; ``parents[0] == -1`` marks the root."""

    parents: Tuple[int, ...]
    _anc: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        parents = tuple(self.parents)
        object.__setattr__(self, "parents", parents)
        if not parents or parents[0] != -1:
            raise ValueError("node 0 must be the root")
        anc = []
        for i, p in enumerate(parents):
            if i == 0:
                anc.append(frozenset([0]))
                continue
            # reach the root without revisiting anything
            seen = [i]
            node = p
            while node != -1:
                if node in seen or not 0 <= node < len(parents):
                    raise ValueError(f"node {i} does not reach the root")
                seen.append(node)
                node = parents[node]
            anc.append(frozenset(seen))
        object.__setattr__(self, "_anc", tuple(anc))

    @classmethod
    def from_spec_parents(cls, parents: Sequence[int]) -> "FiniteTree":
        """From the ``parents[i-1]`` convention used by explicit specs."""
        return cls((-1, *parents))

    def __len__(self):
        return len(self.parents)

    @property
    def nodes(self):
        return range(len(self.parents))

    def ancestors(self, t: int) -> frozenset:
        """Predecessors of ``t`` together with ``t`` itself."""
        return self._anc[t]

    def le(self, s: int, t: int) -> bool:
        return s in self._anc[t]

    def depth(self, t: int) -> int:
        return len(self._anc[t]) - 1

    def meet(self, s: int, t: int) -> int:
        common = self._anc[s] & self._anc[t]
        return max(common, key=self.depth)

    def ims(self, t: int) -> List[int]:
        return [i for i, p in enumerate(self.parents) if p == t]

    def levels(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for i in self.nodes:
            out.setdefault(self.depth(i), []).append(i)
        return out

    def canonical(self) -> str:
        """AHU string: equal exactly for isomorphic rooted trees."""
        kids = [[] for _ in self.nodes]
        for i, p in enumerate(self.parents):
            if p >= 0:
                kids[p].append(i)

        def code(v):
            return "(" + "".join(sorted(code(c) for c in kids[v])) + ")"

        return code(0)


def _from_canonical(code: str) -> FiniteTree:
    """Rebuild a tree from its AHU string, numbering nodes in preorder."""
    parents = []
    stack = []
    for ch in code:
        if ch == "(":
            parents.append(stack[-1] if stack else -1)
            stack.append(len(parents) - 1)
        else:
            stack.pop()
    return FiniteTree(tuple(parents))


def enumerate_trees(n: int) -> Iterator[FiniteTree]:
    """All rooted trees on ``n`` nodes up to isomorphism, in a fixed order."""
    if n > MAX_ENUMERATION:
        raise BoundExceeded(f"enumeration is limited to {MAX_ENUMERATION} nodes")
    if n < 1:
        return
    layer = {"()"}
    for size in range(1, n):
        grown = set()
        for code in layer:
            tree = _from_canonical(code)
            for v in tree.nodes:
                grown.add(FiniteTree(tree.parents + (v,)).canonical())
        layer = grown
    for code in sorted(layer):
        yield _from_canonical(code)


def is_meet_closed(T: FiniteTree, A) -> bool:
    A = set(A)
    return all(T.meet(a, b) in A for a, b in itertools.combinations(A, 2))


def brute_retract(T: FiniteTree, A, t: int) -> int:
    """The highest member of ``A`` below or equal to ``t``."""
    A = set(A)
    if 0 not in A or not is_meet_closed(T, A):
        raise NotMeetClosed(f"{sorted(A)} must contain the root and be meet-closed")
    return max((a for a in A if T.le(a, t)), key=T.depth)


def meet_closed_subsets(T: FiniteTree, max_size: int) -> Iterator[frozenset]:
    """Every meet-closed set containing the root with at most ``max_size`` nodes."""
    others = [v for v in T.nodes if v != 0]
    for k in range(0, max_size):
        for combo in itertools.combinations(others, k):
            A = frozenset((0, *combo))
            if is_meet_closed(T, A):
                yield A


def random_meet_closed(T: FiniteTree, rng: random.Random, min_size: int) -> frozenset:
    """Meet-closure of a random seed, grown until it has more than ``min_size`` nodes."""
    if len(T) <= min_size:
        raise ValueError("tree too small")
    A = {0}
    pool = [v for v in T.nodes if v != 0]
    rng.shuffle(pool)
    for v in pool:
        A.add(v)
        A |= {T.meet(a, b) for a in A for b in A}
        if len(A) > min_size:
            break
    return frozenset(A)


@dataclass(frozen=True)
class FamilyReport:
    t0: bool
    point_counts: Tuple[int, ...]
    unseparated: Tuple[Tuple[int, int], ...] = ()

    def to_json(self):
        return {"t0": self.t0, "pointCounts": list(self.point_counts),
                "unseparated": [list(p) for p in self.unseparated]}


def brute_check_family(T: FiniteTree, family: Sequence) -> FamilyReport:
    """Exhaustive T0-separation and per-point membership counts of a set family."""
    family = [frozenset(U) for U in family]
    bad = tuple((s, t) for s, t in itertools.combinations(T.nodes, 2)
                if not any((s in U) != (t in U) for U in family))
    counts = tuple(sum(1 for U in family if x in U) for x in T.nodes)
    return FamilyReport(not bad, counts, bad)


def cone(T: FiniteTree, t: int) -> frozenset:
    return frozenset(x for x in T.nodes if T.le(t, x))


# ---------------------------------------------------------------------------
# bridge to tree specs


def embed(spec) -> Tuple[FiniteTree, list]:
    """Explicit copy of a finite spec plus the bijection ``index -> NodePath``."""
    from .treealg import ROOT, ims_descriptor

    paths = [ROOT]
    parents = [-1]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        t = paths[i]
        if not t.height.is_finite:
            raise NotFinite(f"{spec} has a node of infinite height")
        succ = ims_descriptor(spec, t)
        if not succ.is_finite:
            raise NotFinite(f"{t} has infinitely many immediate successors")
        for child in succ.nodes:
            if len(paths) >= MAX_EMBED:
                raise NotFinite(f"{spec} has more than {MAX_EMBED} nodes")
            paths.append(child)
            parents.append(i)
            queue.append(len(paths) - 1)
    return FiniteTree(tuple(parents)), paths


def spec_of(T: FiniteTree):
    """The explicit spec with the same node numbering as ``T``.

    Explicit specs need parents to precede children, so ``T`` is renumbered in
    breadth-first order; the returned map sends ``T``'s nodes to spec paths.
    """
    from .treealg import Explicit

    order = [0]
    for v in order:
        order.extend(T.ims(v))
    new_index = {v: i for i, v in enumerate(order)}
    spec = Explicit(tuple(new_index[T.parents[v]] for v in order[1:]))
    return spec, {v: spec.path_of(new_index[v]) for v in T.nodes}


@dataclass
class CompareReport:
    checks: int = 0
    mismatches: List[dict] = field(default_factory=list)

    def to_json(self):
        return {"checks": self.checks, "mismatches": len(self.mismatches),
                "examples": self.mismatches[:5]}


def compare_retractions(T: FiniteTree, subsets, spec=None, path=None,
                        report: CompareReport = None) -> CompareReport:
    """``skeleton.retract`` against :func:`brute_retract` for every node and subset.

    ``path`` maps nodes of ``T`` to nodes of ``spec``; both default to :func:`spec_of`.
    """
    from .skeleton import SkeletonIndex, retract

    report = report or CompareReport()
    if spec is None:
        spec, path = spec_of(T)
    back = {p: v for v, p in path.items()}
    for A in subsets:
        index = SkeletonIndex.from_core(spec, (path[a] for a in A))
        for t in T.nodes:
            report.checks += 1
            expected = brute_retract(T, A, t)
            got = back.get(retract(spec, index, path[t]))
            if got != expected:
                report.mismatches.append({"tree": list(T.parents), "A": sorted(A), "t": t,
                                          "oracle": expected, "skeleton": got})
    return report


def compare_spec(spec, all_subsets: bool = False, max_size: int = 5, rng: random.Random = None,
                 samples: int = 100) -> CompareReport:
    """Oracle comparison for a finite spec: meets and retractions on meet-closed subsets."""
    from .treealg import meet

    T, paths = embed(spec)
    rng = rng or random.Random(0)
    report = CompareReport()
    index_of = {p: i for i, p in enumerate(paths)}
    for s, t in itertools.combinations(T.nodes, 2):
        report.checks += 1
        if index_of[meet(spec, paths[s], paths[t])] != T.meet(s, t):
            report.mismatches.append({"meet": [s, t]})
    if all_subsets:
        subsets = list(meet_closed_subsets(T, len(T) if len(T) <= 12 else max_size))
    else:
        subsets = [frozenset({0})]
        if len(T) > 1:
            subsets += [random_meet_closed(T, rng, rng.randrange(len(T))) for _ in range(samples)]
    return compare_retractions(T, subsets, spec, dict(enumerate(paths)), report)
