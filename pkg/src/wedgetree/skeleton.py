"""Index sets of the retractional skeleton, their closures, and the retractions.

An index is a countable set ``A`` containing the root, closed under meets,
under ``phi`` (a successor-level sequence converging to each node of
cofinality w) and under ``psi`` (all immediate successors of each node of
cofinality >= w1).  It is represented by a finite *core* plus finitely many
*phi-tails*, each tail being the canonical sequence below one core node of
cofinality w.

Why a finite core suffices: a tail element ``y`` lies below its target ``u``,
so for any node ``x`` the meet ``x ∧ y`` is either ``y`` itself or ``x ∧ u``.
Meets involving tail elements therefore never leave ``core ∪ tails`` once the
core is meet-closed and contains every target, and saturation only has to
close the finite core.

The retraction is ``r_A(t) = max(t̂ ∩ cl(A) ∩ D)`` with ``D`` the nodes of
countable cofinality.  For these finitely generated indices ``cl(A) = A``:
each tail converges to its own target, which is already in the core.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, FrozenSet, Iterable, List, Optional, Sequence, Union

from .errors import (
    NonTermination,
    NotAChain,
    NotANode,
    NotComparable,
    NotInSet,
    StarViolated,
)
from .ordinal import Cofinality, Ordinal
from .topology import Wedge, intersect_cone, local_base_element, member
from .treealg import (
    ROOT,
    NodePath,
    TreeSpec,
    _meet_paths,
    _truncate_path,
    contains,
    ims_descriptor,
)
from .valdivia import check_star

MAX_SATURATION_ROUNDS = 64


@dataclass(frozen=True)
class PhiTail:
    """The canonical successor-level sequence converging to ``target``."""

    target: NodePath

    def __post_init__(self):
        if self.target.height.cofinality() != Cofinality.OMEGA:
            raise ValueError(f"phi-tail target {self.target} must have cofinality w")

    def element(self, m: int) -> NodePath:
        h = self.target.height
        return _truncate_path(self.target, h.fundamental(m).succ())

    def index_of(self, x: NodePath) -> Optional[int]:
        if x.cap or not x.height.is_successor or not x < self.target:
            return None
        return self.target.height.fundamental_index(x.height.pred())

    def last_at_most(self, beta: Ordinal) -> Optional[int]:
        """Largest ``m`` whose element has height ``<= beta`` (``beta < ht(target)``)."""
        h = self.target.height
        if not beta:
            return None
        # element m has height fund(m) + 1, which is <= beta iff fund(m) < beta
        m = h.fundamental_bound(beta)
        return m - 1 if m else None

    def to_json(self):
        return {"target": str(self.target)}


@dataclass(frozen=True)
class SkeletonIndex:
    """A finitely generated member of the index class: finite core plus phi-tails."""

    core: FrozenSet[NodePath]
    tails: FrozenSet[PhiTail] = frozenset()
    _core_d: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "core", frozenset(self.core))
        object.__setattr__(self, "tails", frozenset(self.tails))
        in_d = [c for c in self.core if c.height.cofinality() <= Cofinality.OMEGA]
        in_d.sort(key=lambda c: c.height, reverse=True)
        object.__setattr__(self, "_core_d", tuple(in_d))

    @classmethod
    def from_core(cls, spec: TreeSpec, nodes: Iterable[NodePath]) -> "SkeletonIndex":
        """Wrap an explicit core, attaching the tails it requires, and validate it."""
        core = frozenset(nodes)
        tails = frozenset(PhiTail(c) for c in core if c.height.cofinality() == Cofinality.OMEGA)
        index = cls(core, tails)
        problems = check_index(spec, index)
        if problems:
            raise ValueError("; ".join(problems))
        return index

    @property
    def targets(self) -> FrozenSet[NodePath]:
        return frozenset(t.target for t in self.tails)

    def restrict_to_D(self) -> "SkeletonIndex":
        """``A ∩ D`` as a generated set (tail elements already lie in ``D``)."""
        return SkeletonIndex(frozenset(self._core_d), self.tails)

    def tail_elements(self, upto: int) -> List[NodePath]:
        return [tail.element(m) for tail in sorted(self.tails, key=lambda x: x.target.sort_key())
                for m in range(upto)]

    def to_json(self):
        return {"core": [str(c) for c in sorted(self.core, key=NodePath.sort_key)],
                "tails": [t.to_json() for t in sorted(self.tails, key=lambda x: x.target.sort_key())]}


def _require_star(spec: TreeSpec):
    report = check_star(spec)
    if not report.holds:
        raise StarViolated(f"{spec} violates (*) at {report.witness}")


def _require_nodes(spec, nodes):
    for t in nodes:
        if not contains(spec, t):
            raise NotANode(f"{t} is not a node of {spec}")


def saturate(spec: TreeSpec, seed: Iterable[NodePath] = ()) -> SkeletonIndex:
    """Smallest finitely generated index whose denoted set contains ``seed``."""
    _require_star(spec)
    core = {ROOT, *seed}
    _require_nodes(spec, core)
    for _ in range(MAX_SATURATION_ROUNDS):
        nodes = list(core)
        grown = set(core)
        for i, a in enumerate(nodes):
            for b in nodes[i + 1:]:
                grown.add(_meet_paths(a, b))
        for x in nodes:
            if x.height.cofinality() >= Cofinality.OMEGA1:
                succ = ims_descriptor(spec, x)
                if not succ.is_finite:
                    raise StarViolated(f"psi({x}) is infinite")
                grown.update(succ.nodes)
        if grown == core:
            break
        core = grown
    else:
        raise NonTermination(f"saturation did not stabilise within {MAX_SATURATION_ROUNDS} rounds")
    tails = frozenset(PhiTail(x) for x in core if x.height.cofinality() == Cofinality.OMEGA)
    return SkeletonIndex(frozenset(core), tails)


def check_index(spec: TreeSpec, A: SkeletonIndex) -> List[str]:
    """List every violated invariant of a skeleton index (empty when valid)."""
    problems = []
    if ROOT not in A.core:
        problems.append("root missing from core")
    nodes = list(A.core)
    for i, a in enumerate(nodes):
        if not contains(spec, a):
            problems.append(f"{a} is not a node")
            continue
        for b in nodes[i + 1:]:
            if _meet_paths(a, b) not in A.core:
                problems.append(f"meet of {a} and {b} missing")
        cf = a.height.cofinality()
        if cf == Cofinality.OMEGA and a not in A.targets:
            problems.append(f"no phi-tail for {a}")
        if cf >= Cofinality.OMEGA1:
            succ = ims_descriptor(spec, a)
            if not succ.is_finite:
                problems.append(f"psi({a}) is infinite")
            elif not set(succ.nodes) <= A.core:
                problems.append(f"psi({a}) not contained in core")
    for u in A.targets:
        if u not in A.core:
            problems.append(f"tail target {u} not in core")
    return problems


# ---------------------------------------------------------------------------
# closure membership and retraction


@dataclass(frozen=True)
class ClosureMembership:
    kind: str  # InCore | InTail | LimitPoint | Outside
    index: Optional[int] = None
    target: Optional[NodePath] = None

    @property
    def in_closure(self) -> bool:
        return self.kind != "Outside"


def closure_member(spec: TreeSpec, A: SkeletonIndex, x: NodePath) -> ClosureMembership:
    _require_nodes(spec, [x])
    if x in A.core:
        return ClosureMembership("InCore")
    for tail in sorted(A.tails, key=lambda t: t.target.sort_key()):
        m = tail.index_of(x)
        if m is not None:
            return ClosureMembership("InTail", m, tail.target)
    if x in A.targets:
        # only possible for generated sets that are not saturated
        return ClosureMembership("LimitPoint")
    return ClosureMembership("Outside")


def in_denoted(A: SkeletonIndex, x: NodePath) -> bool:
    return x in A.core or any(t.index_of(x) is not None for t in A.tails)


def _retract(A: SkeletonIndex, t: NodePath) -> NodePath:
    best = None
    for c in A._core_d:
        if c <= t:
            best = c
            break
    for tail in A.tails:
        u = tail.target
        if u <= t:
            continue  # u itself is in core ∩ D and dominates its tail
        mu = _meet_paths(u, t)
        m = tail.last_at_most(mu.height)
        if m is not None:
            y = tail.element(m)
            if best is None or best.height < y.height:
                best = y
    return best


def retract(spec: TreeSpec, A: SkeletonIndex, t: NodePath) -> NodePath:
    """``r_A(t)``: the highest node of ``cl(A) ∩ D`` below or equal to ``t``."""
    _require_star(spec)
    _require_nodes(spec, [t])
    return _retract(A, t)


def is_subindex(A: SkeletonIndex, B: SkeletonIndex) -> bool:
    """Denoted-set inclusion, decided on generators."""
    return all(in_denoted(B, c) for c in A.core) and A.targets <= B.targets


# ---------------------------------------------------------------------------
# axiom checks


@dataclass
class AxiomReport:
    axiom: str
    samples: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: "AxiomReport") -> "AxiomReport":
        self.samples += other.samples
        self.failures.extend(other.failures)
        return self

    def to_json(self):
        return {"axiom": self.axiom, "samples": self.samples, "failures": list(self.failures)}


def check_axiom_ii(spec: TreeSpec, A: SkeletonIndex, B: SkeletonIndex,
                   samples: Iterable[NodePath]) -> AxiomReport:
    """``r_A = r_B ∘ r_A = r_A ∘ r_B`` whenever ``A ⊆ B``."""
    if not is_subindex(A, B):
        raise NotComparable("first index is not contained in the second")
    report = AxiomReport("ii")
    for t in samples:
        report.samples += 1
        ra = retract(spec, A, t)
        rb = retract(spec, B, t)
        left = retract(spec, B, ra)
        right = retract(spec, A, rb)
        if not (ra == left == right):
            report.failures.append({"t": str(t), "rA": str(ra), "rB(rA)": str(left), "rA(rB)": str(right)})
    return report


def check_axiom_iii(spec: TreeSpec, chain: Union[Sequence[SkeletonIndex], Callable[[int], SkeletonIndex]],
                    asup: SkeletonIndex, t: NodePath, horizon: int = 64, probes: int = 8) -> AxiomReport:
    """``r_sup(t) = lim r_{A_n}(t)`` along an increasing chain of indices.

    ``chain`` is either a finite list (whose union is its last member) or a
    function ``n -> A_n`` describing an infinite chain, examined on its first
    ``horizon`` members.  ``asup`` must have the same closure as the union.
    Increasing retraction values lie on the chain below ``t``, so the limit is
    the node of supremal height there: stabilisation is required when
    ``r_sup(t)`` has successor height, and otherwise every canonical probe
    height below it must be exceeded within the horizon.
    """
    finite = not callable(chain)
    members = list(chain) if finite else [chain(n) for n in range(horizon)]
    if not members:
        raise NotAChain("empty chain")
    for a, b in zip(members, members[1:]):
        if not is_subindex(a, b):
            raise NotAChain("chain is not increasing")
    if not is_subindex(members[-1], asup):
        raise NotAChain("supremum does not contain the chain")
    report = AxiomReport("iii", samples=1)
    target = retract(spec, asup, t)
    values = [retract(spec, a, t) for a in members]
    for a, b in zip(values, values[1:]):
        if not a <= b:
            report.failures.append({"t": str(t), "reason": "values decrease", "from": str(a), "to": str(b)})
    if any(not v <= target for v in values):
        report.failures.append({"t": str(t), "reason": "value above r_sup(t)"})
    if finite or not target.height.is_limit:
        if values[-1] != target:
            report.failures.append({"t": str(t), "reason": "limit differs",
                                    "limit": str(values[-1]), "r_sup": str(target)})
        return report
    h = target.height
    for k in range(probes):
        beta = h.fundamental(k)
        if not any(beta < v.height for v in values):
            report.failures.append({"t": str(t), "reason": "supremum not reached",
                                    "probe": str(beta), "r_sup": str(target)})
            break
    return report


def check_axiom_iv(spec: TreeSpec, t: NodePath, nbhd: Wedge) -> SkeletonIndex:
    """An index ``A`` with ``r_B(t) ∈ nbhd`` for every index ``B ⊇ A``.

    A node of countable cofinality is put into the index itself; otherwise the
    base of the neighbourhood (the root or a successor-level node below ``t``)
    is, which pins every ``r_B(t)`` between that base and ``t``.
    """
    _require_nodes(spec, [t])
    if not member(nbhd, t):
        raise NotInSet(f"{t} is not in the neighbourhood")
    if t.height.cofinality() <= Cofinality.OMEGA:
        return saturate(spec, [t])
    return saturate(spec, [nbhd.s])


def verify_axiom_iv(spec: TreeSpec, t: NodePath, nbhd: Wedge, A: SkeletonIndex,
                    supersets: Iterable[SkeletonIndex]) -> AxiomReport:
    report = AxiomReport("iv")
    for B in [A, *supersets]:
        report.samples += 1
        if not is_subindex(A, B):
            raise NotComparable("superset does not contain the witness index")
        r = retract(spec, B, t)
        if not member(nbhd, r):
            report.failures.append({"t": str(t), "nbhd": nbhd.to_json(), "r_B(t)": str(r)})
    return report


@dataclass(frozen=True)
class RangeWitness:
    """Countability witness for ``r_A[T] = cl(A) ∩ D``: a finite part plus w-indexed tails."""

    finite_part: tuple
    tails: tuple
    tag: str = "SeparableRange"

    @property
    def size(self):
        return "w" if self.tails else len(self.finite_part)

    def to_json(self):
        return {"tag": self.tag, "finite": [str(x) for x in self.finite_part],
                "tails": [str(u) for u in self.tails], "size": self.size}


def metrizability_tag(spec: TreeSpec, A: SkeletonIndex) -> RangeWitness:
    _require_star(spec)
    finite = tuple(sorted(A._core_d, key=NodePath.sort_key))
    tails = tuple(sorted(A.targets, key=NodePath.sort_key))
    return RangeWitness(finite, tails)


# ---------------------------------------------------------------------------
# continuity


def continuity_witness(spec: TreeSpec, A: SkeletonIndex, t: NodePath, W: Wedge) -> Wedge:
    """A basic neighbourhood ``U`` of ``t`` with ``r_A(U) ⊆ W``, given ``r_A(t) ∈ W``."""
    r = retract(spec, A, t)
    if not member(W, r):
        raise NotInSet(f"r_A({t}) = {r} is not in the given set")
    if r != t:
        # find U around t meeting no point of A ∩ D above r; r_A is constant there
        generators = list(A.core) + list(A.targets)
        if t.height.is_successor:
            s = t
        else:
            heights = [r.height] + [_meet_paths(a, t).height for a in generators if not a.comparable(t)]
            s = _truncate_path(t, max(heights).succ())
        F = frozenset(_truncate_path(a, t.height.succ()) for a in generators if t < a)
        return Wedge(s, F)
    if not t.height or t.height.is_successor:
        return intersect_cone(W, t)
    # t has cofinality w and lies in A: climb its tail past the base of W
    tail = PhiTail(t)
    if tail not in A.tails:
        raise NotInSet(f"{t} has no phi-tail in the index")
    w = tail.element(t.height.fundamental_bound(W.s.height))
    return Wedge(w, frozenset(x for x in W.F if w < x))


# ---------------------------------------------------------------------------
# randomized verification driver


def _random_seed(spec, rng, k):
    from .sampling import random_node

    return [random_node(spec, rng) for _ in range(k)]


def random_point_near(spec: TreeSpec, A: SkeletonIndex, rng: random.Random) -> NodePath:
    """A random node above a core node, or branching off below a tail target."""
    from .sampling import random_node, random_ordinal_below

    if A.tails and rng.random() < 0.5:
        u = rng.choice(sorted(A.targets, key=NodePath.sort_key))
        return random_node(spec, rng, _truncate_path(u, random_ordinal_below(rng, u.height)))
    return random_node(spec, rng, rng.choice(sorted(A.core, key=NodePath.sort_key)))


def random_neighbourhood(spec: TreeSpec, t: NodePath, rng: random.Random) -> Wedge:
    """A random member of the local base at ``t``."""
    from .sampling import random_ordinal_below

    succ = ims_descriptor(spec, t)
    if succ.is_finite:
        pool = list(succ.nodes)
    else:
        pool = [succ.child(i) for i in range(4)]
    F = [x for x in pool if rng.random() < 0.5]
    depth = None
    if t.height.is_limit:
        depth = random_ordinal_below(rng, t.height)
        if not depth.is_successor:
            depth = depth.succ()
    return local_base_element(spec, t, depth, F)


def verify_skeleton(spec: TreeSpec, rng: random.Random, samples: int = 100, pairs: int = 20,
                    chains: int = 20, chain_length: int = 5, neighbourhoods: int = 50) -> List[AxiomReport]:
    """Randomised check of axioms (ii), (iii) and (iv) on ``spec``."""
    from .sampling import random_node

    _require_star(spec)
    ii = AxiomReport("ii")
    for _ in range(pairs):
        seed = _random_seed(spec, rng, rng.randint(1, 3))
        A = saturate(spec, seed)
        B = saturate(spec, seed + _random_seed(spec, rng, rng.randint(1, 3)))
        points = [random_node(spec, rng) for _ in range(samples)]
        # make sure many samples sit near the index so retractions are not all trivial
        for i in range(0, len(points), 2):
            points[i] = random_point_near(spec, rng.choice([A, B]), rng)
        ii.merge(check_axiom_ii(spec, A, B, points))
    iii = AxiomReport("iii")
    for _ in range(chains):
        seeds = []
        members = []
        for _ in range(chain_length):
            seeds = seeds + _random_seed(spec, rng, rng.randint(1, 2))
            members.append(saturate(spec, seeds))
        asup = saturate(spec, seeds)
        for _ in range(5):
            iii.merge(check_axiom_iii(spec, members, asup, random_point_near(spec, asup, rng)))
    iv = AxiomReport("iv")
    for _ in range(neighbourhoods):
        t = random_node(spec, rng)
        nbhd = random_neighbourhood(spec, t, rng)
        A = check_axiom_iv(spec, t, nbhd)
        supers = [saturate(spec, list(A.core) + _random_seed(spec, rng, rng.randint(1, 3))) for _ in range(4)]
        # include supersets that reach towards t
        supers.append(saturate(spec, list(A.core) + [random_node(spec, rng, nbhd.s)]))
        iv.merge(verify_axiom_iv(spec, t, nbhd, A, supers))
    return [ii, iii, iv]
