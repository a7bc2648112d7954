"""Chain-complete rooted trees built compositionally, and exact node operations.

Every tree here is a prefix-closed set of transfinite label words.  A node is a
finite run-length encoding of such a word (``NodePath``): a tuple of
``(label, length)`` runs with adjacent labels distinct, plus an optional cap
marker used only by :class:`CappedBinary`.  The tree order is the prefix order,
so meets are longest common prefixes and heights are word lengths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Tuple, Union

from .errors import HeightExceeded, MalformedPath, MalformedSpec, NotANode
from .ordinal import OMEGA1, ZERO, Cofinality, Ordinal

Label = Union[int, Ordinal]
Run = Tuple[Label, Ordinal]

OMEGA_ARITY = "w"
OMEGA1_ARITY = "w1"
Arity = Union[int, str]


def normalize_label(label) -> Label:
    """Finite labels are stored as ``int``, infinite (countable) ones as ``Ordinal``."""
    if isinstance(label, bool):
        raise MalformedPath(f"bad label {label!r}")
    if isinstance(label, int):
        if label < 0:
            raise MalformedPath(f"negative label {label}")
        return label
    if isinstance(label, Ordinal):
        if not label.is_countable:
            raise MalformedPath(f"label {label} is not countable")
        return int(label) if label.is_finite else label
    raise MalformedPath(f"bad label {label!r}")



def _word_len(runs) -> Ordinal:
    total = ZERO
    for _, n in runs:
        total = total + n
    return total


def _merge(runs: Iterable) -> Tuple[Run, ...]:
    out = []
    for label, n in runs:
        n = Ordinal.coerce(n)
        if not n:
            continue
        label = normalize_label(label)
        if out and out[-1][0] == label:
            out[-1] = (label, out[-1][1] + n)
        else:
            out.append((label, n))
    return tuple(out)


def _take(runs, beta: Ordinal) -> Tuple[Run, ...]:
    """Prefix of the word of length ``beta`` (which must not exceed its length)."""
    out = []
    pos = ZERO
    for label, n in runs:
        if pos == beta:
            break
        end = pos + n
        if end <= beta:
            out.append((label, n))
            pos = end
        else:
            out.append((label, pos.left_sub(beta)))
            pos = beta
            break
    if pos != beta:
        raise HeightExceeded(f"cannot take {beta} symbols")
    return tuple(out)


def _drop(runs, beta: Ordinal) -> Tuple[Run, ...]:
    """Suffix of the word after its first ``beta`` symbols."""
    pos = ZERO
    for i, (label, n) in enumerate(runs):
        end = pos + n
        if end > beta:
            rest = pos.left_sub(beta)
            head = n if not rest else rest.left_sub(n)
            # rest < n; what is left of this run is the g with rest + g = n
            return ((label, head),) + tuple(runs[i + 1:])
        pos = end
    if pos < beta:
        raise HeightExceeded(f"cannot drop {beta} symbols")
    return ()


def _symbol_at(runs, beta: Ordinal) -> Optional[Label]:
    pos = ZERO
    for label, n in runs:
        end = pos + n
        if beta < end:
            return label
        pos = end
    return None


def _is_prefix(a, b) -> bool:
    k = len(a)
    if k == 0:
        return True
    if len(b) < k or a[:k - 1] != b[:k - 1]:
        return False
    la, na = a[-1]
    lb, nb = b[k - 1]
    return la == lb and na <= nb


def _common_prefix(a, b) -> Tuple[Run, ...]:
    out = []
    for (la, na), (lb, nb) in zip(a, b):
        if la != lb:
            break
        if na == nb:
            out.append((la, na))
            continue
        out.append((la, min(na, nb)))
        break
    return tuple(out)


@dataclass(frozen=True)
class NodePath:
    """A node: a run-length word plus an optional cap marker."""

    runs: Tuple[Run, ...] = ()
    cap: bool = False
    length: Ordinal = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        runs = tuple(self.runs)
        prev = None
        for run in runs:
            if not (isinstance(run, tuple) and len(run) == 2):
                raise MalformedPath(f"bad run {run!r}")
            label, n = run
            if not isinstance(n, Ordinal) or not n:
                raise MalformedPath(f"run lengths must be positive ordinals, got {n!r}")
            if normalize_label(label) != label or type(normalize_label(label)) is not type(label):
                raise MalformedPath(f"label {label!r} is not canonical")
            if prev is not None and prev == label:
                raise MalformedPath("adjacent runs must carry distinct labels")
            prev = label
        object.__setattr__(self, "runs", runs)
        object.__setattr__(self, "length", _word_len(runs))

    @classmethod
    def of(cls, *runs, cap=False) -> "NodePath":
        """Build a canonical path from loose ``(label, length)`` pairs, merging as needed."""
        return cls(_merge(runs), cap)

    @property
    def height(self) -> Ordinal:
        return self.length.succ() if self.cap else self.length

    @property
    def is_root(self) -> bool:
        return not self.runs and not self.cap

    def __le__(self, other):
        if not isinstance(other, NodePath):
            return NotImplemented
        if self.cap:
            return self == other
        return _is_prefix(self.runs, other.runs)

    def __lt__(self, other):
        if not isinstance(other, NodePath):
            return NotImplemented
        return self != other and self <= other

    def __ge__(self, other):
        if not isinstance(other, NodePath):
            return NotImplemented
        return other <= self

    def __gt__(self, other):
        if not isinstance(other, NodePath):
            return NotImplemented
        return other < self

    def comparable(self, other: "NodePath") -> bool:
        return self <= other or other <= self

    def extend(self, *runs) -> "NodePath":
        if self.cap:
            raise MalformedPath("cannot extend a capped node")
        return NodePath(_merge(self.runs + tuple(runs)))

    def capped(self) -> "NodePath":
        return NodePath(self.runs, True)

    def sort_key(self):
        return (self.height, str(self))

    def __str__(self):
        body = ", ".join(f"({label}, {n})" for label, n in self.runs)
        return f"runs[{body}]" + ("+cap" if self.cap else "")

    def __repr__(self):
        return f"NodePath({self})"


ROOT = NodePath()


def _meet_paths(s: NodePath, t: NodePath) -> NodePath:
    if s == t:
        return s
    if s.runs == t.runs:
        return NodePath(s.runs)
    return NodePath(_common_prefix(s.runs, t.runs))


def _truncate_path(t: NodePath, beta: Ordinal) -> NodePath:
    if beta == t.height:
        return t
    if beta > t.height:
        raise HeightExceeded(f"{beta} exceeds ht({t}) = {t.height}")
    return NodePath(_take(t.runs, beta))


# ---------------------------------------------------------------------------
# immediate successors


@dataclass(frozen=True)
class ImsDescriptor:
    """Immediate successors of a node: an explicit list, or a labelled generator."""

    kind: str  # "finite" | "countable" | "uncountable"
    parent: NodePath
    nodes: Tuple[NodePath, ...] = ()
    prefix: Tuple[Run, ...] = ()

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __len__(self):
        if not self.is_finite:
            raise TypeError(f"{self.kind} set of immediate successors has no length")
        return len(self.nodes)

    def child(self, label) -> NodePath:
        """The immediate successor reached by appending ``label`` (infinite kinds)."""
        if self.is_finite:
            raise TypeError("use .nodes for a finite descriptor")
        label = normalize_label(label)
        if self.kind == "countable" and not isinstance(label, int):
            raise MalformedPath("countably many successors are labelled by naturals")
        return NodePath(_merge(self.prefix + ((label, 1),)))

    def __contains__(self, node):
        if self.is_finite:
            return node in self.nodes
        return (isinstance(node, NodePath) and not node.cap and self.parent < node
                and node.height == self.parent.height.succ())

    def __str__(self):
        if self.is_finite:
            return "{" + ", ".join(map(str, self.nodes)) + "}"
        return f"<{self.kind} successors of {self.parent}>"


def _finite_ims(parent, children) -> ImsDescriptor:
    return ImsDescriptor("finite", parent, tuple(children))


# ---------------------------------------------------------------------------
# tree specifications


class TreeSpec:
    """Base class of the compositional tree descriptions."""

    def _contains(self, t: NodePath) -> bool:
        raise NotImplementedError

    def _ims(self, t: NodePath) -> ImsDescriptor:
        raise NotImplementedError

    def leaf_heights(self) -> frozenset:
        raise NotImplementedError

    def _leaf_prefix(self, runs) -> Optional[Ordinal]:
        """Length of the prefix of ``runs`` that is a leaf of this tree, if any."""
        raise NotImplementedError

    def some_leaf(self) -> NodePath:
        raise NotImplementedError

    def has_caps(self) -> bool:
        return False

    def is_finite(self) -> bool:
        raise NotImplementedError


def _labels_ok(runs, arity) -> bool:
    for label, _ in runs:
        if arity == OMEGA1_ARITY:
            continue  # normalize_label already guarantees a countable label
        if not isinstance(label, int):
            return False
        if arity != OMEGA_ARITY and label >= arity:
            return False
    return True


@dataclass(frozen=True)
class FullTree(TreeSpec):
    """All label words of length at most ``max_len`` over the given arity."""

    arity: Arity
    max_len: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "max_len", Ordinal.coerce(self.max_len))
        a = self.arity
        if not (a in (OMEGA_ARITY, OMEGA1_ARITY) or (isinstance(a, int) and not isinstance(a, bool) and a >= 1)):
            raise MalformedSpec(f"bad arity {a!r}")

    def _contains(self, t):
        return not t.cap and t.length <= self.max_len and _labels_ok(t.runs, self.arity)

    def _ims(self, t):
        if t.length == self.max_len:
            return _finite_ims(t, ())
        if self.arity == OMEGA_ARITY:
            return ImsDescriptor("countable", t, prefix=t.runs)
        if self.arity == OMEGA1_ARITY:
            return ImsDescriptor("uncountable", t, prefix=t.runs)
        return _finite_ims(t, [t.extend((i, 1)) for i in range(self.arity)])

    def leaf_heights(self):
        return frozenset([self.max_len])

    def _leaf_prefix(self, runs):
        if _word_len(runs) < self.max_len:
            return None
        head = _take(runs, self.max_len)
        return self.max_len if _labels_ok(head, self.arity) else None

    def some_leaf(self):
        return NodePath.of((0, self.max_len))

    def is_finite(self):
        return isinstance(self.arity, int) and self.max_len.is_finite

    def __str__(self):
        return f"full({self.arity}, {self.max_len})"


class Chain(FullTree):
    """The interval ``[0, length]`` as a one-branch tree."""

    def __init__(self, length):
        super().__init__(1, length)

    @property
    def length(self) -> Ordinal:
        return self.max_len

    def __str__(self):
        return f"chain({self.max_len})"

    def __repr__(self):
        return f"Chain(length={self.max_len!r})"


@dataclass(frozen=True)
class CappedBinary(TreeSpec):
    """Binary words of length at most w1, each word of length w1 carrying one cap child."""

    def _contains(self, t):
        if not _labels_ok(t.runs, 2) or t.length > OMEGA1:
            return False
        return not t.cap or t.length == OMEGA1

    def _ims(self, t):
        if t.cap:
            return _finite_ims(t, ())
        if t.length == OMEGA1:
            return _finite_ims(t, [t.capped()])
        return _finite_ims(t, [t.extend((0, 1)), t.extend((1, 1))])

    def leaf_heights(self):
        return frozenset([OMEGA1.succ()])

    def _leaf_prefix(self, runs):
        raise MalformedSpec("capped_binary cannot be grafted onto")

    def some_leaf(self):
        return NodePath.of((0, OMEGA1), cap=True)

    def has_caps(self):
        return True

    def is_finite(self):
        return False

    def __str__(self):
        return "capped_binary"


@dataclass(frozen=True)
class Graft(TreeSpec):
    """Above every leaf of ``root`` attach one copy of each child tree.

    The root of ``children[i]`` becomes the immediate successor of the leaf
    reached by the label ``i``.
    """

    root: TreeSpec
    children: Tuple[TreeSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise MalformedSpec("graft needs at least one child")
        if self.root.has_caps():
            raise MalformedSpec("cannot graft above capped leaves")

    def _locate(self, t: NodePath):
        """Split ``t`` as (leaf length, child index, local path) when above a leaf."""
        lam = self.root._leaf_prefix(t.runs)
        if lam is None or lam == t.length:
            return lam, None, None
        i = _symbol_at(t.runs, lam)
        if not isinstance(i, int) or i >= len(self.children):
            return lam, -1, None
        local = NodePath(_drop(t.runs, lam.succ()), t.cap)
        return lam, i, local

    def _contains(self, t):
        lam, i, local = self._locate(t)
        if i is None:
            return self.root._contains(t)
        if i < 0:
            return False
        return self.children[i]._contains(local)

    def _ims(self, t):
        lam, i, local = self._locate(t)
        if lam is None:
            return self.root._ims(t)
        if i is None:
            return _finite_ims(t, [t.extend((j, 1)) for j in range(len(self.children))])
        inner = self.children[i]._ims(local)
        head = _take(t.runs, lam.succ())
        if inner.is_finite:
            return _finite_ims(t, [_graft_path(head, n) for n in inner.nodes])
        return ImsDescriptor(inner.kind, t, prefix=_merge(head + inner.prefix))

    def leaf_heights(self):
        out = set()
        for lam in self.root.leaf_heights():
            for child in self.children:
                for h in child.leaf_heights():
                    out.add(lam.succ() + h)
        return frozenset(out)

    def _leaf_prefix(self, runs):
        lam = self.root._leaf_prefix(runs)
        if lam is None or _word_len(runs) <= lam:
            return None
        i = _symbol_at(runs, lam)
        if not isinstance(i, int) or i >= len(self.children):
            return None
        inner = self.children[i]._leaf_prefix(_drop(runs, lam.succ()))
        if inner is None:
            return None
        return lam.succ() + inner

    def some_leaf(self):
        leaf = self.root.some_leaf()
        inner = self.children[0].some_leaf()
        return _graft_path(leaf.runs + ((0, Ordinal.coerce(1)),), inner)

    def has_caps(self):
        return any(c.has_caps() for c in self.children)

    def is_finite(self):
        return self.root.is_finite() and all(c.is_finite() for c in self.children)

    def __str__(self):
        return f"graft({self.root}, [{', '.join(map(str, self.children))}])"


def _graft_path(head, local: NodePath) -> NodePath:
    return NodePath(_merge(tuple(head) + local.runs), local.cap)


@dataclass(frozen=True)
class Explicit(TreeSpec):
    """A finite tree given by parent indices: ``parents[i-1]`` is the parent of node ``i``.

    Node 0 is the root; a node's children are labelled 0, 1, ... in index order.
    """

    parents: Tuple[int, ...]
    _children: tuple = field(init=False, repr=False, compare=False)
    _paths: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        parents = tuple(self.parents)
        object.__setattr__(self, "parents", parents)
        children = [[] for _ in range(len(parents) + 1)]
        for i, p in enumerate(parents, start=1):
            if not isinstance(p, int) or not 0 <= p < i:
                raise MalformedSpec(f"parent of node {i} must be an earlier node, got {p!r}")
            children[p].append(i)
        paths = [ROOT] * (len(parents) + 1)
        for i, p in enumerate(parents, start=1):
            paths[i] = paths[p].extend((children[p].index(i), 1))
        object.__setattr__(self, "_children", tuple(map(tuple, children)))
        object.__setattr__(self, "_paths", tuple(paths))

    def index_of(self, t: NodePath) -> Optional[int]:
        if t.cap:
            return None
        node = 0
        for label, n in t.runs:
            if not isinstance(label, int) or not n.is_finite:
                return None
            for _ in range(int(n)):
                kids = self._children[node]
                if label >= len(kids):
                    return None
                node = kids[label]
        return node

    def path_of(self, i: int) -> NodePath:
        return self._paths[i]

    def _contains(self, t):
        return self.index_of(t) is not None

    def _ims(self, t):
        i = self.index_of(t)
        return _finite_ims(t, [self._paths[c] for c in self._children[i]])

    def _leaves(self):
        return [i for i, kids in enumerate(self._children) if not kids]

    def leaf_heights(self):
        return frozenset(self._paths[i].height for i in self._leaves())

    def _leaf_prefix(self, runs):
        for i in self._leaves():
            if _is_prefix(self._paths[i].runs, runs):
                return self._paths[i].height
        return None

    def some_leaf(self):
        return self._paths[self._leaves()[0]]

    def is_finite(self):
        return True

    def __str__(self):
        return f"explicit([{', '.join(map(str, self.parents))}])"


# ---------------------------------------------------------------------------
# public operations


def contains(spec: TreeSpec, t: NodePath) -> bool:
    if not isinstance(t, NodePath):
        raise MalformedPath(f"not a node path: {t!r}")
    return spec._contains(t)


def _require(spec, *nodes):
    for t in nodes:
        if not contains(spec, t):
            raise NotANode(f"{t} is not a node of {spec}")


def ht(spec: TreeSpec, t: NodePath) -> Ordinal:
    _require(spec, t)
    return t.height


def cf_node(spec: TreeSpec, t: NodePath) -> Cofinality:
    _require(spec, t)
    return t.height.cofinality()


def meet(spec: TreeSpec, s: NodePath, t: NodePath) -> NodePath:
    _require(spec, s, t)
    return _meet_paths(s, t)


def truncate(spec: TreeSpec, t: NodePath, beta) -> NodePath:
    _require(spec, t)
    return _truncate_path(t, Ordinal.coerce(beta))


def ims_descriptor(spec: TreeSpec, t: NodePath) -> ImsDescriptor:
    _require(spec, t)
    return spec._ims(t)


def tree_height(spec: TreeSpec) -> Ordinal:
    return max(spec.leaf_heights()).succ()


def is_leaf(spec: TreeSpec, t: NodePath) -> bool:
    d = ims_descriptor(spec, t)
    return d.is_finite and not d.nodes


def successor_levels_below(t: NodePath) -> Callable[[Ordinal], NodePath]:
    """Map a height ``b < ht(t)`` to the ancestor of ``t`` at height ``b + 1``."""
    return lambda beta: _truncate_path(t, Ordinal.coerce(beta).succ())


def is_capped_binary_pattern(spec: TreeSpec) -> bool:
    """True for the capped binary tree, written directly or as a one-node graft."""
    if isinstance(spec, CappedBinary):
        return True
    return (isinstance(spec, Graft) and type(spec.root) is FullTree
            and spec.root.arity == 2 and spec.root.max_len == OMEGA1
            and len(spec.children) == 1 and isinstance(spec.children[0], FullTree)
            and not spec.children[0].max_len)
