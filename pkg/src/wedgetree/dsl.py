"""A small line-oriented language for tree specs, nodes and commands.

Example::

    tree c = chain(w1 * 2)
    node t = runs[(0, w + 1)]
    index a = saturate(c, [t])
    retract c a runs[(0, w1)]
    oracle-compare full(2, 2) --all-subsets

Every statement sits on its own line and ``#`` starts a comment.  Printing a
parsed script gives text that parses back to an equal script.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from .errors import ScriptSyntaxError, UnboundName, WedgeError
from .ordinal import OMEGA, OMEGA1, OMEGA2, Ordinal, literal_power, literal_product
from .treealg import (
    OMEGA1_ARITY,
    OMEGA_ARITY,
    CappedBinary,
    Chain,
    Explicit,
    FullTree,
    Graft,
    NodePath,
    TreeSpec,
)

RESERVED = {"tree", "node", "index", "runs", "chain", "full", "capped_binary", "graft",
            "explicit", "saturate", "w", "w1", "w2", "cap"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#.*)
  | (?P<flag>--[A-Za-z][A-Za-z0-9-]*)
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*)
  | (?P<punct>[()\[\],+*^=.])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize_line(text: str, line: int = 1) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScriptSyntaxError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos + 1))
        pos = m.end()
    tokens.append(Token("end", "", line, len(text) + 1))
    return tokens


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Span:
    line: int
    column: int


@dataclass(frozen=True)
class Name:
    ident: str
    span: Optional[Span] = field(default=None, compare=False)

    def __str__(self):
        return self.ident


@dataclass(frozen=True)
class Dotted:
    """``tree.node``: a bound node read inside a bound tree."""

    owner: str
    member: str
    span: Optional[Span] = field(default=None, compare=False)

    def __str__(self):
        return f"{self.owner}.{self.member}"


@dataclass(frozen=True)
class Literal:
    value: Union[Ordinal, NodePath, TreeSpec]
    span: Optional[Span] = field(default=None, compare=False)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class ListExpr:
    items: tuple
    span: Optional[Span] = field(default=None, compare=False)

    def __str__(self):
        return "[" + ", ".join(map(str, self.items)) + "]"


@dataclass(frozen=True)
class SaturateExpr:
    spec: object
    seed: Optional[ListExpr] = None
    span: Optional[Span] = field(default=None, compare=False)

    def __str__(self):
        if self.seed is None:
            return f"saturate({self.spec})"
        return f"saturate({self.spec}, {self.seed})"


Expr = Union[Name, Dotted, Literal, ListExpr, SaturateExpr]


@dataclass(frozen=True)
class Binding:
    kind: str  # tree | node | index
    name: str
    expr: Expr
    span: Optional[Span] = field(default=None, compare=False)

    def __str__(self):
        return f"{self.kind} {self.name} = {self.expr}"


@dataclass(frozen=True)
class Command:
    name: str
    args: Tuple[Expr, ...] = ()
    flags: Tuple[Tuple[str, Optional[str]], ...] = ()
    span: Optional[Span] = field(default=None, compare=False)

    def flag(self, key: str, default=None):
        for k, v in self.flags:
            if k == key:
                return True if v is None else v
        return default

    def __str__(self):
        parts = [self.name, *map(str, self.args)]
        parts += [f"--{k}" if v is None else f"--{k}={v}" for k, v in self.flags]
        return " ".join(parts)


@dataclass(frozen=True)
class Script:
    statements: Tuple[Union[Binding, Command], ...] = ()

    @property
    def commands(self):
        return [s for s in self.statements if isinstance(s, Command)]

    def __str__(self):
        return "".join(f"{s}\n" for s in self.statements)


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def span(self) -> Span:
        return Span(self.tok.line, self.tok.column)

    def error(self, message: str):
        raise ScriptSyntaxError(f"{message}, found {self.tok.text or 'end of line'!r}",
                                self.tok.line, self.tok.column)

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        return self.tok.kind == kind and (text is None or self.tok.text == text)

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        if self.at(kind, text):
            tok = self.tok
            self.i += 1
            return tok
        return None

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        tok = self.accept(kind, text)
        if tok is None:
            self.error(f"expected {text or kind}")
        return tok

    def done(self):
        if not self.at("end"):
            self.error("unexpected trailing input")

    # -- ordinals: sum of products of powers ---------------------------------

    def ordinal(self) -> Ordinal:
        value = self.product()
        while self.accept("punct", "+"):
            value = value + self.product()
        return value

    def product(self) -> Ordinal:
        value = self.power()
        while self.at("punct", "*"):
            tok = self.expect("punct", "*")
            rhs = self.power()
            value = self._guard(tok, literal_product, value, rhs)
        return value

    def power(self) -> Ordinal:
        base = self.atom()
        if self.at("punct", "^"):
            tok = self.expect("punct", "^")
            exponent = self.power()  # right associative
            return self._guard(tok, literal_power, base, exponent)
        return base

    def _guard(self, tok, fn, *args):
        try:
            return fn(*args)
        except WedgeError as exc:
            raise ScriptSyntaxError(str(exc), tok.line, tok.column) from exc

    def atom(self) -> Ordinal:
        tok = self.tok
        if self.accept("int"):
            return Ordinal.coerce(int(tok.text))
        if self.accept("ident", "w"):
            return OMEGA
        if self.accept("ident", "w1"):
            return OMEGA1
        if self.accept("ident", "w2"):
            return OMEGA2
        if self.accept("punct", "("):
            value = self.ordinal()
            self.expect("punct", ")")
            return value
        self.error("expected an ordinal")

    # -- nodes ----------------------------------------------------------------

    def node(self) -> NodePath:
        tok = self.expect("ident", "runs")
        self.expect("punct", "[")
        runs = []
        if not self.at("punct", "]"):
            runs.append(self.run())
            while self.accept("punct", ","):
                runs.append(self.run())
        self.expect("punct", "]")
        cap = False
        if self.accept("punct", "+"):
            self.expect("ident", "cap")
            cap = True
        try:
            return NodePath.of(*runs, cap=cap)
        except (WedgeError, TypeError, ValueError) as exc:
            raise ScriptSyntaxError(str(exc), tok.line, tok.column) from exc

    def run(self):
        self.expect("punct", "(")
        label = self.ordinal()
        self.expect("punct", ",")
        length = self.ordinal()
        self.expect("punct", ")")
        return (int(label) if label.is_finite else label, length)

    # -- specs ----------------------------------------------------------------

    def spec(self) -> TreeSpec:
        tok = self.tok
        try:
            return self._spec()
        except ScriptSyntaxError:
            raise
        except (WedgeError, TypeError, ValueError) as exc:
            raise ScriptSyntaxError(str(exc), tok.line, tok.column) from exc

    def _spec(self) -> TreeSpec:
        if self.accept("ident", "capped_binary"):
            return CappedBinary()
        if self.accept("ident", "chain"):
            self.expect("punct", "(")
            length = self.ordinal()
            self.expect("punct", ")")
            return Chain(length)
        if self.accept("ident", "full"):
            self.expect("punct", "(")
            arity = self.arity()
            self.expect("punct", ",")
            length = self.ordinal()
            self.expect("punct", ")")
            return FullTree(arity, length)
        if self.accept("ident", "graft"):
            self.expect("punct", "(")
            root = self.spec()
            self.expect("punct", ",")
            self.expect("punct", "[")
            children = [self.spec()]
            while self.accept("punct", ","):
                children.append(self.spec())
            self.expect("punct", "]")
            self.expect("punct", ")")
            return Graft(root, tuple(children))
        if self.accept("ident", "explicit"):
            self.expect("punct", "(")
            self.expect("punct", "[")
            parents = []
            if not self.at("punct", "]"):
                parents.append(int(self.expect("int").text))
                while self.accept("punct", ","):
                    parents.append(int(self.expect("int").text))
            self.expect("punct", "]")
            self.expect("punct", ")")
            return Explicit(tuple(parents))
        self.error("expected a tree spec")

    def arity(self):
        if self.accept("ident", "w"):
            return OMEGA_ARITY
        if self.accept("ident", "w1"):
            return OMEGA1_ARITY
        return int(self.expect("int").text)

    # -- expressions ----------------------------------------------------------

    def expr(self) -> Expr:
        span = self.span()
        tok = self.tok
        if self.at("punct", "["):
            self.i += 1
            items = []
            if not self.at("punct", "]"):
                items.append(self.expr())
                while self.accept("punct", ","):
                    items.append(self.expr())
            self.expect("punct", "]")
            return ListExpr(tuple(items), span)
        if tok.kind == "ident" and tok.text == "runs":
            return Literal(self.node(), span)
        if tok.kind == "ident" and tok.text in ("capped_binary", "chain", "full", "graft", "explicit"):
            return Literal(self.spec(), span)
        if tok.kind == "ident" and tok.text == "saturate":
            self.i += 1
            self.expect("punct", "(")
            spec = self.expr()
            seed = None
            if self.accept("punct", ","):
                if not self.at("punct", "["):
                    self.error("expected a list of seed nodes")
                seed = self.expr()
            self.expect("punct", ")")
            return SaturateExpr(spec, seed, span)
        if tok.kind == "int" or tok.text in ("w", "w1", "w2") or self.at("punct", "("):
            return Literal(self.ordinal(), span)
        if tok.kind == "ident" and tok.text not in RESERVED:
            self.i += 1
            if self.accept("punct", "."):
                member = self.expect("ident")
                if member.text in RESERVED:
                    raise ScriptSyntaxError(f"{member.text!r} is reserved", member.line, member.column)
                return Dotted(tok.text, member.text, span)
            return Name(tok.text, span)
        self.error("expected an argument")

    def statement(self):
        span = self.span()
        tok = self.tok
        if tok.kind == "ident" and tok.text in ("tree", "node", "index") and self.tokens[self.i + 1].kind == "ident":
            self.i += 1
            name = self.expect("ident")
            if name.text in RESERVED:
                raise ScriptSyntaxError(f"{name.text!r} is reserved", name.line, name.column)
            self.expect("punct", "=")
            if tok.text == "tree":
                expr = Literal(self.spec(), self.span()) if not self._at_name() else self.expr()
            elif tok.text == "node":
                expr = Literal(self.node(), self.span()) if not self._at_name() else self.expr()
            else:
                expr = self.expr()
                if not isinstance(expr, (SaturateExpr, Name)):
                    raise ScriptSyntaxError("an index must be saturate(...) or a bound index",
                                            span.line, span.column)
            self.done()
            return Binding(tok.text, name.text, expr, span)
        name = self.expect("ident")
        args = []
        flags = []
        while not self.at("end"):
            if self.at("flag"):
                key = self.expect("flag").text[2:]
                value = None
                if self.accept("punct", "="):
                    value_tok = self.tok
                    if value_tok.kind not in ("int", "ident"):
                        self.error("expected a flag value")
                    self.i += 1
                    value = value_tok.text
                elif self.at("int"):
                    # shell style "--seed 3"
                    value = self.expect("int").text
                flags.append((key, value))
            elif flags:
                self.error("positional argument after a flag")
            else:
                args.append(self.expr())
        return Command(name.text, tuple(args), tuple(flags), span)

    def _at_name(self):
        tok = self.tok
        return tok.kind == "ident" and tok.text not in RESERVED


def _names_in(expr) -> List[Tuple[str, Optional[Span]]]:
    if isinstance(expr, Name):
        return [(expr.ident, expr.span)]
    if isinstance(expr, Dotted):
        return [(expr.owner, expr.span), (expr.member, expr.span)]
    if isinstance(expr, ListExpr):
        return [n for item in expr.items for n in _names_in(item)]
    if isinstance(expr, SaturateExpr):
        return _names_in(expr.spec) + (_names_in(expr.seed) if expr.seed else [])
    return []


def parse(text: str, bound=()) -> Script:
    """Parse a whole script; every name must be bound on an earlier line."""
    statements = []
    known = set(bound)
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = tokenize_line(line, lineno)
        if tokens[0].kind == "end":
            continue
        stmt = _Parser(tokens).statement()
        exprs = [stmt.expr] if isinstance(stmt, Binding) else list(stmt.args)
        for expr in exprs:
            for ident, span in _names_in(expr):
                if ident not in known:
                    where = f" (line {span.line}, column {span.column})" if span else ""
                    raise UnboundName(f"name {ident!r} is not bound{where}")
        if isinstance(stmt, Binding):
            known.add(stmt.name)
        statements.append(stmt)
    return Script(tuple(statements))


def _parse_whole(text: str, method):
    parser = _Parser(tokenize_line(text))
    value = method(parser)
    parser.done()
    return value


def parse_ordinal(text: str) -> Ordinal:
    return _parse_whole(text, _Parser.ordinal)


def parse_node(text: str) -> NodePath:
    return _parse_whole(text, _Parser.node)


def parse_spec(text: str) -> TreeSpec:
    return _parse_whole(text, _Parser.spec)


# ---------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True)
class Located:
    """A node together with the tree it was read in (from ``tree.node``)."""

    spec: TreeSpec
    node: NodePath


class Environment:
    def __init__(self):
        self.values = {}

    def evaluate(self, expr: Expr):
        from .skeleton import saturate

        if isinstance(expr, Literal):
            return expr.value
        if isinstance(expr, Name):
            if expr.ident not in self.values:
                raise UnboundName(f"name {expr.ident!r} is not bound")
            return self.values[expr.ident]
        if isinstance(expr, Dotted):
            spec = self.evaluate(Name(expr.owner))
            node = self.evaluate(Name(expr.member))
            if not isinstance(spec, TreeSpec) or not isinstance(node, NodePath):
                raise TypeError(f"{expr} must name a tree and a node")
            return Located(spec, node)
        if isinstance(expr, ListExpr):
            return [self.evaluate(item) for item in expr.items]
        if isinstance(expr, SaturateExpr):
            spec = self.evaluate(expr.spec)
            if not isinstance(spec, TreeSpec):
                raise TypeError("saturate needs a tree spec")
            seed = self.evaluate(expr.seed) if expr.seed is not None else []
            return saturate(spec, [x.node if isinstance(x, Located) else x for x in seed])
        raise TypeError(f"cannot evaluate {expr!r}")

    def bind(self, stmt: Binding):
        from .skeleton import SkeletonIndex

        value = self.evaluate(stmt.expr)
        expected = {"tree": TreeSpec, "node": NodePath, "index": SkeletonIndex}[stmt.kind]
        if not isinstance(value, expected):
            raise TypeError(f"{stmt.name} must be bound to a {stmt.kind}")
        self.values[stmt.name] = value
