"""Ordinals below w2*w in an extended Cantor normal form.

Every supported ordinal is written ``w2*n + w1*b + c`` where ``n`` is a natural
number and ``b``, ``c`` are countable ordinals in Cantor normal form.

Countable ordinals are plain nested tuples ``((exponent, coefficient), ...)``
with strictly decreasing exponents (themselves such tuples) and positive integer
coefficients; ``()`` is zero.  With that encoding Python's built-in tuple
comparison coincides with the ordinal order, which keeps comparisons cheap.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Tuple, Union

from .errors import NotOmegaCofinal, RangeExceeded, Underflow

CNF = Tuple  # ((CNF, int), ...)

CNF_ZERO: CNF = ()
CNF_ONE: CNF = (((), 1),)
CNF_OMEGA: CNF = ((CNF_ONE, 1),)


class Cofinality(enum.IntEnum):
    ZERO = 0
    ONE = 1
    OMEGA = 2
    OMEGA1 = 3
    OMEGA2 = 4

    def __str__(self):
        return _COF_NAMES[self]


_COF_NAMES = {
    Cofinality.ZERO: "0",
    Cofinality.ONE: "1",
    Cofinality.OMEGA: "w",
    Cofinality.OMEGA1: "w1",
    Cofinality.OMEGA2: "w2",
}


class Comparison(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


# ---------------------------------------------------------------------------
# countable Cantor normal form


def cnf_nat(k: int) -> CNF:
    if k < 0:
        raise Underflow(f"negative natural {k}")
    return (((), k),) if k else ()


def cnf_is_normal(a) -> bool:
    if not isinstance(a, tuple):
        return False
    prev = None
    for term in a:
        if not (isinstance(term, tuple) and len(term) == 2):
            return False
        e, k = term
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            return False
        if not cnf_is_normal(e):
            return False
        if prev is not None and not e < prev:
            return False
        prev = e
    return True


def cnf_normalize(terms) -> CNF:
    """Bring an arbitrary iterable of ``(exponent, coefficient)`` pairs into normal form.

    The pairs are read as the ordinal sum in the given order, so absorbed
    terms disappear just as they do under ordinal addition.
    """
    result: CNF = ()
    for e, k in terms:
        if k:
            result = cnf_add(result, ((cnf_normalize(e), k),))
    return result


def cnf_add(a: CNF, b: CNF) -> CNF:
    if not b:
        return a
    e0, k0 = b[0]
    kept = []
    for e, k in a:
        if e > e0:
            kept.append((e, k))
        elif e == e0:
            kept.append((e, k + k0))
            return tuple(kept) + b[1:]
        else:
            break
    return tuple(kept) + b


def cnf_left_sub(a: CNF, b: CNF) -> CNF:
    """The unique ``g`` with ``a + g == b``; requires ``a <= b``."""
    if a > b:
        raise Underflow("left subtraction needs a <= b")
    i = 0
    while i < len(a) and a[i] == b[i]:
        i += 1
    if i == len(a):
        return b[i:]
    ea, ka = a[i]
    eb, kb = b[i]
    if ea == eb:
        return ((eb, kb - ka),) + b[i + 1:]
    return b[i:]


def cnf_is_successor(a: CNF) -> bool:
    return bool(a) and a[-1][0] == ()


def cnf_is_finite(a: CNF) -> bool:
    return not a or (len(a) == 1 and a[0][0] == ())


def cnf_pred(a: CNF) -> CNF:
    if not cnf_is_successor(a):
        raise Underflow("predecessor of a non-successor")
    k = a[-1][1]
    return a[:-1] + (((), k - 1),) if k > 1 else a[:-1]


def cnf_to_int(a: CNF) -> int:
    if not cnf_is_finite(a):
        raise ValueError("infinite ordinal")
    return a[0][1] if a else 0


def _cnf_limit_split(a: CNF):
    """Split a limit ``a`` as ``base + w^e`` and return ``(base, e)``."""
    *init, (e, k) = a
    base = tuple(init) + (((e, k - 1),) if k > 1 else ())
    return base, e


def cnf_fundamental(a: CNF, m: int) -> CNF:
    """m-th element of the canonical fundamental sequence of a countable limit."""
    if not a or a[-1][0] == ():
        raise NotOmegaCofinal("fundamental sequence of a non-limit")
    base, e = _cnf_limit_split(a)
    if cnf_is_successor(e):
        return cnf_add(base, ((cnf_pred(e), m),) if m else ())
    return cnf_add(base, ((cnf_fundamental(e, m), 1),))


def cnf_fundamental_bound(a: CNF, beta: CNF) -> int:
    """Least ``m`` with ``a[m] >= beta``, for a countable limit ``a > beta``."""
    if not beta < a:
        raise ValueError("bound needs beta < a")
    base, e = _cnf_limit_split(a)
    if beta <= base:
        return 0
    delta = cnf_left_sub(base, beta)  # 0 < delta < w^e
    f, j = delta[0]
    if cnf_is_successor(e):
        p = cnf_pred(e)
        if f < p:
            return 1
        return j if len(delta) == 1 else j + 1
    m = cnf_fundamental_bound(e, f)
    if cnf_fundamental(e, m) == f and delta != ((f, 1),):
        m += 1
    return m


def cnf_str(a: CNF) -> str:
    if not a:
        return "0"
    return " + ".join(_cnf_term_str(e, k) for e, k in a)


def _cnf_term_str(e: CNF, k: int) -> str:
    if e == ():
        return str(k)
    if e == CNF_ONE:
        base = "w"
    elif cnf_is_finite(e) or e == CNF_OMEGA:
        base = "w^" + cnf_str(e)
    else:
        base = "w^(" + cnf_str(e) + ")"
    return base if k == 1 else f"{base}*{k}"


# ---------------------------------------------------------------------------
# the full representation


@dataclass(frozen=True, order=True)
class Ordinal:
    """The ordinal ``w2*omega2 + w1*omega1 + tail``."""

    omega2: int = 0
    omega1: CNF = ()
    tail: CNF = ()

    @classmethod
    def coerce(cls, x: Union["Ordinal", int]) -> "Ordinal":
        if isinstance(x, Ordinal):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return cls(0, (), cnf_nat(x))
        raise TypeError(f"cannot read {x!r} as an ordinal")

    @classmethod
    def countable(cls, c: CNF) -> "Ordinal":
        return cls(0, (), c)

    def is_normal(self) -> bool:
        return (isinstance(self.omega2, int) and self.omega2 >= 0
                and cnf_is_normal(self.omega1) and cnf_is_normal(self.tail))

    def normalize(self) -> "Ordinal":
        return Ordinal(self.omega2, cnf_normalize(self.omega1), cnf_normalize(self.tail))

    # -- classification -----------------------------------------------------

    def __bool__(self):
        return bool(self.omega2 or self.omega1 or self.tail)

    @property
    def is_countable(self) -> bool:
        return not self.omega2 and not self.omega1

    @property
    def is_finite(self) -> bool:
        return self.is_countable and cnf_is_finite(self.tail)

    @property
    def is_successor(self) -> bool:
        return cnf_is_successor(self.tail)

    @property
    def is_limit(self) -> bool:
        return bool(self) and not self.is_successor

    def __int__(self):
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return cnf_to_int(self.tail)

    def cofinality(self) -> Cofinality:
        if self.tail:
            return Cofinality.ONE if cnf_is_successor(self.tail) else Cofinality.OMEGA
        if self.omega1:
            return Cofinality.OMEGA1 if cnf_is_successor(self.omega1) else Cofinality.OMEGA
        if self.omega2:
            return Cofinality.OMEGA2
        return Cofinality.ZERO

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.coerce(other)
        elif not isinstance(other, Ordinal):
            return NotImplemented
        if other.omega2:
            return Ordinal(self.omega2 + other.omega2, other.omega1, other.tail)
        if other.omega1:
            # a countable tail is absorbed by w1
            return Ordinal(self.omega2, cnf_add(self.omega1, other.omega1), other.tail)
        return Ordinal(self.omega2, self.omega1, cnf_add(self.tail, other.tail))

    def __radd__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return Ordinal.coerce(other) + self
        return NotImplemented

    def left_sub(self, other: "Ordinal") -> "Ordinal":
        """The unique ``g`` with ``self + g == other``."""
        other = Ordinal.coerce(other)
        if self > other:
            raise Underflow(f"{self} > {other}")
        if self.omega2 < other.omega2:
            return Ordinal(other.omega2 - self.omega2, other.omega1, other.tail)
        if self.omega1 < other.omega1:
            return Ordinal(0, cnf_left_sub(self.omega1, other.omega1), other.tail)
        return Ordinal(0, (), cnf_left_sub(self.tail, other.tail))

    def succ(self) -> "Ordinal":
        return Ordinal(self.omega2, self.omega1, cnf_add(self.tail, CNF_ONE))

    def pred(self) -> "Ordinal":
        if not self.is_successor:
            raise Underflow(f"{self} has no predecessor")
        return Ordinal(self.omega2, self.omega1, cnf_pred(self.tail))

    # -- fundamental sequences ------------------------------------------------

    def fundamental(self, m: int) -> "Ordinal":
        """Canonical fundamental sequence; only for ordinals of cofinality w."""
        if m < 0:
            raise ValueError("index must be a natural number")
        if self.cofinality() != Cofinality.OMEGA:
            raise NotOmegaCofinal(f"{self} does not have cofinality w")
        if self.tail:
            return Ordinal(self.omega2, self.omega1, cnf_fundamental(self.tail, m))
        return Ordinal(self.omega2, cnf_fundamental(self.omega1, m), ())

    def fundamental_bound(self, beta: "Ordinal") -> int:
        """Least ``m`` with ``self.fundamental(m) >= beta`` (needs ``beta < self``)."""
        beta = Ordinal.coerce(beta)
        if self.cofinality() != Cofinality.OMEGA:
            raise NotOmegaCofinal(f"{self} does not have cofinality w")
        if not beta < self:
            raise ValueError(f"{beta} is not below {self}")
        if self.tail:
            if (beta.omega2, beta.omega1) < (self.omega2, self.omega1):
                return 0
            return cnf_fundamental_bound(self.tail, beta.tail)
        if beta.omega2 < self.omega2:
            return 0
        m = cnf_fundamental_bound(self.omega1, beta.omega1)
        if cnf_fundamental(self.omega1, m) == beta.omega1 and beta.tail:
            m += 1
        return m

    def fundamental_index(self, beta: "Ordinal"):
        """The ``m`` with ``self.fundamental(m) == beta``, or None."""
        beta = Ordinal.coerce(beta)
        if not beta < self:
            return None
        m = self.fundamental_bound(beta)
        return m if self.fundamental(m) == beta else None

    # -- text ---------------------------------------------------------------

    def __str__(self):
        parts = []
        if self.omega2:
            parts.append("w2" if self.omega2 == 1 else f"w2*{self.omega2}")
        if self.omega1:
            b = self.omega1
            if b == CNF_ONE:
                parts.append("w1")
            elif len(b) == 1:
                parts.append("w1*" + cnf_str(b))
            else:
                parts.append("w1*(" + cnf_str(b) + ")")
        if self.tail:
            parts.append(cnf_str(self.tail))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Ordinal({self})"


ZERO = Ordinal()
ONE = Ordinal(0, (), CNF_ONE)
OMEGA = Ordinal(0, (), CNF_OMEGA)
OMEGA1 = Ordinal(0, CNF_ONE, ())
OMEGA2 = Ordinal(1, (), ())


def omega_power(e) -> Ordinal:
    """``w^e`` for a countable exponent."""
    e = Ordinal.coerce(e)
    if not e.is_countable:
        raise RangeExceeded(f"w^{e} is not countable")
    return Ordinal(0, (), ((e.tail, 1),))


# ---------------------------------------------------------------------------
# literal notation helpers: products and powers only as far as the textual
# syntax needs them


def _mul_nat(x: Ordinal, k: int) -> Ordinal:
    if k == 0 or not x:
        return ZERO
    if x.omega2:
        return Ordinal(x.omega2 * k, x.omega1, x.tail)
    if x.omega1:
        b = x.omega1
        return Ordinal(0, ((b[0][0], b[0][1] * k),) + b[1:], x.tail)
    c = x.tail
    return Ordinal(0, (), ((c[0][0], c[0][1] * k),) + c[1:])


def _mul_omega_power(x: Ordinal, e: CNF) -> Ordinal:
    # x * w^e with e > 0
    if x.omega2:
        raise RangeExceeded("product reaches w2*w")
    if x.omega1:
        return Ordinal(0, ((cnf_add(x.omega1[0][0], e), 1),), ())
    return Ordinal(0, (), ((cnf_add(x.tail[0][0], e), 1),))


def literal_product(x, y) -> Ordinal:
    """Ordinal product ``x*y`` within the representable range."""
    x, y = Ordinal.coerce(x), Ordinal.coerce(y)
    if not x or not y:
        return ZERO
    result = ZERO
    if y.omega2:
        if x.omega2:
            raise RangeExceeded("product reaches w2*w2")
        result = result + Ordinal(y.omega2, (), ())
    if y.omega1:
        if not x.is_countable:
            raise RangeExceeded("product reaches w1*w1")
        result = result + Ordinal(0, y.omega1, ())
    for e, k in y.tail:
        part = _mul_nat(x, k) if e == () else _mul_nat(_mul_omega_power(x, e), k)
        result = result + part
    return result


def literal_power(base, exponent) -> Ordinal:
    """``base^exponent`` for base ``w`` (countable exponent) or naturals."""
    base, exponent = Ordinal.coerce(base), Ordinal.coerce(exponent)
    if base == OMEGA:
        return omega_power(exponent)
    if exponent.is_finite:
        result = ONE
        for _ in range(int(exponent)):
            result = literal_product(result, base)
        return result
    if base.is_finite:
        raise RangeExceeded("only w may be raised to an infinite power")
    raise RangeExceeded(f"{base}^{exponent} is not representable")


# ---------------------------------------------------------------------------
# functional surface


def ord_cmp(a, b) -> Comparison:
    a, b = Ordinal.coerce(a), Ordinal.coerce(b)
    if a < b:
        return Comparison.LT
    return Comparison.EQ if a == b else Comparison.GT


def ord_add(a, b) -> Ordinal:
    return Ordinal.coerce(a) + Ordinal.coerce(b)


def ord_left_sub(a, b) -> Ordinal:
    return Ordinal.coerce(a).left_sub(b)


def ord_succ(a) -> Ordinal:
    return Ordinal.coerce(a).succ()


def ord_is_limit(a) -> bool:
    return Ordinal.coerce(a).is_limit


def ord_cofinality(a) -> Cofinality:
    return Ordinal.coerce(a).cofinality()


def ord_fundamental(a, m: int) -> Ordinal:
    return Ordinal.coerce(a).fundamental(m)


def ord_sup(values) -> Ordinal:
    return max((Ordinal.coerce(v) for v in values), default=ZERO)


# ---------------------------------------------------------------------------
# enumeration of countable ordinals


def _cnf_rank(a: CNF) -> int:
    """Least ``n`` such that ``a`` has at most ``n`` terms, coefficients at most
    ``n`` and exponents of rank below ``n``.  Each rank class is finite."""
    if not a:
        return 0
    return max(len(a), max(k for _, k in a), 1 + max(_cnf_rank(e) for e, _ in a))


def _below_rank(a: CNF, n: int, t: int):
    """Every CNF below ``a`` with at most ``t`` terms and rank at most ``n``, each once."""
    if not a:
        return
    yield ()
    if t == 0 or n == 0:
        return
    ea, ka = a[0]
    # a smaller leading exponent, then anything below w^e
    for e in _below_rank(ea, n - 1, n - 1):
        for k in range(1, n + 1):
            for rest in _below_rank(((e, 1),), n, t - 1):
                yield ((e, k),) + rest
    if _cnf_rank(ea) >= n:
        return
    # same exponent with a smaller coefficient
    for k in range(1, min(ka, n + 1)):
        for rest in _below_rank(((ea, 1),), n, t - 1):
            yield ((ea, k),) + rest
    # same leading term, smaller remainder
    if ka <= n:
        for rest in _below_rank(a[1:], n, t - 1):
            yield ((ea, ka),) + rest


def enumerate_below(alpha):
    """Yield every ordinal below the countable ``alpha`` exactly once (an w-enumeration).

    Ordinals come out rank class by rank class, so any fixed ordinal appears
    after finitely many steps.
    """
    alpha = Ordinal.coerce(alpha)
    if not alpha.is_countable:
        raise RangeExceeded(f"{alpha} is uncountable; no w-enumeration exists")
    if alpha.is_finite:
        for i in range(int(alpha)):
            yield Ordinal.coerce(i)
        return
    yield ZERO
    n = 1
    while True:
        for c in _below_rank(alpha.tail, n, n):
            if _cnf_rank(c) == n:
                yield Ordinal(0, (), c)
        n += 1
