"""Exact arithmetic in the ring Z[A, A^-1] of integer Laurent polynomials.

Values are immutable and hashable.  The zero polynomial has no stored
terms; no stored coefficient is ever zero.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Iterator, Mapping

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "NotDivisible",
    "A",
    "ONE",
    "ZERO",
    "add",
    "mul",
    "is_unit",
    "divide_exact",
    "monic_division",
    "evaluate",
    "poly_gcd",
    "unit_normalize",
]


class NotDivisible(ArithmeticError):
    """Raised when an exact quotient does not exist in Z[A, A^-1]."""


class LaurentPoly:
    """Sparse Laurent polynomial in ``A`` with arbitrary-precision integer coefficients.

    >>> p = LaurentPoly({3: 1, -3: 1})
    >>> str(p)
    'A^3 + A^-3'
    >>> p * LaurentPoly({0: 2})
    LaurentPoly('2A^3 + 2A^-3')
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | int | None = None):
        if terms is None:
            items: Iterable[tuple[int, int]] = ()
        elif isinstance(terms, int):
            items = ((0, terms),)
        elif isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for e, c in items:
            if not isinstance(e, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be integers")
            acc[e] = acc.get(e, 0) + c
        self._terms = {e: acc[e] for e in sorted(acc) if acc[e] != 0}
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "LaurentPoly":
        # terms must already be sorted and zero-free
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, value) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls(value)
        return NotImplemented

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        """Copy of the exponent -> coefficient map, ascending exponents."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(iter(self._terms))

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(reversed(self._terms))

    @property
    def width(self) -> int:
        """``max_exp - min_exp``; 0 for monomials and for zero."""
        if not self._terms:
            return 0
        return self.max_exp - self.min_exp

    @property
    def leading_coeff(self) -> int:
        return self._terms[self.max_exp]

    @property
    def trailing_coeff(self) -> int:
        return self._terms[self.min_exp]

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = _igcd(g, c)
        return g

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not an integer constant")
        return self._terms.get(0, 0)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self) -> "LaurentPoly":
        return self

    def __sub__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_unit():
                raise NotDivisible(f"{self} is not a unit; negative powers undefined")
            ((e, c),) = self._terms.items()
            return LaurentPoly({e * n: -1 if (c == -1 and n % 2) else 1})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``A^k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e: c * k for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """The involution ``A -> A^-1``."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def reduce_mod(self, p: int) -> "LaurentPoly":
        """Coefficients reduced into ``[0, p)``."""
        return LaurentPoly({e: c % p for e, c in self._terms.items()})

    def evaluate(self, a) -> Fraction:
        return evaluate(self, a)

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "A" if e == 1 else f"A^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> str:
        return str(self)


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
A = LaurentPoly._raw({1: 1})


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def is_unit(p: LaurentPoly) -> bool:
    return p.is_unit()


# -- dense helpers: ordinary polynomials as low-to-high coefficient lists --


def _dense(p: LaurentPoly) -> tuple[list[int], int]:
    """Return (coefficients from A^min upward, min exponent)."""
    lo = p.min_exp
    out = [0] * (p.max_exp - lo + 1)
    for e, c in p.items():
        out[e - lo] = c
    return out, lo


def _from_dense(coeffs: list[int], lo: int = 0) -> LaurentPoly:
    return LaurentPoly({lo + i: c for i, c in enumerate(coeffs) if c})


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_divmod_exact(num: list[int], den: list[int]) -> list[int]:
    """Quotient of ordinary integer polynomials, raising when it is not exact."""
    num = list(num)
    dn = len(den) - 1
    lc = den[-1]
    if len(num) - 1 < dn:
        if any(num):
            raise NotDivisible("degree too small")
        return []
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, lc)
        if r:
            raise NotDivisible("leading coefficient does not divide")
        quot[i - dn] = q
        for j, d in enumerate(den):
            num[i - dn + j] -= q * d
    if any(num):
        raise NotDivisible("nonzero remainder")
    return quot


def divide_exact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``q * r == p``; raise :class:`NotDivisible` if none exists."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    if len(q) == 1:
        ((e, c),) = q.items()
        out = {}
        for pe, pc in p.items():
            d, r = divmod(pc, c)
            if r:
                raise NotDivisible(f"{p} is not divisible by {q}")
            out[pe - e] = d
        return LaurentPoly(out)
    pd, plo = _dense(p)
    qd, qlo = _dense(q)
    try:
        quot = _dense_divmod_exact(pd, qd)
    except NotDivisible:
        raise NotDivisible(f"{p} is not divisible by {q}") from None
    return _from_dense(quot, plo - qlo)


def monic_division(
    p: LaurentPoly, m: LaurentPoly, window_low: int
) -> tuple[LaurentPoly, LaurentPoly]:
    """Divide ``p`` by ``m`` leaving a remainder supported in a fixed window.

    The remainder has exponents in ``[window_low, window_low + w - 1]``
    where ``w`` is the exponent width of ``m``.  Both extreme coefficients
    of ``m`` must be ``+-1`` so that terms can be cleared from either end.
    """
    if m.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lc, tc = m.leading_coeff, m.trailing_coeff
    if abs(lc) != 1 or abs(tc) != 1:
        raise ValueError(f"divisor {m} must have leading and trailing coefficients +-1")
    w = m.width
    hi = window_low + w - 1
    mterms = list(m.items())
    mlo, mhi = m.min_exp, m.max_exp
    r = dict(p.terms)
    q: dict[int, int] = {}

    def sub_shifted(coef: int, k: int) -> None:
        q[k] = q.get(k, 0) + coef
        for e, c in mterms:
            e2 = e + k
            v = r.get(e2, 0) - coef * c
            if v:
                r[e2] = v
            else:
                r.pop(e2, None)

    if w == 0:
        # m is a unit monomial: everything divides, the window is empty
        ((e, c),) = mterms
        return LaurentPoly({pe - e: pc * c for pe, pc in p.items()}), ZERO

    while r:
        top = max(r)
        if top <= hi:
            break
        sub_shifted(r[top] * lc, top - mhi)
    while r:
        bot = min(r)
        if bot >= window_low:
            break
        sub_shifted(r[bot] * tc, bot - mlo)
    return LaurentPoly(q), LaurentPoly(r)


def evaluate(p: LaurentPoly, a) -> Fraction:
    """Exact value of ``p`` at the nonzero rational ``a``."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("cannot evaluate a Laurent polynomial at A = 0")
    total = Fraction(0)
    for e, c in p.items():
        total += c * a ** e
    return total


# -- gcd ------------------------------------------------------------------


def _content(a: list[int]) -> int:
    g = 0
    for c in a:
        g = _igcd(g, c)
    return g


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of ``a`` by ``b`` (dense, low-to-high)."""
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    delta = len(a) - 1 - db
    if delta < 0:
        return a
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        a = [x * lc for x in a]
        if c:
            for j, d in enumerate(b):
                a[i - db + j] -= c * d
        a[i] = 0
    # a has been multiplied by lc exactly delta + 1 times
    return _trim(a)


def _primitive_gcd(f: list[int], g: list[int]) -> list[int]:
    """Subresultant PRS gcd of two primitive polynomials, positive leading coefficient."""
    if len(f) < len(g):
        f, g = g, f
    gg = 1
    h = 1
    while True:
        delta = len(f) - len(g)
        r = _prem(f, g)
        if not r:
            break
        if len(r) == 1:
            return [1]
        f = g
        div = gg * h ** delta
        g = [c // div for c in r]
        gg = f[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = gg
        else:
            h = gg ** delta // h ** (delta - 1)
    cont = _content(g)
    out = [c // cont for c in g]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def unit_normalize(p: LaurentPoly) -> LaurentPoly:
    """Associate of ``p`` with minimal exponent 0 and positive leading coefficient."""
    if p.is_zero():
        return p
    q = p.shift(-p.min_exp)
    return -q if q.leading_coeff < 0 else q


def poly_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Unit-normalized greatest common divisor in Z[A, A^-1]."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero():
        return unit_normalize(q)
    if q.is_zero():
        return unit_normalize(p)
    pd, _ = _dense(p)
    qd, _ = _dense(q)
    cp, cq = _content(pd), _content(qd)
    c = _igcd(cp, cq)
    pp = [x // cp for x in pd]
    qp = [x // cq for x in qd]
    if len(pp) == 1 or len(qp) == 1:
        prim = [1]
    else:
        prim = _primitive_gcd(pp, qp)
    return _from_dense([c * x for x in prim])


class RationalFunction:
    """Element of Q(A) kept in lowest terms over Z[A, A^-1].

    The denominator is normalized to minimal exponent 0 with a positive
    leading coefficient.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=ONE):
        num = LaurentPoly.coerce(numerator)
        den = LaurentPoly.coerce(denominator)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.numerator, self.denominator = ZERO, ONE
            return
        g = poly_gcd(num, den)
        num = divide_exact(num, g)
        den = divide_exact(den, g)
        k = -den.min_exp
        num, den = num.shift(k), den.shift(k)
        if den.leading_coeff < 0:
            num, den = -num, -den
        self.numerator, self.denominator = num, den

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def __add__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RationalFunction(other)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RationalFunction(other)
        return RationalFunction(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    __rmul__ = __mul__
    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-RationalFunction(other) if not isinstance(other, RationalFunction) else -other)

    def __truediv__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RationalFunction(other)
        if other.numerator.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(
            self.numerator * other.denominator, self.denominator * other.numerator
        )

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def evaluate(self, a) -> Fraction:
        return evaluate(self.numerator, a) / evaluate(self.denominator, a)

    def __str__(self) -> str:
        if self.denominator == ONE:
            return str(self.numerator)
        return f"({self.numerator})/({self.denominator})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"
