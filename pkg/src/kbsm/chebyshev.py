"""Polynomials in ``t`` over Z[A, A^-1], in the monomial or Chebyshev basis.

``S_n`` is the Chebyshev polynomial of the second kind normalized by
``S_0 = 1``, ``S_1 = t``, ``S_{n+1} = t S_n - S_{n-1}``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from .laurent import ONE, ZERO, LaurentPoly, evaluate as _eval_laurent

__all__ = [
    "Basis",
    "TPoly",
    "BasisError",
    "chebyshev_S",
    "to_chebyshev",
    "to_monomial",
    "tpoly_mul",
    "T",
]


class Basis(enum.Enum):
    MONOMIAL = "monomial"
    CHEBYSHEV = "chebyshev"


class BasisError(ValueError):
    """An operation received a polynomial in the wrong basis."""


class TPoly:
    """Finite sum ``sum_n g_n b_n`` with ``b_n = t^n`` or ``b_n = S_n(t)``.

    Equality compares basis tag and coefficients; use :meth:`same_value`
    to compare across bases.
    """

    __slots__ = ("_coeffs", "basis")

    def __init__(self, coeffs: Mapping[int, LaurentPoly | int] | None = None, basis: Basis = Basis.MONOMIAL):
        if not isinstance(basis, Basis):
            raise TypeError(f"basis must be a Basis, got {basis!r}")
        clean: dict[int, LaurentPoly] = {}
        for n, g in (coeffs or {}).items():
            if not isinstance(n, int) or n < 0:
                raise ValueError(f"t-degree must be a nonnegative integer, got {n!r}")
            g = LaurentPoly.coerce(g)
            if g is NotImplemented:
                raise TypeError("coefficients must be LaurentPoly or int")
            if n in clean:
                g = clean[n] + g
            clean[n] = g
        self._coeffs = {n: clean[n] for n in sorted(clean) if clean[n]}
        self.basis = basis

    @classmethod
    def constant(cls, g: LaurentPoly | int, basis: Basis = Basis.MONOMIAL) -> "TPoly":
        return cls({0: g}, basis)

    @classmethod
    def term(cls, n: int, g: LaurentPoly | int = 1, basis: Basis = Basis.MONOMIAL) -> "TPoly":
        return cls({n: g}, basis)

    @property
    def coeffs(self) -> dict[int, LaurentPoly]:
        return dict(self._coeffs)

    def __getitem__(self, n: int) -> LaurentPoly:
        return self._coeffs.get(n, ZERO)

    def items(self) -> Iterator[tuple[int, LaurentPoly]]:
        return iter(self._coeffs.items())

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> int:
        """Highest index with a nonzero coefficient; -1 for zero."""
        return max(self._coeffs, default=-1)

    def _check_same(self, other: "TPoly") -> None:
        if other.basis is not self.basis:
            raise BasisError(f"cannot combine {self.basis.value} and {other.basis.value} bases")

    def _lift(self, other):
        if isinstance(other, TPoly):
            self._check_same(other)
            return other
        g = LaurentPoly.coerce(other)
        if g is NotImplemented:
            return NotImplemented
        # a scalar is g*t^0 = g*S_0 in either basis
        return TPoly({0: g}, self.basis)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._coeffs)
        for n, g in other._coeffs.items():
            acc[n] = acc.get(n, ZERO) + g
        return TPoly(acc, self.basis)

    __radd__ = __add__

    def __neg__(self) -> "TPoly":
        return TPoly({n: -g for n, g in self._coeffs.items()}, self.basis)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, g: LaurentPoly | int) -> "TPoly":
        g = LaurentPoly.coerce(g)
        return TPoly({n: g * c for n, c in self._coeffs.items()}, self.basis)

    def __mul__(self, other):
        if isinstance(other, TPoly):
            return tpoly_mul(self, other)
        g = LaurentPoly.coerce(other)
        if g is NotImplemented:
            return NotImplemented
        return self.scale(g)

    def __rmul__(self, other):
        g = LaurentPoly.coerce(other)
        if g is NotImplemented:
            return NotImplemented
        return self.scale(g)

    def __pow__(self, k: int) -> "TPoly":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = TPoly({0: ONE}, self.basis)
        for _ in range(k):
            result = tpoly_mul(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.basis is other.basis and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.basis, tuple(self._coeffs.items())))

    def same_value(self, other: "TPoly") -> bool:
        """Compare as polynomials in ``t`` regardless of basis."""
        return to_monomial(self)._coeffs == to_monomial(other)._coeffs

    def in_basis(self, basis: Basis) -> "TPoly":
        return to_chebyshev(self) if basis is Basis.CHEBYSHEV else to_monomial(self)

    def evaluate(self, t, a) -> Fraction:
        """Exact value at rational ``t`` and nonzero rational ``A``."""
        t = Fraction(t)
        total = Fraction(0)
        for n, g in to_monomial(self).items():
            total += _eval_laurent(g, a) * t ** n
        return total

    def __str__(self) -> str:
        return format_tpoly(self)

    def __repr__(self) -> str:
        return f"TPoly({str(self)!r}, {self.basis.name})"


def format_tpoly(p: TPoly) -> str:
    """Render in the shared grammar.  Chebyshev terms always use ``S_k``."""
    cheb = p.basis is Basis.CHEBYSHEV
    if p.is_zero():
        # the S_0 keeps the basis visible, so the text parses back to the same value
        return "0*S_0" if cheb else "0"
    parts: list[str] = []
    for n in sorted(p.coeffs, reverse=True):
        g = p[n]
        if cheb:
            var = f"S_{n}"
        elif n == 0:
            var = ""
        else:
            var = "t" if n == 1 else f"t^{n}"
        negative = False
        if len(g) > 1:
            coeff = f"({g})" if (var or len(p.coeffs) > 1) else str(g)
        else:
            ((e, c),) = g.items()
            negative = c < 0
            mag = LaurentPoly({e: abs(c)})
            coeff = "" if (mag == ONE and var) else str(mag)
        if coeff and var:
            # integer multiples juxtapose, anything in A takes an explicit '*'
            body = f"{coeff}{var}" if coeff.isdigit() else f"{coeff}*{var}"
        else:
            body = coeff or var
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"{'-' if negative else '+'} {body}")
    return " ".join(parts)


@lru_cache(maxsize=None)
def _cheb_int(n: int) -> tuple[int, ...]:
    # integer coefficients of S_n, low degree first
    if n == 0:
        return (1,)
    if n == 1:
        return (0, 1)
    prev, cur = _cheb_int(n - 2), _cheb_int(n - 1)
    out = [0] * (n + 1)
    for i, c in enumerate(cur):
        out[i + 1] += c
    for i, c in enumerate(prev):
        out[i] -= c
    return tuple(out)


def chebyshev_S(n: int) -> TPoly:
    """``S_n(t)`` expanded in the monomial basis."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    return TPoly({i: c for i, c in enumerate(_cheb_int(n)) if c}, Basis.MONOMIAL)


def to_chebyshev(p: TPoly) -> TPoly:
    if p.basis is Basis.CHEBYSHEV:
        return p
    rem = {n: g for n, g in p.items()}
    out: dict[int, LaurentPoly] = {}
    while rem:
        n = max(rem)
        g = rem.pop(n)
        out[n] = g
        # S_n is monic, so subtracting g*S_n clears t^n
        for i, c in enumerate(_cheb_int(n)[:-1]):
            if c:
                v = rem.get(i, ZERO) - g * c
                if v:
                    rem[i] = v
                else:
                    rem.pop(i, None)
    return TPoly(out, Basis.CHEBYSHEV)


def to_monomial(p: TPoly) -> TPoly:
    if p.basis is Basis.MONOMIAL:
        return p
    acc: dict[int, LaurentPoly] = {}
    for n, g in p.items():
        for i, c in enumerate(_cheb_int(n)):
            if c:
                acc[i] = acc.get(i, ZERO) + g * c
    return TPoly(acc, Basis.MONOMIAL)


def tpoly_mul(p: TPoly, q: TPoly) -> TPoly:
    """Product of two monomial-basis polynomials."""
    if p.basis is not Basis.MONOMIAL or q.basis is not Basis.MONOMIAL:
        raise BasisError("tpoly_mul needs monomial-basis operands; convert with to_monomial")
    acc: dict[int, LaurentPoly] = {}
    for i, g in p.items():
        for j, h in q.items():
            acc[i + j] = acc.get(i + j, ZERO) + g * h
    return TPoly(acc, Basis.MONOMIAL)


T = TPoly({1: ONE}, Basis.MONOMIAL)
