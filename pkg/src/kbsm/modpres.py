"""The presented module Z[A^+-1][t]/S for the skein module of RP^3 # RP^3.

``S`` is generated, for every ``n >= 2``, by

    r_n = c_n S_n(t) - d_n S_eps(t),      eps = n mod 2,

with ``c_n = A^(n+1) + A^-(n+1)`` and

    d_n = c_n + 2 (A + A^-1) sum_{k=1}^{n/2} A^(n+2-4k)       (n even)
    d_n = c_n + 2 sum_{k=1}^{(n-1)/2} A^(n+1-4k)              (n odd).

Each relation has its leading term ``c_n S_n`` in its own Chebyshev
coordinate, so reducing every coordinate ``n >= 2`` modulo ``c_n`` into the
exponent window ``[-(n+1), n]`` gives a unique representative.  The full
skein module adds two free summands spanned by the knots ``K`` and ``K'``;
see :class:`SkeinElement`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .chebyshev import Basis, TPoly, to_chebyshev, to_monomial
from .ideals import IdealTwoGen, PrincipalityVerdict, principality_verdict
from .laurent import (
    ONE,
    ZERO,
    LaurentPoly,
    NotDivisible,
    RationalFunction,
    divide_exact,
    monic_division,
    poly_gcd,
)

__all__ = [
    "Relation",
    "NormalForm",
    "TorsionWitness",
    "ManifoldProfile",
    "TorsionRecord",
    "RankReport",
    "SkeinElement",
    "relation",
    "normal_form",
    "reduce_in_order",
    "is_zero",
    "torsion_witness",
    "split_obstruction",
    "rank_over_QA",
    "manifold_catalog",
    "marche_type_check",
    "balanced",
]


def balanced(p: LaurentPoly) -> LaurentPoly:
    """Unit multiple of ``p`` whose exponents are centred on zero (rounding down)."""
    if p.is_zero():
        return p
    q = p.shift(-((p.min_exp + p.max_exp) // 2))
    return -q if q.leading_coeff < 0 else q


@dataclass(frozen=True)
class Relation:
    n: int
    c: LaurentPoly
    d: LaurentPoly
    expression: TPoly  # Chebyshev basis

    @property
    def eps(self) -> int:
        return self.n % 2

    def monomial(self) -> TPoly:
        return to_monomial(self.expression)


@lru_cache(maxsize=None)
def relation(n: int) -> Relation:
    """The ``n``-th defining relation (even ``n``: family (i); odd: family (ii))."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"relations exist for n >= 2, got {n!r}")
    c = LaurentPoly({n + 1: 1, -(n + 1): 1})
    if n % 2 == 0:
        tail = LaurentPoly({1: 1, -1: 1}) * LaurentPoly({n + 2 - 4 * k: 1 for k in range(1, n // 2 + 1)})
    else:
        tail = LaurentPoly({n + 1 - 4 * k: 1 for k in range(1, (n - 1) // 2 + 1)})
    d = c + tail.scale(2)
    expr = TPoly({n: c, n % 2: -d}, Basis.CHEBYSHEV)
    return Relation(n, c, d, expr)


def _window(n: int) -> int:
    return -(n + 1)


@dataclass(frozen=True)
class NormalForm:
    """Canonical coset representative ``a0 S_0 + a1 S_1 + sum_n rho_n S_n``."""

    a0: LaurentPoly
    a1: LaurentPoly
    residues: tuple[tuple[int, LaurentPoly], ...] = ()

    def __post_init__(self):
        res = self.residues.items() if isinstance(self.residues, dict) else self.residues
        object.__setattr__(self, "residues", tuple(sorted((n, g) for n, g in res if g)))

    def is_zero(self) -> bool:
        return self.a0.is_zero() and self.a1.is_zero() and not self.residues

    def residue(self, n: int) -> LaurentPoly:
        return dict(self.residues).get(n, ZERO)

    def lift(self) -> TPoly:
        """The representative as a Chebyshev-basis polynomial."""
        coeffs = {0: self.a0, 1: self.a1}
        coeffs.update(dict(self.residues))
        return TPoly(coeffs, Basis.CHEBYSHEV)

    def check_windows(self) -> bool:
        for n, g in self.residues:
            if g.min_exp < _window(n) or g.max_exp > n:
                return False
        return True

    def __str__(self) -> str:
        return str(self.lift())

    def to_dict(self) -> dict:
        return {
            "S_0": str(self.a0),
            "S_1": str(self.a1),
            "residues": {str(n): str(g) for n, g in self.residues},
        }


def _reduce_coordinate(coeffs: dict[int, LaurentPoly], n: int) -> None:
    g = coeffs.get(n)
    if not g:
        return
    rel = relation(n)
    q, rho = monic_division(g, rel.c, _window(n))
    if rho:
        coeffs[n] = rho
    else:
        coeffs.pop(n)
    if q:
        e = rel.eps
        coeffs[e] = coeffs.get(e, ZERO) + q * rel.d


def normal_form(p: TPoly) -> NormalForm:
    """Reduce ``p`` modulo every relation ``r_n`` with ``n <= deg p``."""
    coeffs = dict(to_chebyshev(p).coeffs)
    for n in sorted((k for k in coeffs if k >= 2), reverse=True):
        _reduce_coordinate(coeffs, n)
    return NormalForm(coeffs.get(0, ZERO), coeffs.get(1, ZERO), {n: g for n, g in coeffs.items() if n >= 2})


def reduce_in_order(p: TPoly, order: Sequence[int], steps_per_coordinate: int = 1) -> NormalForm:
    """Normal form computed by reducing coordinates in a caller-chosen order.

    Each pass over ``order`` clears one leading or trailing term per listed
    coordinate through an explicit subtraction of ``u A^k r_n``; passes
    repeat until nothing changes.  Used to probe order independence.
    """
    coeffs = dict(to_chebyshev(p).coeffs)
    changed = True
    while changed:
        changed = False
        for n in order:
            for _ in range(steps_per_coordinate):
                g = coeffs.get(n)
                if n < 2 or not g:
                    break
                rel = relation(n)
                lo, hi = _window(n), n
                if g.max_exp > hi:
                    k = g.max_exp - rel.c.max_exp
                    u = LaurentPoly({k: g.leading_coeff})
                elif g.min_exp < lo:
                    k = g.min_exp - rel.c.min_exp
                    u = LaurentPoly({k: g.trailing_coeff})
                else:
                    break
                # subtract u * r_n = u c_n S_n - u d_n S_eps
                coeffs[n] = g - u * rel.c
                coeffs[rel.eps] = coeffs.get(rel.eps, ZERO) + u * rel.d
                if not coeffs[n]:
                    coeffs.pop(n)
                changed = True
    leftover = [n for n, g in coeffs.items() if n >= 2 and (g.max_exp > n or g.min_exp < _window(n))]
    if leftover:
        raise ValueError(f"order {list(order)} never reduces coordinates {sorted(leftover)}")
    return NormalForm(coeffs.get(0, ZERO), coeffs.get(1, ZERO), {n: g for n, g in coeffs.items() if n >= 2})


def is_zero(p: TPoly) -> bool:
    return normal_form(p).is_zero()


# -- torsion --------------------------------------------------------------


@dataclass(frozen=True)
class TorsionWitness:
    """Nonzero element killed by ``annihilator``; both facts re-checked on creation."""

    element: TPoly
    annihilator: LaurentPoly
    n: int

    def __post_init__(self):
        if not self.verify():
            raise ValueError("torsion witness does not verify")

    def verify(self) -> bool:
        return (not normal_form(self.element).is_zero()) and normal_form(
            self.element.scale(self.annihilator)
        ).is_zero()

    def to_dict(self) -> dict:
        return {
            "kind": "torsion",
            "n": self.n,
            "element": str(self.element),
            "annihilator": str(self.annihilator),
            "element_normal_form": normal_form(self.element).to_dict(),
            "annihilated_normal_form": normal_form(self.element.scale(self.annihilator)).to_dict(),
        }


def torsion_witness(n: int) -> Optional[TorsionWitness]:
    """``(c_n/g) S_n - (d_n/g) S_eps`` with ``g = gcd(c_n, d_n)``; ``None`` if ``g`` is a unit."""
    if n < 2:
        raise ValueError("n must be at least 2")
    rel = relation(n)
    g = balanced(poly_gcd(rel.c, rel.d))
    if g.is_unit():
        return None
    c1, d1 = divide_exact(rel.c, g), divide_exact(rel.d, g)
    element = TPoly({n: c1, rel.eps: -d1}, Basis.CHEBYSHEV)
    return TorsionWitness(element, g, n)


def split_obstruction(n: int, degree_bound: Optional[int] = None) -> PrincipalityVerdict:
    """Principality verdict for ``(c_n/g, d_n/g)``.

    The submodule spanned by ``S_n`` and ``S_eps`` modulo ``r_n`` has a
    rank-one torsion-free quotient isomorphic to this ideal; a
    non-principal verdict shows that quotient is not free.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    rel = relation(n)
    g = balanced(poly_gcd(rel.c, rel.d))
    ideal = IdealTwoGen(divide_exact(rel.c, g), divide_exact(rel.d, g))
    return principality_verdict(ideal, degree_bound)


# -- rank over Q(A) ---------------------------------------------------------------


@dataclass(frozen=True)
class RankEntry:
    n: int
    eps: int
    c: LaurentPoly
    d: LaurentPoly
    ratio: RationalFunction  # S_n = ratio * S_eps over Q(A)

    def verify(self) -> bool:
        return (not self.c.is_zero()) and self.ratio * self.c == RationalFunction(self.d)


@dataclass(frozen=True)
class RankReport:
    rank: int
    free_generators: tuple[str, ...]
    quotient_basis: tuple[str, ...]
    entries: tuple[RankEntry, ...]

    def verified(self) -> bool:
        return all(e.verify() and e.eps in (0, 1) for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "free_generators": list(self.free_generators),
            "quotient_basis": list(self.quotient_basis),
            "reductions": [
                {"n": e.n, "target": f"S_{e.eps}", "numerator": str(e.ratio.numerator),
                 "denominator": str(e.ratio.denominator)}
                for e in self.entries
            ],
        }


def rank_over_QA(bound: int = 30) -> RankReport:
    """Dimension over Q(A): two free generators plus span{S_0, S_1}.

    Over Q(A) every ``c_n`` is invertible, so ``r_n`` rewrites ``S_n`` as
    ``(d_n/c_n) S_eps``; no relation involves only ``S_0`` and ``S_1``.
    """
    entries = []
    for n in range(2, bound + 1):
        rel = relation(n)
        if rel.c.is_zero():
            raise ArithmeticError(f"c_{n} vanishes")
        entries.append(RankEntry(n, rel.eps, rel.c, rel.d, RationalFunction(rel.d, rel.c)))
    report = RankReport(2 + 2, ("K", "K'"), ("S_0", "S_1"), tuple(entries))
    if not report.verified():
        raise ArithmeticError("rank report failed its own re-check")
    return report


# -- Marche-type checks and known manifolds -----------------------------------------


def marche_type_check(annihilator: LaurentPoly, k_bound: int = 64, m_bound: int = 4) -> Optional[int]:
    """Least ``k <= k_bound`` with ``annihilator | (A^k - A^-k)^m`` for some ``m <= m_bound``.

    ``None`` means no such ``k`` inside the bounds, which is bounded
    evidence only.
    """
    if annihilator.is_zero():
        raise ValueError("annihilator must be nonzero")
    for k in range(1, k_bound + 1):
        base = LaurentPoly({k: 1, -k: -1})
        power = ONE
        for _ in range(m_bound):
            power = power * base
            try:
                divide_exact(power, annihilator)
            except NotDivisible:
                continue
            return k
    return None


@dataclass(frozen=True)
class TorsionRecord:
    k: int
    annihilator: LaurentPoly
    identity_verified: bool  # annihilator == -A^k (A^k - A^-k)
    marche_type: Optional[int]


@dataclass(frozen=True)
class ManifoldProfile:
    name: str
    d: int
    torsion_family: str
    torsion: tuple[TorsionRecord, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "d": self.d,
            "torsion_family": self.torsion_family,
            "torsion": [
                {"k": r.k, "annihilator": str(r.annihilator), "identity_verified": r.identity_verified,
                 "marche_k": r.marche_type}
                for r in self.torsion
            ],
        }


def _s1s2_record(k: int) -> TorsionRecord:
    ann = LaurentPoly({0: 1, 2 * k: -1})
    identity = LaurentPoly({k: -1}) * LaurentPoly({k: 1, -k: -1}) == ann
    return TorsionRecord(k, ann, identity, marche_type_check(ann))


def manifold_catalog(k_max: int = 12, genera: Iterable[int] = (2, 3, 4)) -> list[ManifoldProfile]:
    """Profiles of manifolds whose skein modules have the conjectured shape."""
    out = [
        ManifoldProfile(
            "S^1 x S^2",
            1,
            "N_k = Z[A^+-1]/(1 - A^2k) for k >= 2",
            tuple(_s1s2_record(k) for k in range(2, k_max + 1)),
        )
    ]
    for g in genera:
        if g < 2:
            raise ValueError("F x S^1 profiles need genus >= 2")
        out.append(
            ManifoldProfile(
                f"F_{g} x S^1",
                2 ** (2 * g + 1) + 2 * g - 1,
                "torsion elements of (A^k - A^-k)-type for some k >= 1",
            )
        )
    return out


# -- the full module, with the free summands ------------------------------------------


@dataclass(frozen=True)
class SkeinElement:
    """``k * K + k' * K' + q`` with ``q`` in Z[A^+-1][t]/S."""

    k: LaurentPoly = ZERO
    k_prime: LaurentPoly = ZERO
    quotient: TPoly = field(default_factory=lambda: TPoly({}, Basis.CHEBYSHEV))

    def __add__(self, other: "SkeinElement") -> "SkeinElement":
        q1, q2 = to_chebyshev(self.quotient), to_chebyshev(other.quotient)
        return SkeinElement(self.k + other.k, self.k_prime + other.k_prime, q1 + q2)

    def scale(self, g: LaurentPoly) -> "SkeinElement":
        return SkeinElement(self.k * g, self.k_prime * g, self.quotient.scale(g))

    def normal_form(self) -> tuple[LaurentPoly, LaurentPoly, NormalForm]:
        return self.k, self.k_prime, normal_form(self.quotient)

    def is_zero(self) -> bool:
        return self.k.is_zero() and self.k_prime.is_zero() and normal_form(self.quotient).is_zero()
