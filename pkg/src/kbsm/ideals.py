"""Gcds and ideal-theoretic certificates for two-generated ideals of Z[A, A^-1].

Non-principality is certified, never searched for: if ``gcd(g1, g2)`` is a
unit and the ideal reduces modulo a prime into a proper ideal of
F_p[A, A^-1], then ``(g1, g2)`` is proper with unit gcd and hence cannot be
principal.  Every certificate carries enough data to be re-checked by ring
arithmetic alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .laurent import (
    ONE,
    ZERO,
    LaurentPoly,
    NotDivisible,
    divide_exact,
    poly_gcd,
)

__all__ = [
    "GcdResult",
    "IdealTwoGen",
    "ProperCertificate",
    "PrincipalityVerdict",
    "Status",
    "gcd",
    "properness_certificate",
    "principality_verdict",
    "membership_bounded",
    "solve_integer",
    "SMALL_PRIMES",
]

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True)
class GcdResult:
    gcd: LaurentPoly
    cofactor1: LaurentPoly
    cofactor2: LaurentPoly

    def verify(self, p: LaurentPoly, q: LaurentPoly) -> bool:
        return self.gcd * self.cofactor1 == p and self.gcd * self.cofactor2 == q


def gcd(p: LaurentPoly, q: LaurentPoly) -> GcdResult:
    """Unit-normalized gcd together with the two exact cofactors."""
    g = poly_gcd(p, q)
    return GcdResult(g, divide_exact(p, g), divide_exact(q, g))


@dataclass(frozen=True)
class IdealTwoGen:
    g1: LaurentPoly
    g2: LaurentPoly

    def __post_init__(self):
        for name in ("g1", "g2"):
            g = LaurentPoly.coerce(getattr(self, name))
            if g is NotImplemented:
                raise TypeError(f"{name} must be a LaurentPoly or int")
            object.__setattr__(self, name, g)
        if self.g1.is_zero() and self.g2.is_zero():
            raise ValueError("an IdealTwoGen needs a nonzero generator")

    @property
    def generators(self) -> tuple[LaurentPoly, LaurentPoly]:
        return (self.g1, self.g2)

    def __str__(self) -> str:
        return f"({self.g1}, {self.g2})"


# -- arithmetic over F_p, dense low-to-high lists ---------------------------


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_dense(g: LaurentPoly, p: int) -> tuple[list[int], int]:
    r = g.reduce_mod(p)
    if r.is_zero():
        return [], 0
    lo = r.min_exp
    out = [0] * (r.max_exp - lo + 1)
    for e, c in r.items():
        out[e - lo] = c
    return out, lo


def _fp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j, d in enumerate(b):
                a[i - db + j] = (a[i - db + j] - c * d) % p
    return _fp_trim(q), _fp_trim(a[:db] if db else [])


def _fp_monic(a: list[int], p: int) -> list[int]:
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        _, r = _fp_divmod(a, b, p)
        a, b = b, r
    return _fp_monic(a, p) if a else []


def _is_fp_unit(g: LaurentPoly, p: int) -> bool:
    # units of F_p[A, A^-1] are c*A^k with c != 0
    return len(g.reduce_mod(p)) == 1


@dataclass(frozen=True)
class ProperCertificate:
    """Evidence that ``1`` is not in ``(g1, g2)``.

    Modulo ``prime`` both generators are multiples of ``factor``, which is
    not a unit of F_p[A, A^-1].  ``factor`` is ``None`` when both
    generators vanish mod ``prime``, i.e. the ideal lies inside ``(prime)``.
    """

    ideal: IdealTwoGen
    prime: int
    factor: Optional[LaurentPoly]
    cofactor1: LaurentPoly
    cofactor2: LaurentPoly

    def verify(self) -> bool:
        p = self.prime
        if self.factor is None:
            return all(g.reduce_mod(p).is_zero() for g in self.ideal.generators)
        if _is_fp_unit(self.factor, p) or self.factor.reduce_mod(p).is_zero():
            return False
        return all(
            (self.factor * u - g).reduce_mod(p).is_zero()
            for u, g in zip((self.cofactor1, self.cofactor2), self.ideal.generators)
        )

    def to_dict(self) -> dict:
        return {
            "kind": "proper",
            "ideal": [str(self.ideal.g1), str(self.ideal.g2)],
            "prime": self.prime,
            "factor": None if self.factor is None else str(self.factor),
            "cofactors": [str(self.cofactor1), str(self.cofactor2)],
        }


def properness_certificate(
    ideal: IdealTwoGen, primes: Sequence[int] = SMALL_PRIMES
) -> Optional[ProperCertificate]:
    """Search small primes for a reduction in which the ideal stays proper.

    Returns ``None`` when no certificate is found, which happens in
    particular for every ideal containing a unit.
    """
    for p in primes:
        d1, lo1 = _fp_dense(ideal.g1, p)
        d2, lo2 = _fp_dense(ideal.g2, p)
        if not d1 and not d2:
            return ProperCertificate(ideal, p, None, ZERO, ZERO)
        f = _fp_gcd(d1, d2, p) if d1 and d2 else _fp_monic(d1 or d2, p)
        if len(f) < 2:
            continue
        cofs = []
        for d, lo in ((d1, lo1), (d2, lo2)):
            if not d:
                cofs.append(ZERO)
                continue
            q, r = _fp_divmod(d, f, p)
            assert not r
            cofs.append(LaurentPoly({lo + i: c for i, c in enumerate(q) if c}))
        factor = LaurentPoly({i: c for i, c in enumerate(f) if c})
        cert = ProperCertificate(ideal, p, factor, cofs[0], cofs[1])
        assert cert.verify()
        return cert
    return None


# -- integer linear algebra ----------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def solve_integer(matrix: list[list[int]], rhs: list[int]) -> Optional[list[int]]:
    """Integer solution of ``matrix @ x == rhs`` or ``None`` if there is none.

    Columns are reduced to a lower echelon (Hermite-style) form ``H = M U``
    with ``U`` unimodular; the triangular system in ``H`` is then solved
    exactly and mapped back through ``U``.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    H = [list(r) for r in matrix]
    U = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def colop(i: int, j: int, a: int, b: int, c: int, d: int) -> None:
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        for M in (H, U):
            for row in M:
                x, y = row[i], row[j]
                row[i], row[j] = a * x + b * y, c * x + d * y

    pivots: list[tuple[int, int]] = []
    pc = 0
    for r in range(rows):
        if pc >= cols:
            break
        for k in range(pc + 1, cols):
            b = H[r][k]
            if b == 0:
                continue
            a = H[r][pc]
            g, s, t = _xgcd(a, b)
            colop(pc, k, s, t, -b // g, a // g)
        if H[r][pc] != 0:
            if H[r][pc] < 0:
                for M in (H, U):
                    for row in M:
                        row[pc] = -row[pc]
            pivots.append((r, pc))
            pc += 1

    y = [0] * cols
    pivot_rows = dict(pivots)
    for r in range(rows):
        acc = sum(H[r][c] * y[c] for c in range(cols) if y[c])
        if r in pivot_rows:
            c = pivot_rows[r]
            q, rem = divmod(rhs[r] - acc, H[r][c])
            if rem:
                return None
            y[c] = q
        elif acc != rhs[r]:
            return None
    return [sum(U[i][j] * y[j] for j in range(cols)) for i in range(cols)]


def membership_bounded(
    p: LaurentPoly, ideal: IdealTwoGen, degree_bound: Optional[int] = None
) -> Optional[tuple[LaurentPoly, LaurentPoly]]:
    """Find ``(a, b)`` with ``a*g1 + b*g2 == p`` and cofactors of bounded support.

    The search widens the cofactor windows step by step, starting from
    the tightest supports compatible with ``p``; the first solution found
    is returned.  ``None`` is *not* a proof that ``p`` lies outside the ideal.
    """
    gens = ideal.generators
    widest = max(g.width for g in gens)
    if degree_bound is None:
        degree_bound = 4 * widest
    if degree_bound < 0:
        raise ValueError("degree_bound must be nonnegative")
    if p.is_zero():
        return ZERO, ZERO
    pmin, pmax = p.min_exp, p.max_exp
    for s in range(widest + degree_bound + 1):
        windows = []
        for g in gens:
            if g.is_zero():
                windows.append(range(0))
            else:
                windows.append(range(pmin - g.min_exp - s, pmax - g.max_exp + s + 1))
        columns = [(i, k) for i, w in enumerate(windows) for k in w]
        if not columns:
            continue
        lo = min([pmin] + [k + gens[i].min_exp for i, k in columns])
        hi = max([pmax] + [k + gens[i].max_exp for i, k in columns])
        matrix = [[gens[i].coeff(e - k) for i, k in columns] for e in range(lo, hi + 1)]
        x = solve_integer(matrix, [p.coeff(e) for e in range(lo, hi + 1)])
        if x is None:
            continue
        cof = [dict(), dict()]
        for (i, k), v in zip(columns, x):
            if v:
                cof[i][k] = v
        a, b = LaurentPoly(cof[0]), LaurentPoly(cof[1])
        assert a * gens[0] + b * gens[1] == p
        return a, b
    return None


# -- verdicts ---------------------------------------------------------------


class Status(enum.Enum):
    NON_PRINCIPAL = "NonPrincipal"
    PRINCIPAL = "Principal"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class PrincipalityVerdict:
    ideal: IdealTwoGen
    status: Status
    gcd: LaurentPoly
    certificate: Optional[ProperCertificate] = None
    cofactors: Optional[tuple[LaurentPoly, LaurentPoly]] = None
    notes: tuple[str, ...] = field(default=())

    @property
    def generator(self) -> Optional[LaurentPoly]:
        return self.gcd if self.status is Status.PRINCIPAL else None

    def verify(self) -> bool:
        """Re-check the witness using ring arithmetic only."""
        g1, g2 = self.ideal.generators
        try:
            q1, q2 = divide_exact(g1, self.gcd), divide_exact(g2, self.gcd)
        except NotDivisible:
            return False
        if self.status is Status.NON_PRINCIPAL:
            cert = self.certificate
            if cert is None or not cert.verify():
                return False
            if (cert.ideal.g1, cert.ideal.g2) != (q1, q2):
                return False
            return poly_gcd(q1, q2).is_unit()
        if self.status is Status.PRINCIPAL:
            if self.cofactors is None:
                return False
            a, b = self.cofactors
            return a * g1 + b * g2 == self.gcd
        return True

    def to_dict(self) -> dict:
        out = {
            "kind": "principality",
            "ideal": [str(self.ideal.g1), str(self.ideal.g2)],
            "status": self.status.value,
            "gcd": str(self.gcd),
        }
        if self.certificate is not None:
            out["properness"] = self.certificate.to_dict()
        if self.cofactors is not None:
            out["cofactors"] = [str(c) for c in self.cofactors]
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def principality_verdict(
    ideal: IdealTwoGen, degree_bound: Optional[int] = None
) -> PrincipalityVerdict:
    """Decide principality where a certificate exists, else report Inconclusive.

    With ``h = gcd(g1, g2)`` the ideal is ``h * (g1/h, g2/h)`` and is
    principal exactly when ``(g1/h, g2/h)`` is the whole ring.
    """
    res = gcd(ideal.g1, ideal.g2)
    h = res.gcd
    reduced = IdealTwoGen(res.cofactor1, res.cofactor2)
    cert = properness_certificate(reduced)
    if cert is not None:
        return PrincipalityVerdict(ideal, Status.NON_PRINCIPAL, h, certificate=cert)
    found = membership_bounded(h, ideal, degree_bound)
    if found is not None:
        return PrincipalityVerdict(ideal, Status.PRINCIPAL, h, cofactors=found)
    return PrincipalityVerdict(
        ideal,
        Status.INCONCLUSIVE,
        h,
        notes=("no properness certificate for primes <= 13 and gcd not found in bounded search",),
    )
