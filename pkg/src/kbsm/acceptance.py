"""Acceptance checks, shared by ``kbsm selftest`` and the test suite.

Each ``criterion_N`` returns a :class:`CriterionResult`; a failure carries
the first counterexample in ``detail``.  Random inputs come from seeded
generators, so every run sees the same cases.
"""

from __future__ import annotations

import random
import time
from collections import defaultdict
from dataclasses import dataclass
from math import comb
from typing import Callable, Optional

from . import bracket as br
from .arrowdiag import generator, reduce_kinks
from .certificates import verify_certificate
from .chebyshev import Basis, TPoly, chebyshev_S, to_chebyshev, to_monomial, tpoly_mul
from .ideals import Status
from .laurent import LaurentPoly, RationalFunction, divide_exact, poly_gcd
from .modpres import (
    manifold_catalog,
    marche_type_check,
    normal_form,
    rank_over_QA,
    reduce_in_order,
    relation,
    split_obstruction,
    torsion_witness,
)

__all__ = ["CriterionResult", "CRITERIA", "run_all", "standard_corpus", "random_diagrams"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f" -- {self.detail}" if self.detail else ""
        return f"[{tag}] criterion {self.number}: {self.title} ({self.seconds:.2f}s){extra}"


class _Fail(Exception):
    pass


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise _Fail(msg)


def _run(number: int, title: str, body: Callable[[], str], limit: Optional[float] = None) -> CriterionResult:
    start = time.perf_counter()
    try:
        detail = body() or ""
        passed = True
    except _Fail as exc:
        detail, passed = str(exc), False
    except Exception as exc:  # a crash is a failure, not an abort of the whole run
        detail, passed = f"{type(exc).__name__}: {exc}", False
    elapsed = time.perf_counter() - start
    if passed and limit is not None and elapsed >= limit:
        passed, detail = False, f"took {elapsed:.2f}s, limit {limit}s"
    return CriterionResult(number, title, passed, elapsed, detail)


# -- 1 ---------------------------------------------------------------------------


def criterion_1() -> CriterionResult:
    def body():
        report = rank_over_QA(30)
        _check(report.rank == 4, f"rank {report.rank}")
        _check([e.n for e in report.entries] == list(range(2, 31)), "report does not cover 2..30")
        for e in report.entries:
            _check(e.eps == e.n % 2, f"S_{e.n} reduced into S_{e.eps}")
            _check(e.ratio * e.c == RationalFunction(e.d), f"ratio wrong at n={e.n}")
        a = LaurentPoly({1: 1})
        expected = RationalFunction(a**2 + 1 + a**-2, a**2 - 1 + a**-2)
        _check(report.entries[0].ratio == expected, "d_2/c_2 mismatch")
        return "rank 4; S_2..S_30 collapse into span{S_0, S_1}"

    return _run(1, "rank over Q(A) is 4", body, limit=1.0)


# -- 2 ---------------------------------------------------------------------------

# raw representation: {(t_exp, a_exp): int}


def _raw_add(p: dict, q: dict, s: int = 1) -> dict:
    out = defaultdict(int, p)
    for k, v in q.items():
        out[k] += s * v
    return {k: v for k, v in out.items() if v}


def _raw_mul(p: dict, q: dict) -> dict:
    out: dict = defaultdict(int)
    for (t1, a1), v1 in p.items():
        for (t2, a2), v2 in q.items():
            out[(t1 + t2, a1 + a2)] += v1 * v2
    return {k: v for k, v in out.items() if v}


def _raw_S(n: int) -> dict:
    # closed form of the second-kind Chebyshev polynomial
    return {(n - 2 * k, 0): (-1) ** k * comb(n - k, k) for k in range(n // 2 + 1)}


def _raw_formula(n: int) -> dict:
    c = {(0, n + 1): 1, (0, -(n + 1)): 1}
    if n % 2 == 0:
        lhs = _raw_mul(c, _raw_add(_raw_S(n), {(0, 0): 1}, -1))
        s = {(0, n + 2 - 4 * k): 1 for k in range(1, n // 2 + 1)}
        tail = _raw_mul({(0, 1): 2, (0, -1): 2}, s)
    else:
        lhs = _raw_mul(c, _raw_add(_raw_S(n), {(1, 0): 1}, -1))
        s = {(0, n + 1 - 4 * k): 1 for k in range(1, (n - 1) // 2 + 1)}
        tail = _raw_mul({(1, 0): 2}, s)
    return _raw_add(lhs, tail, -1)


def _to_raw(p: TPoly) -> dict:
    return {(n, e): c for n, g in to_monomial(p).items() for e, c in g.items()}


def criterion_2() -> CriterionResult:
    def body():
        for n in range(2, 41):
            _check(_to_raw(relation(n).expression) == _raw_formula(n), f"relation {n} differs")
        return "n = 2..40 exact"

    return _run(2, "relation fidelity", body, limit=5.0)


# -- 3 ---------------------------------------------------------------------------


def criterion_3() -> CriterionResult:
    def body():
        a = LaurentPoly({1: 1})
        element = TPoly({2: a**2 - 1 + a**-2, 0: -(a**2 + 1 + a**-2)}, Basis.CHEBYSHEV)
        ann = a + a**-1
        _check(not normal_form(element).is_zero(), "element normal form is zero")
        _check(normal_form(element.scale(ann)).is_zero(), "(A + A^-1) * element is not zero")
        w = torsion_witness(2)
        _check(w is not None and w.element == element and w.annihilator == ann, "torsion_witness(2) differs")
        _check(verify_certificate(w.to_dict()), "certificate does not re-verify")
        k = marche_type_check(ann)
        _check(k == 2, f"marche_type_check gave {k}")
        return "witness verified, k = 2"

    return _run(3, "torsion witness at n = 2", body)


# -- 4 ---------------------------------------------------------------------------


def criterion_4() -> CriterionResult:
    def body():
        for n in (2, 3):
            v = split_obstruction(n)
            _check(v.status is Status.NON_PRINCIPAL, f"n={n}: {v.status.value}")
            _check(v.verify(), f"n={n}: witness does not verify")
            q1, q2 = (divide_exact(g, v.gcd) for g in v.ideal.generators)
            _check(poly_gcd(q1, q2).is_unit(), f"n={n}: reduced generators share a factor")
            _check(v.certificate.prime == 2, f"n={n}: certificate prime {v.certificate.prime}")
            _check(verify_certificate(v.to_dict()), f"n={n}: JSON certificate does not re-verify")
        return "n = 2, 3 NonPrincipal (mod 2)"

    return _run(4, "non-splitness evidence", body, limit=1.0)


# -- 5 ---------------------------------------------------------------------------


def standard_corpus() -> dict[str, br.PlanarDiagram]:
    """Named diagrams with at most 8 crossings."""
    unknot = br.PlanarDiagram((), 1, 0)
    corpus = {
        "empty": br.PlanarDiagram((), 0, 0),
        "unknot": unknot,
        "unknot+kink": br.add_kink(unknot, 1),
        "unknot-kink": br.add_kink(unknot, -1),
        "unknot sigma1": br.braid_closure([1]),
        "unknot sigma1^-1": br.braid_closure([-1]),
        "unknot sigma1 sigma2^-1": br.braid_closure([1, -2]),
        "unknot R2": br.braid_closure([1, -1]),
        "two unlinked circles": br.PlanarDiagram((), 2, 0),
        "Hopf+": br.braid_closure([1, 1]),
        "Hopf-": br.braid_closure([-1, -1]),
        "trefoil right": br.braid_closure([1, 1, 1]),
        "trefoil left": br.braid_closure([-1, -1, -1]),
        "figure-eight": br.braid_closure([1, -2, 1, -2]),
        "Solomon 4_1^2": br.braid_closure([1, 1, 1, 1]),
        "cinquefoil": br.braid_closure([1] * 5),
        "5_2": br.braid_closure([1, 1, 1, 2, -1, 2]),
        "6_1": br.braid_closure([1, 1, 2, -1, -3, 2, -3]),
        "Whitehead": br.braid_closure([1, 1, -2, 1, -2]),
        "Borromean": br.braid_closure([1, -2] * 3),
        "T(2,7)": br.braid_closure([1] * 7),
        "T(3,4)": br.braid_closure([1, 2] * 4),
        "trefoil # trefoil": br.braid_closure([1, 1, 1, 2, 2, 2]),
        "Hopf u trefoil": br.disjoint_union(br.braid_closure([1, 1]), br.braid_closure([1, 1, 1])),
    }
    return corpus


def _random_word(rng: random.Random, strands: int, length: int) -> list[int]:
    return [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]


def random_diagrams(count: int = 200, seed: int = 20240501, max_crossings: int = 8) -> list[br.PlanarDiagram]:
    """Random valid diagrams: braid closures with extra kinks and loops."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        strands = rng.randint(2, 4)
        kinks = rng.randint(0, 2)
        length = rng.randint(1, max_crossings - kinks)
        d = br.braid_closure(_random_word(rng, strands, length), strands)
        for _ in range(kinks):
            labels = sorted(d.labels())
            edge = rng.choice(labels) if labels else None
            d = br.add_kink(d, rng.choice((1, -1)), edge)
        d = br.PlanarDiagram(d.crossings, d.free_loops + rng.randint(0, 1), rng.randint(-2, 2))
        if rng.random() < 0.3:
            d = br.mirror(d)
        assert not br.validate(d)
        out.append(d)
    return out


def criterion_5(n_random: int = 200) -> CriterionResult:
    def body():
        cases = list(standard_corpus().items())
        cases += [(f"random #{i}", d) for i, d in enumerate(random_diagrams(n_random))]
        for name, d in cases:
            _check(d.n_crossings <= 8, f"{name} has {d.n_crossings} crossings")
            _check(br.bracket_statesum(d) == br.bracket_recursive(d), f"methods disagree on {name}")

        rng = random.Random(7)
        for i in range(50):
            strands = rng.randint(2, 4)
            w1 = _random_word(rng, strands, rng.randint(0, 3))
            w2 = _random_word(rng, strands, rng.randint(0, 3))
            g = rng.choice((1, -1)) * rng.randint(1, strands - 1)
            base = br.bracket(br.braid_closure(w1 + w2, strands))
            _check(br.bracket(br.braid_closure(w1 + [g, -g] + w2, strands)) == base, f"R2 case {i}")
            if strands >= 3:
                j = rng.randint(1, strands - 2)
                s = rng.choice((1, -1))
                lhs = br.braid_closure(w1 + [s * j, s * (j + 1), s * j] + w2, strands)
                rhs = br.braid_closure(w1 + [s * (j + 1), s * j, s * (j + 1)] + w2, strands)
                _check(br.bracket(lhs) == br.bracket(rhs), f"R3 case {i}")

        neg = LaurentPoly({-3: -1})
        for name, d in cases[:30]:
            if not d.crossings and not d.free_loops:
                continue  # nothing to put a kink on
            _check(br.bracket(br.add_kink(d, -1)) == neg * br.bracket(d), f"negative kink on {name}")
        coeff, rest = reduce_kinks(generator("t"))
        _check(coeff == neg and rest == generator("x"), "t != -A^-3 x")
        return f"{len(cases)} diagrams agree; R2/R3 invariant; kink factor -A^-3"

    return _run(5, "bracket oracle equivalence", body, limit=30.0)


# -- 6 ---------------------------------------------------------------------------


def _random_laurent(rng: random.Random, span: int = 6, terms: int = 3, size: int = 5) -> LaurentPoly:
    return LaurentPoly({rng.randint(-span, span): rng.randint(-size, size) for _ in range(rng.randint(0, terms))})


def _random_tpoly(rng: random.Random, degree: int, basis: Basis, density: float = 0.5) -> TPoly:
    return TPoly({n: _random_laurent(rng) for n in range(degree + 1) if rng.random() < density}, basis)


def criterion_6() -> CriterionResult:
    def body():
        t = TPoly({1: 1})
        for n in range(0, 65):
            s = chebyshev_S(n)
            _check(s.degree == n and s[n] == 1, f"S_{n} not monic of degree {n}")
            _check(s.evaluate(2, 1) == n + 1, f"S_{n}(2) != {n + 1}")
            if n >= 2:
                _check(s == tpoly_mul(t, chebyshev_S(n - 1)) - chebyshev_S(n - 2), f"recursion fails at {n}")
        rng = random.Random(11)
        for i in range(100):
            p = _random_tpoly(rng, rng.randint(0, 40), Basis.MONOMIAL)
            _check(to_monomial(to_chebyshev(p)) == p, f"monomial round trip {i}")
            q = _random_tpoly(rng, rng.randint(0, 40), Basis.CHEBYSHEV)
            _check(to_chebyshev(to_monomial(q)) == q, f"Chebyshev round trip {i}")
        return "n <= 64; 200 round trips"

    return _run(6, "Chebyshev suite", body)


# -- 7 ---------------------------------------------------------------------------


def criterion_7(n_inputs: int = 500) -> CriterionResult:
    def body():
        for n in range(2, 41):
            _check(normal_form(relation(n).expression).is_zero(), f"nf(r_{n}) != 0")
        rng = random.Random(2024)
        for i in range(n_inputs):
            p = _random_tpoly(rng, rng.randint(0, 30), Basis.CHEBYSHEV)
            q = _random_tpoly(rng, rng.randint(0, 30), Basis.CHEBYSHEV)
            a, b = _random_laurent(rng), _random_laurent(rng)
            np_, nq = normal_form(p), normal_form(q)
            _check(np_.check_windows(), f"input {i}: residue outside its window")
            _check(normal_form(np_.lift()) == np_, f"input {i}: not idempotent")
            lhs = normal_form(p.scale(a) + q.scale(b))
            rhs = normal_form(np_.lift().scale(a) + nq.lift().scale(b))
            _check(lhs == rhs, f"input {i}: not linear")
            order = [n for n in p.coeffs if n >= 2]
            rng.shuffle(order)
            _check(reduce_in_order(p, order, rng.randint(1, 3)) == np_, f"input {i}: order dependent")
            # adding a multiple of a relation must not change the normal form
            n = rng.randint(2, 40)
            shifted = p + relation(n).expression.scale(_random_laurent(rng))
            _check(normal_form(shifted) == np_, f"input {i}: relation multiple changed nf")
        return f"{n_inputs} random inputs; nf(r_n) = 0 for n <= 40"

    return _run(7, "normal-form properties", body)


# -- 8 ---------------------------------------------------------------------------


def criterion_8() -> CriterionResult:
    def body():
        for k in range(1, 13):
            lhs = LaurentPoly({0: 1, 2 * k: -1})
            rhs = LaurentPoly({k: -1}) * LaurentPoly({k: 1, -k: -1})
            _check(lhs == rhs, f"identity fails at k={k}")
        s1s2 = manifold_catalog()[0]
        _check([r.k for r in s1s2.torsion] == list(range(2, 13)), "catalog does not cover k = 2..12")
        for r in s1s2.torsion:
            _check(r.identity_verified, f"catalog identity flag false at k={r.k}")
            _check(r.marche_type == r.k, f"k={r.k} typed as {r.marche_type}")
        return "k <= 12"

    return _run(8, "positive control on S^1 x S^2", body)


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8)


def run_all() -> list[CriterionResult]:
    return [c() for c in CRITERIA]
