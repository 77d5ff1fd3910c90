import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbsm.ideals import (
    IdealTwoGen,
    ProperCertificate,
    Status,
    gcd,
    membership_bounded,
    principality_verdict,
    properness_certificate,
    solve_integer,
)
from kbsm.laurent import ONE, ZERO, A, LaurentPoly
from strategies import laurent, nonzero_laurent


@given(nonzero_laurent(max_terms=4), laurent(max_terms=4))
def test_gcd_cofactors(p, q):
    res = gcd(p, q)
    assert res.verify(p, q)
    assert res.cofactor1 * res.gcd == p and res.cofactor2 * res.gcd == q


def test_ideal_rejects_zero_pair():
    with pytest.raises(ValueError):
        IdealTwoGen(ZERO, ZERO)


def test_certificate_for_n2_ideal():
    ideal = IdealTwoGen(A**2 - 1 + A**-2, A**2 + 1 + A**-2)
    cert = properness_certificate(ideal)
    assert cert is not None and cert.prime == 2 and cert.verify()
    assert cert.factor == A**4 + A**2 + 1


def test_certificate_none_for_unit_ideal():
    assert properness_certificate(IdealTwoGen(A + 1, A)) is None
    assert properness_certificate(IdealTwoGen(A**2 + 1, A**2 + 2)) is None
    # (2, A^2 + A + 1) is proper: mod 2 both are multiples of A^2 + A + 1
    assert properness_certificate(IdealTwoGen(2, A**2 + A + 1)).prime == 2


def test_certificate_inside_prime_ideal():
    cert = properness_certificate(IdealTwoGen(LaurentPoly(2), 4 * A))
    assert cert.prime == 2 and cert.factor is None and cert.verify()


def test_tampered_certificate_fails():
    ideal = IdealTwoGen(A**2 - 1 + A**-2, A**2 + 1 + A**-2)
    cert = properness_certificate(ideal)
    forged = ProperCertificate(ideal, cert.prime, A + 1, cert.cofactor1, cert.cofactor2)
    assert not forged.verify()
    unit = ProperCertificate(ideal, 2, A**3, ZERO, ZERO)
    assert not unit.verify()


def brute_force_solve(matrix, rhs, bound=3):
    cols = len(matrix[0]) if matrix else 0
    for x in itertools.product(range(-bound, bound + 1), repeat=cols):
        if all(sum(a * b for a, b in zip(row, x)) == r for row, r in zip(matrix, rhs)):
            return x
    return None


@settings(max_examples=60)
@given(
    st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=3),
    st.lists(st.integers(-2, 2), min_size=3, max_size=3),
)
def test_solve_integer_against_brute_force(matrix, x0):
    rhs = [sum(a * b for a, b in zip(row, x0)) for row in matrix]
    x = solve_integer(matrix, rhs)
    assert x is not None
    assert [sum(a * b for a, b in zip(row, x)) for row in matrix] == rhs


def test_solve_integer_detects_no_solution():
    assert solve_integer([[2, 4]], [1]) is None
    assert brute_force_solve([[2, 4]], [1]) is None
    assert solve_integer([[1, 1], [1, 1]], [0, 1]) is None


def test_membership():
    ideal = IdealTwoGen(A**2 - 1 + A**-2, A**2 + 1 + A**-2)
    a, b = membership_bounded(LaurentPoly(2), ideal, 0)
    assert a * ideal.g1 + b * ideal.g2 == 2
    assert membership_bounded(ONE, IdealTwoGen(LaurentPoly(2), A**2 - 1 + A**-2)) is None


@settings(max_examples=40, deadline=None)
@given(laurent(span=3, max_terms=3, coeff=3), laurent(span=3, max_terms=3, coeff=3))
def test_membership_finds_combinations(a, b):
    ideal = IdealTwoGen(A**2 - 1 + A**-2, A**3 + A**-3)
    target = a * ideal.g1 + b * ideal.g2
    found = membership_bounded(target, ideal)
    assert found is not None
    u, v = found
    assert u * ideal.g1 + v * ideal.g2 == target


def test_verdicts():
    v = principality_verdict(IdealTwoGen(A**2 - 1 + A**-2, A**2 + 1 + A**-2))
    assert v.status is Status.NON_PRINCIPAL and v.verify() and v.generator is None

    v = principality_verdict(IdealTwoGen(A + A**-1, (A + A**-1) * (A**2 + 3)))
    assert v.status is Status.PRINCIPAL and v.verify()
    assert v.generator == A**2 + 1

    v = principality_verdict(IdealTwoGen(A**4 + A**-4, A**4 + 2 + A**-4))
    assert v.status is Status.NON_PRINCIPAL and v.certificate.factor == A**8 + 1

    # common factor times a non-principal ideal is still non-principal
    h = A + 3
    v = principality_verdict(IdealTwoGen(h * (A**2 - 1 + A**-2), h * (A**2 + 1 + A**-2)))
    assert v.status is Status.NON_PRINCIPAL and v.verify()


def test_verdict_round_trips_through_dict():
    v = principality_verdict(IdealTwoGen(A + A**-1, (A + A**-1) * (A**2 + 3)))
    d = v.to_dict()
    assert d["status"] == "Principal" and d["gcd"] == "A^2 + 1"
