import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbsm.certificates import verify_certificate
from kbsm.chebyshev import Basis, TPoly, to_monomial
from kbsm.ideals import Status
from kbsm.laurent import ONE, ZERO, A, LaurentPoly, RationalFunction, divide_exact, poly_gcd
from kbsm.modpres import (
    SkeinElement,
    balanced,
    is_zero,
    manifold_catalog,
    marche_type_check,
    normal_form,
    rank_over_QA,
    reduce_in_order,
    relation,
    split_obstruction,
    torsion_witness,
)
from strategies import laurent, tpoly


def test_relation_2():
    r = relation(2)
    assert r.c == A**3 + A**-3
    assert r.d == A**3 + 2 * A + 2 * A**-1 + A**-3
    assert str(r.expression) == "(A^3 + A^-3)*S_2 + (-A^3 - 2A - 2A^-1 - A^-3)*S_0"


def test_relation_3():
    r = relation(3)
    assert (r.c, r.d) == (A**4 + A**-4, A**4 + 2 + A**-4)
    assert r.eps == 1


@pytest.mark.parametrize("n", [-1, 0, 1])
def test_relation_range(n):
    with pytest.raises(ValueError):
        relation(n)


@pytest.mark.parametrize("n", range(2, 41))
def test_relations_reduce_to_zero(n):
    assert is_zero(relation(n).expression)
    assert is_zero(to_monomial(relation(n).expression))


@pytest.mark.parametrize("n", range(2, 25))
def test_even_torsion_odd_depends(n):
    r = relation(n)
    g = poly_gcd(r.c, r.d)
    w = torsion_witness(n)
    if n % 2 == 0:
        # A + A^-1 divides both c_n and d_n, hence the annihilator
        assert w is not None
        divide_exact(w.annihilator, A + A**-1)
    assert (w is None) == g.is_unit()
    if w is not None:
        assert w.verify() and verify_certificate(w.to_dict())


def test_torsion_witness_2():
    w = torsion_witness(2)
    assert w.annihilator == A + A**-1
    assert w.element == TPoly({2: A**2 - 1 + A**-2, 0: -(A**2 + 1 + A**-2)}, Basis.CHEBYSHEV)
    assert not normal_form(w.element).is_zero()
    assert normal_form(w.element.scale(A + A**-1)).is_zero()
    # a non-multiple of the annihilator does not kill it
    assert not normal_form(w.element.scale(A + 2)).is_zero()


def test_forged_torsion_certificate_fails():
    w = torsion_witness(2)
    data = w.to_dict()
    data["annihilator"] = "A + 2"
    assert not verify_certificate(data)
    data["annihilator"] = "A"
    assert not verify_certificate(data)


@pytest.mark.parametrize("n", range(2, 9))
def test_split_obstruction(n):
    v = split_obstruction(n)
    assert v.verify()
    assert v.status is Status.NON_PRINCIPAL
    assert verify_certificate(v.to_dict())


def test_split_obstruction_certificates_low_n():
    for n in (2, 3):
        v = split_obstruction(n)
        assert v.certificate.prime == 2
    assert split_obstruction(2).ideal.generators == (A**2 - 1 + A**-2, A**2 + 1 + A**-2)


@settings(max_examples=80, deadline=None)
@given(tpoly(max_degree=20), laurent(max_terms=3), st.integers(2, 25))
def test_normal_form_properties(p, u, n):
    nf = normal_form(p)
    assert nf.check_windows()
    assert normal_form(nf.lift()) == nf
    assert normal_form(p + relation(n).expression.scale(u).in_basis(p.basis)) == nf
    order = sorted((k for k in range(2, 21)), reverse=(n % 2 == 0))
    assert reduce_in_order(p, order, 1 + n % 3) == nf


@settings(max_examples=60, deadline=None)
@given(tpoly(max_degree=15, basis=Basis.CHEBYSHEV), tpoly(max_degree=15, basis=Basis.CHEBYSHEV), laurent(max_terms=2), laurent(max_terms=2))
def test_normal_form_linear(p, q, a, b):
    lhs = normal_form(p.scale(a) + q.scale(b))
    rhs = normal_form(normal_form(p).lift().scale(a) + normal_form(q).lift().scale(b))
    assert lhs == rhs


def test_normal_form_monomial_input():
    nf = normal_form(TPoly({2: A**3 + A**-3}))
    # (A^3 + A^-3) t^2 = c_2 (S_2 + S_0) = d_2 S_0 + c_2 S_0
    assert nf.a0 == relation(2).d + relation(2).c and not nf.residues


def test_rank():
    rep = rank_over_QA()
    assert rep.rank == 4 and rep.verified()
    assert rep.entries[0].ratio == RationalFunction(A**2 + 1 + A**-2, A**2 - 1 + A**-2)
    assert len(rank_over_QA(5).entries) == 4


def test_marche_type_check():
    assert marche_type_check(A + A**-1) == 2
    assert marche_type_check(A - A**-1) == 1
    assert marche_type_check(A**2 + 1) == 2
    assert marche_type_check(LaurentPoly(2)) is None
    assert marche_type_check(A**3 + A**-3) == 6
    assert marche_type_check((A - A**-1) ** 3) == 1
    assert marche_type_check((A - A**-1) ** 5) is None
    assert marche_type_check(A**2 - 1 + A**-2) == 6
    assert marche_type_check(A**10 + 1, k_bound=8) is None
    with pytest.raises(ValueError):
        marche_type_check(ZERO)


def test_catalog():
    s1s2, *others = manifold_catalog()
    assert s1s2.d == 1
    assert [r.k for r in s1s2.torsion] == list(range(2, 13))
    assert all(r.identity_verified and r.marche_type == r.k for r in s1s2.torsion)
    assert [p.d for p in others] == [35, 133, 519]
    assert manifold_catalog(genera=(2,))[1].to_dict()["d"] == 35


def test_balanced():
    assert balanced(A**2 + 1) == A + A**-1
    assert balanced(-(A**5) - A**3) == A + A**-1
    assert balanced(ONE) == ONE


def test_skein_element():
    w = torsion_witness(2)
    e = SkeinElement(A, ZERO, w.element)
    assert not e.is_zero()
    killed = e.scale(A + A**-1)
    assert not killed.is_zero()  # the free part survives
    assert normal_form(killed.quotient).is_zero()
    assert (e + e.scale(LaurentPoly(-1))).is_zero()
