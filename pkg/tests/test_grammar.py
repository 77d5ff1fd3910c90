import pytest
from hypothesis import given

from kbsm.chebyshev import Basis, T, TPoly, to_monomial
from kbsm.grammar import ParseError, parse, parse_laurent, parse_poly
from kbsm.laurent import A
from kbsm.modpres import relation
from strategies import laurent, tpoly


@given(tpoly(max_degree=20))
def test_print_parse_round_trip(p):
    assert parse(str(p)).same_value(p)


@given(tpoly(max_degree=20, basis=Basis.CHEBYSHEV))
def test_chebyshev_round_trip_keeps_basis(p):
    assert parse(str(p)) == p


@given(tpoly(max_degree=20))
def test_parse_print_is_identity(p):
    assert parse_poly(str(p)) == p


@given(laurent())
def test_laurent_round_trip(p):
    assert parse_laurent(str(p)) == p


def test_examples():
    assert parse("(A^3+A^-3)*(t^2-2) - 2A - 2A^-1") == relation(2).monomial()
    s = parse("S_2 + S_0")
    assert s.basis is Basis.CHEBYSHEV and to_monomial(s) == T * T
    assert parse("2A^3") == TPoly({0: 2 * A**3})
    assert parse("A^(-2) t") == TPoly({1: A**-2})
    assert parse("  - ( A + 1 ) ^ 2 ") == TPoly({0: -((A + 1) * (A + 1))})
    assert parse("t S_1").basis is Basis.MONOMIAL


@pytest.mark.parametrize(
    "text,line,col",
    [("t^", 1, 3), ("A +* t", 1, 4), ("x", 1, 1), ("(A", 1, 3), ("1\n + @", 2, 4), ("", 1, 1), ("S_", 1, 1)],
)
def test_errors_report_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert f"column {col}" in str(info.value)


def test_negative_power_needs_unit():
    assert parse("(-A)^-1") == TPoly({0: -(A**-1)})
    with pytest.raises(ParseError):
        parse("(A + 1)^-1")


def test_parse_laurent_rejects_t():
    with pytest.raises(ValueError):
        parse_laurent("A t")
