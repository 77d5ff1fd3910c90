"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from kbsm.chebyshev import Basis, TPoly
from kbsm.laurent import LaurentPoly

small_ints = st.integers(-6, 6)


@st.composite
def laurent(draw, span: int = 8, max_terms: int = 5, coeff: int = 9):
    terms = draw(st.dictionaries(st.integers(-span, span), st.integers(-coeff, coeff), max_size=max_terms))
    return LaurentPoly(terms)


@st.composite
def nonzero_laurent(draw, **kw):
    p = draw(laurent(**kw))
    return p if p else LaurentPoly({draw(st.integers(-4, 4)): draw(st.sampled_from([1, -1, 2, 3]))})


@st.composite
def tpoly(draw, max_degree: int = 12, basis=None):
    if basis is None:
        basis = draw(st.sampled_from(list(Basis)))
    coeffs = draw(st.dictionaries(st.integers(0, max_degree), laurent(max_terms=3), max_size=5))
    return TPoly(coeffs, basis)
