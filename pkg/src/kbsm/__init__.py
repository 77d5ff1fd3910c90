"""Kauffman bracket skein module computations for RP^3 # RP^3."""

from .chebyshev import Basis, BasisError, TPoly, chebyshev_S, to_chebyshev, to_monomial
from .grammar import ParseError, parse, parse_laurent, parse_poly
from .ideals import IdealTwoGen, PrincipalityVerdict, Status, principality_verdict
from .laurent import ONE, ZERO, A, LaurentPoly, NotDivisible, RationalFunction, poly_gcd
from .modpres import (
    NormalForm,
    normal_form,
    rank_over_QA,
    relation,
    split_obstruction,
    torsion_witness,
)

__version__ = "0.1.0"

__all__ = [
    "A",
    "Basis",
    "BasisError",
    "TPoly",
    "chebyshev_S",
    "to_chebyshev",
    "to_monomial",
    "ParseError",
    "parse",
    "parse_laurent",
    "parse_poly",
    "IdealTwoGen",
    "PrincipalityVerdict",
    "Status",
    "principality_verdict",
    "ONE",
    "ZERO",
    "LaurentPoly",
    "NotDivisible",
    "RationalFunction",
    "poly_gcd",
    "NormalForm",
    "normal_form",
    "rank_over_QA",
    "relation",
    "split_obstruction",
    "torsion_witness",
]
