"""Exact arithmetic kernels."""

from fractions import Fraction

from .fp import Fp, is_prime
from .laurent import DEFAULT_PREC, INF, LaurentSeries, ls_invert, valuation
from .numberfield import (
    NumberField,
    NumberFieldElem,
    cyclotomic_field,
    cyclotomic_polynomial,
    cyclotomic_trace,
    is_algebraic_integer,
    minimal_polynomial,
    real_cyclotomic_polynomial,
    root_of_unity,
    transport,
)
from .ratfunc import INFINITY, Finite, Infinity, RationalFunction, expand_at_place

BigRational = Fraction
