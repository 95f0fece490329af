"""Field headers and finitely presented representations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith.fp import check_prime
from .arith.laurent import DEFAULT_PREC, LaurentSeries
from .arith.numberfield import NumberField, format_poly
from .arith.ratfunc import RationalFunction
from .matrix import Matrix2, evaluate_word, free_reduce
from .errors import UnknownGenerator


@dataclass(frozen=True)
class LaurentSpec:
    p: int
    prec: int = DEFAULT_PREC
    mode = "laurent"
    var = "t"

    def __post_init__(self):
        check_prime(self.p)

    def gen(self):
        return LaurentSeries.monomial(self.p, 1)

    def const(self, c: int):
        return LaurentSeries.constant(self.p, c)

    def variables(self) -> dict:
        return {"t": self.gen()}

    def header(self) -> str:
        return f"field laurent p={self.p} prec={self.prec}"


@dataclass(frozen=True)
class RatFuncSpec:
    p: int
    var: str = "y"
    mode = "ratfunc"

    def __post_init__(self):
        check_prime(self.p)

    def gen(self):
        return RationalFunction.gen(self.p, self.var)

    def const(self, c: int):
        return RationalFunction.constant(self.p, c, self.var)

    def variables(self) -> dict:
        return {self.var: self.gen()}

    def header(self) -> str:
        return f"field ratfunc p={self.p} var={self.var}"


@dataclass(frozen=True)
class NumberSpec:
    minpoly: tuple[int, ...]
    mode = "number"
    var = "x"

    @property
    def field(self) -> NumberField:
        return NumberField(self.minpoly)

    def gen(self):
        return self.field.gen

    def const(self, c):
        return self.field(Fraction(c))

    def variables(self) -> dict:
        return {"x": self.gen()}

    def header(self) -> str:
        return f"field number minpoly={format_poly(self.minpoly).replace(' ', '')}"


@dataclass(frozen=True)
class CMSpec:
    """CM field F(s), s^2 = delta, F = Q[x]/(real_minpoly); delta given by its coordinates in F."""

    real_minpoly: tuple[int, ...]
    delta: tuple[Fraction, ...]
    mode = "cm"
    var = "x"

    @property
    def field(self):
        from .hodgesign import CMField

        return _cm_field(self.real_minpoly, self.delta, CMField)

    def gen(self):
        return self.field.x

    def const(self, c):
        return self.field(Fraction(c))

    def variables(self) -> dict:
        return {"x": self.field.x, "s": self.field.s}

    def header(self) -> str:
        return self.field.header()


_CM_CACHE: dict = {}


def _cm_field(real, delta, cls):
    key = (real, delta)
    if key not in _CM_CACHE:
        _CM_CACHE[key] = cls(real, list(delta))
    return _CM_CACHE[key]


@dataclass
class RepPresentation:
    """Generators (single lower-case letters) mapped to SL(2) matrices, plus puncture loops."""

    spec: object
    generators: dict[str, Matrix2]
    punctures: list[str] = field(default_factory=list)
    relators: list[str] = field(default_factory=list)

    def __post_init__(self):
        for w in list(self.punctures) + list(self.relators):
            for ch in w:
                if ch != "1" and ch.lower() not in self.generators:
                    raise UnknownGenerator(ch.lower())

    @property
    def mode(self) -> str:
        return self.spec.mode

    def one(self) -> Matrix2:
        return Matrix2.identity_like(self.spec.const(0))

    def evaluate(self, word: str) -> Matrix2:
        return evaluate_word(self.generators, free_reduce(word), self.one())

    def trace_of_word(self, word: str):
        return self.evaluate(word).trace()
