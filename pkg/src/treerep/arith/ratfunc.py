"""Rational functions over F_p and their expansions at places of P^1."""

from __future__ import annotations

from dataclasses import dataclass

from . import fp as P
from .laurent import DEFAULT_PREC, LaurentSeries


@dataclass(frozen=True)
class Finite:
    """The place y = c."""

    c: int


@dataclass(frozen=True)
class Infinity:
    pass


INFINITY = Infinity()


class RationalFunction:
    """num/den in F_p(var), kept reduced with a monic denominator."""

    __slots__ = ("p", "var", "num", "den")

    def __init__(self, p, num, den=(1,), var="y"):
        P.check_prime(p)
        num = P.trim([c % p for c in num])
        den = P.trim([c % p for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = P.pgcd(num, den, p) if num else list(den)
        if len(g) > 1:
            num = P.pdivmod(num, g, p)[0]
            den = P.pdivmod(den, g, p)[0]
        if not num:
            den = [1]
        lead = pow(den[-1], -1, p)
        self.p = p
        self.var = var
        self.num = tuple(P.pscale(num, lead, p))
        self.den = tuple(P.pscale(den, lead, p))

    @classmethod
    def gen(cls, p, var="y"):
        return cls(p, [0, 1], [1], var)

    @classmethod
    def constant(cls, p, c, var="y"):
        return cls(p, [c], [1], var)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.p != self.p or other.var != self.var:
                raise ValueError("incompatible rational function fields")
            return other
        if isinstance(other, int):
            return RationalFunction.constant(self.p, other, self.var)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        num = P.padd(P.pmul(self.num, o.den, p), P.pmul(o.num, self.den, p), p)
        return RationalFunction(p, num, P.pmul(self.den, o.den, p), self.var)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.p, [-c for c in self.num], self.den, self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        return RationalFunction(p, P.pmul(self.num, o.num, p), P.pmul(self.den, o.den, p), self.var)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.p, self.den, self.num, self.var)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunction.constant(self.p, 1, self.var)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self):
        return not self.num

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def __eq__(self, other):
        if isinstance(other, int):
            other = RationalFunction.constant(self.p, other, self.var)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.p, self.var, self.num, self.den) == (other.p, other.var, other.num, other.den)

    def __hash__(self):
        return hash((self.p, self.var, self.num, self.den))

    def __str__(self):
        n = format_fp_poly(self.num, self.var)
        if self.den == (1,):
            return n
        return f"({n})/({format_fp_poly(self.den, self.var)})"

    def __repr__(self):
        return f"RationalFunction(p={self.p}, {self})"


def format_fp_poly(c, var):
    parts = []
    for e, a in enumerate(c):
        if not a:
            continue
        if e == 0:
            parts.append(str(a))
        else:
            power = var if e == 1 else f"{var}^{e}"
            parts.append(power if a == 1 else f"{a}*{power}")
    return " + ".join(parts) if parts else "0"


def _poly_to_series(poly, p, prec):
    return LaurentSeries(p, 0, poly, prec)


def expand_at_place(r: RationalFunction, place, prec: int = DEFAULT_PREC) -> LaurentSeries:
    """Laurent expansion of r in the local parameter t at ``place``.

    Finite(c) substitutes y = c + t; INFINITY substitutes y = 1/t.  The result
    is known to absolute precision ``prec`` and its valuation is the exact
    order of r at the place.
    """
    p = r.p
    if isinstance(place, Finite):
        num = P.ptaylor_shift(list(r.num), place.c % p, p)
        den = P.ptaylor_shift(list(r.den), place.c % p, p)
        shift = 0
    elif isinstance(place, Infinity):
        # f(1/t) = t^{-deg f} * rev(f)(t)
        num = list(reversed(r.num))
        den = list(reversed(r.den))
        shift = (len(r.den) - 1) - (len(r.num) - 1)
    else:
        raise TypeError(f"unknown place {place!r}")
    n = LaurentSeries(p, 0, num)
    d = LaurentSeries(p, 0, den)
    if n.is_exact_zero():
        return LaurentSeries.zero(p)
    order = n.valuation() - d.valuation() + shift
    # relative precision needed so the quotient is known up to t^prec
    rel = max(1, prec - order)
    q = n * d.inverse(rel_prec=rel)
    return q.shift(shift).truncate(prec)
