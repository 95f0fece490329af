"""Truncated Laurent series over a prime field, F_p((t)).

A series is stored as ``t^val * (c_0 + c_1 t + ...)`` with ``c_0 != 0`` and an
absolute precision ``prec``: the value is known modulo ``t^prec``.  Exact
elements (Laurent polynomials) carry ``prec = inf``.  Precision is tracked
pessimistically through every operation.

A series whose known coefficients all vanish but whose precision is finite is
an *indeterminate zero*: asking for its valuation raises PrecisionExhausted.
"""

from __future__ import annotations

import math
import random
from typing import Iterable

from ..errors import PrecisionExhausted
from .fp import check_prime

INF = math.inf
DEFAULT_PREC = 64


def _strip(val, coeffs, prec):
    """Normalize (val, coeffs) so the leading coefficient is nonzero."""
    i = 0
    n = len(coeffs)
    while i < n and coeffs[i] == 0:
        i += 1
    coeffs = coeffs[i:]
    val += i
    if prec != INF and val + len(coeffs) > prec:
        coeffs = coeffs[: max(0, prec - val)]
    j = len(coeffs)
    while j and coeffs[j - 1] == 0:
        j -= 1
    coeffs = tuple(coeffs[:j])
    if not coeffs:
        return (INF if prec == INF else prec), ()
    return val, coeffs


class LaurentSeries:
    __slots__ = ("p", "val", "coeffs", "prec")

    def __init__(self, p: int, val, coeffs: Iterable[int], prec=INF, *, _raw=False):
        if _raw:
            self.p, self.val, self.coeffs, self.prec = p, val, coeffs, prec
            return
        check_prime(p)
        coeffs = [int(c) % p for c in coeffs]
        if prec != INF:
            prec = int(prec)
        if not coeffs:
            val = 0 if val == INF else val
        self.p = p
        self.prec = prec
        self.val, self.coeffs = _strip(int(val) if val != INF else 0, coeffs, prec)

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, p, prec=INF):
        return cls(p, 0, (), prec)

    @classmethod
    def constant(cls, p, c, prec=INF):
        return cls(p, 0, (c,), prec)

    @classmethod
    def monomial(cls, p, exponent, c=1, prec=INF):
        return cls(p, exponent, (c,), prec)

    @classmethod
    def from_dict(cls, p, terms: dict[int, int], prec=INF):
        terms = {e: c % p for e, c in terms.items() if c % p}
        if not terms:
            return cls.zero(p, prec)
        lo, hi = min(terms), max(terms)
        return cls(p, lo, [terms.get(e, 0) for e in range(lo, hi + 1)], prec)

    @classmethod
    def random(cls, rng: random.Random, p, low, high, prec=INF):
        return cls(p, low, [rng.randrange(p) for _ in range(high - low + 1)], prec)

    # -- basic queries ---------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.prec == INF

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.prec == INF

    def known_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def valuation(self):
        if self.coeffs:
            return self.val
        if self.prec == INF:
            return INF
        raise PrecisionExhausted(f"all coefficients below t^{self.prec} vanish")

    def valuation_lower_bound(self):
        """Certified lower bound: the valuation itself, or prec for indeterminate zeros."""
        return self.val if self.coeffs else self.prec

    def coefficient(self, k: int) -> int:
        if self.prec != INF and k >= self.prec:
            raise PrecisionExhausted(f"coefficient of t^{k} beyond precision {self.prec}")
        i = k - self.val
        if self.coeffs and 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def degree(self):
        """Largest exponent with a nonzero known coefficient."""
        if not self.coeffs:
            return -INF
        return self.val + len(self.coeffs) - 1

    def terms(self) -> dict[int, int]:
        return {self.val + i: c for i, c in enumerate(self.coeffs) if c}

    def truncate(self, prec) -> LaurentSeries:
        """Forget everything from t^prec on."""
        prec = min(prec, self.prec)
        return LaurentSeries(self.p, self.val, self.coeffs, prec)

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by t^k."""
        if not self.coeffs:
            return LaurentSeries(self.p, 0, (), self.prec + k if self.prec != INF else INF)
        prec = self.prec + k if self.prec != INF else INF
        return LaurentSeries(self.p, self.val + k, self.coeffs, prec, _raw=True)

    def is_constant(self) -> bool:
        """Certified membership in F_p: no nonzero coefficient away from t^0 and exact enough."""
        if self.prec != INF:
            return False
        return not self.coeffs or (self.val == 0 and len(self.coeffs) == 1)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other
        if isinstance(other, int):
            return LaurentSeries.constant(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        prec = min(self.prec, o.prec)
        if not o.coeffs:
            return self if prec == self.prec else self.truncate(prec)
        if not self.coeffs:
            return o if prec == o.prec else o.truncate(prec)
        lo = min(self.val, o.val)
        hi = max(self.val + len(self.coeffs), o.val + len(o.coeffs))
        if prec != INF:
            hi = min(hi, prec)
        if hi <= lo:
            return LaurentSeries(p, 0, (), prec)
        out = [0] * (hi - lo)
        off = self.val - lo
        for i, c in enumerate(self.coeffs):
            if off + i < hi - lo:
                out[off + i] = c
        off = o.val - lo
        for i, c in enumerate(o.coeffs):
            if off + i < hi - lo:
                out[off + i] = (out[off + i] + c) % p
        val, coeffs = _strip(lo, out, prec)
        return LaurentSeries(p, val, coeffs, prec, _raw=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return LaurentSeries(p, self.val, tuple((-c) % p for c in self.coeffs), self.prec, _raw=True)

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
        if self.is_exact_zero() or o.is_exact_zero():
            return LaurentSeries.zero(p)
        vx, vy = self.valuation_lower_bound(), o.valuation_lower_bound()
        prec = min(self.prec + vy, o.prec + vx)
        if not self.coeffs or not o.coeffs:
            return LaurentSeries(p, 0, (), prec)
        val = vx + vy
        n = len(self.coeffs) + len(o.coeffs) - 1
        if prec != INF:
            n = min(n, prec - val)
        if n <= 0:
            return LaurentSeries(p, 0, (), prec)
        out = [0] * n
        b = o.coeffs
        for i, x in enumerate(self.coeffs):
            if i >= n:
                break
            lim = min(len(b), n - i)
            for j in range(lim):
                out[i + j] += x * b[j]
        v, coeffs = _strip(val, [c % p for c in out], prec)
        return LaurentSeries(p, v, coeffs, prec, _raw=True)

    __rmul__ = __mul__

    def inverse(self, rel_prec: int | None = None) -> LaurentSeries:
        """Multiplicative inverse.

        Exact monomials invert exactly; otherwise the unit part is inverted to
        the element's relative precision (``rel_prec`` or DEFAULT_PREC for
        exact inputs).
        """
        p = self.p
        if not self.coeffs:
            if self.prec == INF:
                raise ZeroDivisionError("inverse of exact zero")
            raise PrecisionExhausted("inverse of an indeterminate zero")
        v = self.val
        if self.prec == INF and len(self.coeffs) == 1:
            return LaurentSeries(p, -v, (pow(self.coeffs[0], -1, p),), INF, _raw=True)
        r = self.prec - v if self.prec != INF else (rel_prec or DEFAULT_PREC)
        if rel_prec is not None:
            r = min(r, rel_prec)
        u = self.coeffs
        inv0 = pow(u[0], -1, p)
        out = [0] * r
        out[0] = inv0
        for k in range(1, r):
            s = 0
            for j in range(1, min(k, len(u) - 1) + 1):
                s += u[j] * out[k - j]
            out[k] = (-s * inv0) % p
        return LaurentSeries(p, -v, out, -v + r)

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
        result = LaurentSeries.constant(self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentSeries.constant(self.p, other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.p, self.val, self.coeffs, self.prec) == (other.p, other.val, other.coeffs, other.prec)

    def __hash__(self):
        return hash((self.p, self.val, self.coeffs, self.prec))

    def agrees_with(self, other, prec=None) -> bool:
        """Equality modulo t^prec (default: the shared precision)."""
        d = self - other
        bound = d.prec if prec is None else min(prec, d.prec)
        return not d.coeffs or d.val >= bound

    # -- display ---------------------------------------------------------
    def __str__(self):
        parts = []
        for e, c in sorted(self.terms().items()):
            if e == 0:
                mono = f"{c}"
            else:
                power = "t" if e == 1 else f"t^{e}"
                mono = power if c == 1 else f"{c}*{power}"
            parts.append(mono)
        if self.prec != INF:
            parts.append(f"O(t^{self.prec})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"LaurentSeries(p={self.p}, {self})"


def ls_invert(x: LaurentSeries) -> LaurentSeries:
    return x.inverse()


def valuation(x: LaurentSeries):
    return x.valuation()
