"""Number fields Q[x]/(f) with exact arithmetic.

Elements are stored as integer numerators over a common positive denominator,
coordinates taken in the power basis 1, x, ..., x^(d-1).
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Sequence

from . import fp as P

MAX_DEGREE = 24
_CHECK_PRIMES = [q for q in range(3, 200) if P.is_prime(q)]


def _lcm(a, b):
    return a * b // math.gcd(a, b)


# --- rational polynomials (tuples of Fraction, lowest degree first) --------

def rpoly(coeffs) -> tuple[Fraction, ...]:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def rpoly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return rpoly(out)


def rpoly_divmod(a, b):
    a = list(a)
    b = list(b)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] -= c * y
        while a and a[-1] == 0:
            a.pop()
    return rpoly(q), rpoly(a)


def rpoly_eval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def format_poly(coeffs, var="x") -> str:
    """Render a rational polynomial in the repcli expression syntax."""
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[e])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            mono = str(a)
        else:
            power = var if e == 1 else f"{var}^{e}"
            mono = power if a == 1 else f"{a}*{power}"
        parts.append((sign, mono))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        out += f" {sign} {mono}"
    return out


# --- irreducibility -------------------------------------------------------

def _rational_root_candidates(f):
    a0 = abs(f[0])
    if a0 == 0:
        return [0]
    divs = [d for d in range(1, min(a0, 10**6) + 1) if a0 % d == 0] if a0 <= 10**6 else [1]
    return [s * d for d in divs for s in (1, -1)]


@functools.lru_cache(maxsize=None)
def is_irreducible_over_q(f: tuple[int, ...]) -> bool:
    """Irreducibility of a monic integer polynomial over Q.

    Fast paths: a rational root rules irreducibility out; irreducibility modulo
    a good prime certifies it.  Otherwise fall back to exact factorization.
    """
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if any(rpoly_eval(f, r) == 0 for r in _rational_root_candidates(f)):
        return False
    for q in _CHECK_PRIMES:
        if P.is_irreducible_mod_p(list(f), q):
            return True
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(f)), x, domain="ZZ").is_irreducible


# --- fields and elements --------------------------------------------------

class NumberField:
    """Q[x]/(f) for a monic irreducible integer polynomial f (lowest degree first)."""

    _cache: dict = {}

    def __new__(cls, minpoly: Sequence[int]):
        f = tuple(int(c) for c in minpoly)
        if f in cls._cache:
            return cls._cache[f]
        if len(f) < 2 or f[-1] != 1:
            raise ValueError("field polynomial must be monic of degree >= 1")
        if len(f) - 1 > MAX_DEGREE:
            raise ValueError(f"degree {len(f) - 1} exceeds the cap of {MAX_DEGREE}")
        if any(Fraction(c).denominator != 1 for c in minpoly):
            raise ValueError("field polynomial must have integer coefficients")
        if not is_irreducible_over_q(f):
            raise ValueError(f"{format_poly(f)} is reducible over Q")
        self = super().__new__(cls)
        self.minpoly = f
        self.degree = len(f) - 1
        self._reduce_table = self._build_reduce_table()
        cls._cache[f] = self
        return self

    def __getnewargs__(self):
        return (self.minpoly,)

    def _build_reduce_table(self):
        # x^(d+k) expressed in the power basis, integer coefficients since f is monic
        d = self.degree
        f = self.minpoly
        table = []
        cur = [-c for c in f[:-1]]  # x^d
        for _ in range(d - 1):
            table.append(tuple(cur))
            lead = cur[-1]
            cur = [0] + cur[:-1]
            for i in range(d):
                cur[i] -= lead * f[i]
        table.append(tuple(cur))
        return table

    @property
    def gen(self) -> NumberFieldElem:
        if self.degree == 1:
            return NumberFieldElem(self, (-self.minpoly[0],), 1)
        return NumberFieldElem(self, tuple(1 if i == 1 else 0 for i in range(self.degree)), 1)

    def __call__(self, value) -> NumberFieldElem:
        if isinstance(value, NumberFieldElem):
            if value.field is not self:
                raise ValueError("element of a different field")
            return value
        if isinstance(value, (int, Fraction)):
            q = Fraction(value)
            return NumberFieldElem(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)
        if isinstance(value, (list, tuple)):
            return self.from_coords(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def from_coords(self, coords) -> NumberFieldElem:
        """Element from (possibly longer) rational coefficient list in x."""
        coords = [Fraction(c) for c in coords]
        den = 1
        for c in coords:
            den = _lcm(den, c.denominator)
        nums = [int(c * den) for c in coords]
        return NumberFieldElem.from_long(self, nums, den)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def __repr__(self):
        return f"NumberField({format_poly(self.minpoly)})"


class NumberFieldElem:
    __slots__ = ("field", "nums", "den")

    def __init__(self, field: NumberField, nums, den=1, *, _normalized=False):
        self.field = field
        if _normalized:
            self.nums, self.den = nums, den
            return
        if den < 0:
            nums, den = tuple(-n for n in nums), -den
        g = den
        for n in nums:
            g = math.gcd(g, n)
            if g == 1:
                break
        if g > 1:
            nums = tuple(n // g for n in nums)
            den //= g
        self.nums = tuple(nums)
        self.den = den

    @classmethod
    def from_long(cls, field, nums, den):
        """Reduce an integer coefficient list of any length modulo the field polynomial."""
        d = field.degree
        nums = list(nums)
        if len(nums) > d:
            table = field._reduce_table
            base = nums[:d]
            for k in range(d, len(nums)):
                c = nums[k]
                if c:
                    row = table[k - d]
                    for i in range(d):
                        base[i] += c * row[i]
            nums = base
        else:
            nums = nums + [0] * (d - len(nums))
        return cls(field, tuple(nums), den)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.nums)

    def _coerce(self, other):
        if isinstance(other, NumberFieldElem):
            if other.field is not self.field:
                raise ValueError("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return NumberFieldElem(self.field, tuple(a + b for a, b in zip(self.nums, o.nums)), self.den)
        return NumberFieldElem(
            self.field,
            tuple(a * o.den + b * self.den for a, b in zip(self.nums, o.nums)),
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElem(self.field, tuple(-a for a in self.nums), self.den, _normalized=True)

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
        a, b = self.nums, o.nums
        d = len(a)
        if d == 1:
            return NumberFieldElem(self.field, (a[0] * b[0],), self.den * o.den)
        out = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return NumberFieldElem.from_long(self.field, out, self.den * o.den)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def inverse(self) -> NumberFieldElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.is_rational():
            return self.field(1 / self.rational_value())
        # extended Euclid in Q[x]: s*a + t*f = 1
        f = rpoly(self.field.minpoly)
        a = rpoly(self.coords)
        r0, r1 = f, a
        s0, s1 = (), (Fraction(1),)
        while r1:
            q, r = rpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _rsub(s0, rpoly_mul(q, s1))
        # r0 is a nonzero constant since f is irreducible
        c = r0[0]
        return self.field.from_coords([x / c for x in s0])

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
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, NumberFieldElem):
            return NotImplemented
        return self.field is other.field and self.nums == other.nums and self.den == other.den

    def __hash__(self):
        return hash((self.field.minpoly, self.nums, self.den))

    def evaluate(self, x):
        """Image under x -> ``x`` (any ring element supporting + and *)."""
        return rpoly_eval(self.coords, x)

    def __str__(self):
        return format_poly(self.coords)

    def __repr__(self):
        return f"NumberFieldElem({self} mod {format_poly(self.field.minpoly)})"


def _rsub(a, b):
    n = max(len(a), len(b))
    return rpoly([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


# --- minimal polynomials and integrality ----------------------------------

def minimal_polynomial(e: NumberFieldElem) -> tuple[Fraction, ...]:
    """Monic minimal polynomial over Q, lowest degree first.

    Found as the first linear relation among 1, e, e^2, ... by incremental
    Gaussian elimination on power-basis coordinates.
    """
    return _minpoly_cached(e.field.minpoly, e.nums, e.den)


@functools.lru_cache(maxsize=65536)
def _minpoly_cached(fpoly, nums, den):
    field = NumberField(fpoly)
    e = NumberFieldElem(field, nums, den, _normalized=True)
    if e.is_rational():
        return (-e.rational_value(), Fraction(1))
    d = field.degree
    # rows: reduced vector + combination expressing it in terms of powers
    basis: list[tuple[list[Fraction], list[Fraction], int]] = []
    power = field.one()
    for k in range(d + 1):
        vec = list(power.coords)
        comb = [Fraction(0)] * (d + 1)
        comb[k] = Fraction(1)
        for bvec, bcomb, piv in basis:
            c = vec[piv]
            if c:
                vec = [v - c * b for v, b in zip(vec, bvec)]
                comb = [v - c * b for v, b in zip(comb, bcomb)]
        piv = next((i for i, v in enumerate(vec) if v), None)
        if piv is None:
            lead = comb[k]
            return tuple(c / lead for c in comb[: k + 1])
        inv = 1 / vec[piv]
        basis.append(([v * inv for v in vec], [v * inv for v in comb], piv))
        power = power * e
    raise AssertionError("no linear relation found among d+1 powers")


def is_algebraic_integer(e: NumberFieldElem) -> bool:
    return all(c.denominator == 1 for c in minimal_polynomial(e))


def characteristic_polynomial(e: NumberFieldElem) -> tuple[Fraction, ...]:
    """Characteristic polynomial of multiplication by e (a power of the minimal polynomial)."""
    m = minimal_polynomial(e)
    k = e.field.degree // (len(m) - 1)
    out: tuple[Fraction, ...] = (Fraction(1),)
    for _ in range(k):
        out = rpoly_mul(out, m)
    return out


# --- cyclotomic data ------------------------------------------------------

@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Phi_m with integer coefficients, lowest degree first."""
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            q, r = rpoly_divmod(rpoly(num), rpoly(cyclotomic_polynomial(d)))
            assert not r
            num = [int(c) for c in q]
    return tuple(num)


def euler_phi(m: int) -> int:
    out = m
    for q in P.prime_factors(m):
        out = out // q * (q - 1)
    return out


@functools.lru_cache(maxsize=None)
def real_cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Minimal polynomial of 2cos(2*pi/m), lowest degree first."""
    if m == 1:
        return (-2, 1)
    if m == 2:
        return (2, 1)
    phi = list(cyclotomic_polynomial(m))
    h = (len(phi) - 1) // 2
    out = [0] * (h + 1)
    q = phi[:]
    for j in range(h, -1, -1):
        c = q[h + j]
        out[j] = c
        if c:
            # subtract c * z^(h-j) * (z^2 + 1)^j
            binom = [math.comb(j, i) for i in range(j + 1)]
            for i, b in enumerate(binom):
                q[h - j + 2 * i] -= c * b
    assert not any(q), "cyclotomic polynomial not palindromic"
    return tuple(out)


def chebyshev_trace(s: NumberFieldElem, k: int) -> NumberFieldElem:
    """z^k + z^-k as a polynomial in s = z + 1/z."""
    k = abs(k)
    prev, cur = s.field(2), s
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, s * cur - prev
    return cur


def real_cyclotomic_field(m: int) -> NumberField:
    return NumberField(real_cyclotomic_polynomial(m))


def cyclotomic_trace(m: int, k: int) -> NumberFieldElem:
    """zeta_m^k + zeta_m^-k inside Q(2cos(2*pi/m))."""
    if m < 1:
        raise ValueError("m must be positive")
    field = real_cyclotomic_field(m)
    return chebyshev_trace(field.gen, k % m)


def cyclotomic_field(m: int) -> NumberField:
    """Q(zeta_m); Q itself for m in (1, 2)."""
    if m <= 2:
        return NumberField((0, 1))
    return NumberField(cyclotomic_polynomial(m))


def root_of_unity(m: int, k: int = 1) -> NumberFieldElem:
    """zeta_m^k inside cyclotomic_field(m)."""
    field = cyclotomic_field(m)
    if m == 1:
        return field(1)
    if m == 2:
        return field((-1) ** k)
    return field.gen ** (k % m)


def transport(e: NumberFieldElem, target: NumberField, gen_image: NumberFieldElem) -> NumberFieldElem:
    """Image of e under the field map sending the source generator to ``gen_image``.

    ``gen_image`` must be a root of the source field polynomial inside ``target``.
    """
    if not rpoly_eval(e.field.minpoly, gen_image).is_zero():
        raise ValueError("generator image is not a root of the field polynomial")
    acc = target.zero()
    for c in reversed(e.coords):
        acc = acc * gen_image + c
    return acc
