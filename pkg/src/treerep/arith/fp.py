"""Prime fields and dense polynomials over them.

Polynomials over F_p are lists of ints in [0, p), lowest degree first, with
no trailing zeros; the zero polynomial is ``[]``.
"""

from __future__ import annotations

import functools
import random

MAX_PRIME = 2**31


@functools.lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not 2 <= p <= MAX_PRIME or not is_prime(p):
        raise ValueError(f"{p} is not a prime in [2, 2^31]")
    return p


class Fp:
    """Element of the prime field F_p."""

    __slots__ = ("p", "value")

    def __init__(self, value: int, p: int):
        check_prime(p)
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self) -> Fp:
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Fp(o, self.p).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"


# --- polynomials over F_p -------------------------------------------------

def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def psub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def pscale(a, c, p):
    c %= p
    if c == 0:
        return []
    return [x * c % p for x in a]


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        trim(a)
    return trim(q), a


def pmod(a, b, p):
    return pdivmod(a, b, p)[1]


def pmonic(a, p):
    if not a:
        return []
    return pscale(a, pow(a[-1], -1, p), p)


def pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, pmod(a, b, p)
    return pmonic(a, p)


def peval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def ptaylor_shift(a, c, p):
    """Coefficients of a(c + t) as a polynomial in t."""
    out: list[int] = []
    for coef in reversed(a):
        # out = out * (c + t) + coef
        nxt = [0] * (len(out) + 1)
        for i, y in enumerate(out):
            nxt[i] = (nxt[i] + y * c) % p
            nxt[i + 1] = (nxt[i + 1] + y) % p
        nxt[0] = (nxt[0] + coef) % p
        out = trim(nxt)
    return out


def ppowmod(a, e, m, p):
    result = [1]
    base = pmod(a, m, p)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, p), m, p)
        base = pmod(pmul(base, base, p), m, p)
        e >>= 1
    return result


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(f, p) -> bool:
    """Rabin's irreducibility test for a polynomial over F_p."""
    f = pmonic(trim([c % p for c in f]), p)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    for q in prime_factors(n):
        h = psub(ppowmod(x, p ** (n // q), f, p), x, p)
        if len(pgcd(f, h, p)) != 1:
            return False
    return not psub(ppowmod(x, p**n, f, p), x, p)


def random_poly(rng: random.Random, p: int, degree: int) -> list[int]:
    return trim([rng.randrange(p) for _ in range(degree + 1)])
