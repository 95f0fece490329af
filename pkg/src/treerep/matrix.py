"""2x2 matrices over any of the coefficient domains, and words in generators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Mapping

from .arith.laurent import LaurentSeries
from .arith.numberfield import NumberFieldElem
from .arith.ratfunc import RationalFunction
from .errors import DeterminantNotOne, UnknownGenerator


def is_zero(x) -> bool:
    """Exact (or certified-to-precision) vanishing of a domain element."""
    if isinstance(x, LaurentSeries):
        return x.known_zero()
    if isinstance(x, NumberFieldElem):
        return x.is_zero()
    if isinstance(x, RationalFunction):
        return x.is_zero()
    return x == 0


def domain_name(x) -> str:
    if isinstance(x, LaurentSeries):
        return "laurent"
    if isinstance(x, RationalFunction):
        return "ratfunc"
    if isinstance(x, NumberFieldElem):
        return "number"
    if isinstance(x, (int, Fraction)):
        return "rational"
    return type(x).__name__


@dataclass(frozen=True)
class Matrix2:
    """[[a, b], [c, d]]; columns are the images of e1 and e2."""

    a: object
    b: object
    c: object
    d: object

    @classmethod
    def identity_like(cls, x) -> Matrix2:
        zero = x * 0
        return cls(zero + 1, zero, zero, zero + 1)

    @classmethod
    def from_rows(cls, rows) -> Matrix2:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def domain(self) -> str:
        return domain_name(self.a)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, o: Matrix2) -> Matrix2:
        return Matrix2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __add__(self, o: Matrix2) -> Matrix2:
        return Matrix2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: Matrix2) -> Matrix2:
        return Matrix2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def scale(self, s) -> Matrix2:
        return Matrix2(self.a * s, self.b * s, self.c * s, self.d * s)

    def __neg__(self) -> Matrix2:
        return Matrix2(-self.a, -self.b, -self.c, -self.d)

    def trace(self):
        return self.a + self.d

    def det(self):
        return self.a * self.d - self.b * self.c

    def adjugate(self) -> Matrix2:
        """Inverse for determinant-one matrices."""
        return Matrix2(self.d, -self.b, -self.c, self.a)

    inverse = adjugate

    def transpose(self) -> Matrix2:
        return Matrix2(self.a, self.c, self.b, self.d)

    def map(self, f: Callable) -> Matrix2:
        return Matrix2(f(self.a), f(self.b), f(self.c), f(self.d))

    def __pow__(self, n: int) -> Matrix2:
        base = self if n >= 0 else self.adjugate()
        n = abs(n)
        result = Matrix2.identity_like(self.a)
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def is_scalar(self, s) -> bool:
        return is_zero(self.a - s) and is_zero(self.d - s) and is_zero(self.b) and is_zero(self.c)

    def is_identity(self) -> bool:
        return self.is_scalar(1)

    def is_minus_identity(self) -> bool:
        return self.is_scalar(-1)

    def is_projectively_trivial(self) -> bool:
        return self.is_identity() or self.is_minus_identity()

    def equals(self, o: Matrix2) -> bool:
        return all(is_zero(x - y) for x, y in zip(self.entries(), o.entries()))

    def commutes_with(self, o: Matrix2) -> bool:
        return (self @ o).equals(o @ self)

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def check_det_one(m: Matrix2, name: str = "matrix") -> None:
    if not is_zero(m.det() - 1):
        raise DeterminantNotOne(f"{name} has determinant {m.det()}, expected 1")


# --- words ------------------------------------------------------------------
# A word is a string over generator letters; an upper-case letter is the inverse
# of the corresponding lower-case generator.  "1" (or "") is the empty word.

def invert_letter(ch: str) -> str:
    return ch.lower() if ch.isupper() else ch.upper()


def free_reduce(word: str) -> str:
    out: list[str] = []
    for ch in word:
        if ch == "1":
            continue
        if out and out[-1] == invert_letter(ch):
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def invert_word(word: str) -> str:
    return "".join(invert_letter(ch) for ch in reversed(free_reduce(word)))


def alphabet(generators) -> list[str]:
    """Generators in declaration order followed by their inverses."""
    gens = list(generators)
    return gens + [g.upper() for g in gens]


def reduced_words(generators, max_len: int, min_len: int = 0) -> Iterator[str]:
    """Freely reduced words in length-lex order (letter order: gens then inverses)."""
    letters = alphabet(generators)
    level = [""]
    if min_len <= 0:
        yield ""
    for length in range(1, max_len + 1):
        nxt = []
        for w in level:
            for ch in letters:
                if w and w[-1] == invert_letter(ch):
                    continue
                nxt.append(w + ch)
        if length >= min_len:
            yield from nxt
        level = nxt


def evaluate_word(generators: Mapping[str, Matrix2], word: str, one: Matrix2 | None = None) -> Matrix2:
    word = free_reduce(word)
    if one is None:
        first = next(iter(generators.values()))
        one = Matrix2.identity_like(first.a)
    result = one
    for ch in word:
        g = generators.get(ch.lower())
        if g is None:
            raise UnknownGenerator(ch.lower())
        result = result @ (g.adjugate() if ch.isupper() else g)
    return result


def display_word(word: str) -> str:
    return word if word else "1"
