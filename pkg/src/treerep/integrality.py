"""Scanning word traces for algebraic integrality."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith.numberfield import format_poly, is_algebraic_integer, minimal_polynomial
from .matrix import Matrix2, alphabet, display_word, free_reduce, invert_letter
from .rep import RepPresentation
from .sl2kit import as_number

DEFAULT_MAX_LEN = 6


@dataclass(frozen=True)
class Violation:
    word: str
    trace: object
    minimal_polynomial: tuple[Fraction, ...]


@dataclass(frozen=True)
class IntegralityReport:
    max_len: int
    words_checked: int
    violation: Violation | None = None

    @property
    def all_integral(self) -> bool:
        return self.violation is None

    @property
    def verdict(self) -> str:
        return "all-integral" if self.all_integral else "violation"

    def lines(self) -> list[tuple[str, str]]:
        out = [
            ("integrality", self.verdict),
            ("max_word_len", str(self.max_len)),
            ("words_checked", str(self.words_checked)),
        ]
        if self.violation is not None:
            v = self.violation
            out += [
                ("violation_word", display_word(v.word)),
                ("violation_trace", str(v.trace)),
                ("violation_minpoly", format_poly(v.minimal_polynomial)),
            ]
        return out


def trace_of_word(rep: RepPresentation, word: str):
    """Trace of the product matrix; the empty word gives 2."""
    return rep.trace_of_word(free_reduce(word))


def integrality_scan(rep: RepPresentation, max_len: int = DEFAULT_MAX_LEN) -> IntegralityReport:
    """Check is_algebraic_integer on every freely reduced word up to ``max_len``.

    Words are visited in length-lex order; the first failure is reported.  The
    prefix matrices of length max_len - 1 are kept and the last letter only
    contributes a trace, so each word costs one product.
    """
    gens = rep.generators
    letters = {g: m for g, m in gens.items()}
    letters.update({g.upper(): m.adjugate() for g, m in gens.items()})
    order = alphabet(gens)
    seen_traces: dict = {}
    checked = 0

    def integral(tr):
        key = (tr.field.minpoly, tr.nums, tr.den) if hasattr(tr, "nums") else tr
        if key not in seen_traces:
            seen_traces[key] = is_algebraic_integer(as_number(tr))
        return seen_traces[key]

    level: list[tuple[str, Matrix2]] = [("", rep.one())]
    checked += 1  # empty word, trace 2
    for length in range(1, max_len + 1):
        nxt = []
        last = length == max_len
        for w, m in level:
            for ch in order:
                if w and w[-1] == invert_letter(ch):
                    continue
                g = letters[ch]
                if last:
                    tr = m.a * g.a + m.b * g.c + m.c * g.b + m.d * g.d
                else:
                    prod = m @ g
                    tr = prod.trace()
                    nxt.append((w + ch, prod))
                checked += 1
                if not integral(tr):
                    tr = as_number(tr)
                    return IntegralityReport(max_len, checked, Violation(w + ch, tr, minimal_polynomial(tr)))
        level = nxt
    return IntegralityReport(max_len, checked)


def conjugate_representation(rep: RepPresentation, h: Matrix2) -> RepPresentation:
    """Generators replaced by h g h^-1 (h invertible over the same field)."""
    det = h.det()
    h_inv = h.adjugate().map(lambda e: e / det)
    gens = {n: h @ g @ h_inv for n, g in rep.generators.items()}
    return RepPresentation(rep.spec, gens, list(rep.punctures), list(rep.relators))
