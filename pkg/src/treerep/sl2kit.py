"""Classification of SL(2) elements, Zariski density, and the tree action of Laurent matrices."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import bttree
from .arith.laurent import DEFAULT_PREC, INF, LaurentSeries
from .arith.numberfield import (
    NumberField,
    NumberFieldElem,
    euler_phi,
    minimal_polynomial,
    real_cyclotomic_polynomial,
)
from .arith.ratfunc import Finite, Infinity, RationalFunction, expand_at_place
from .errors import NotElliptic, NotQuasiUnipotent, PrecisionExhausted
from .matrix import Matrix2, display_word, free_reduce, is_zero, reduced_words
from .rep import LaurentSpec, RepPresentation


class ClassKind(enum.Enum):
    IDENTITY = "identity"
    MINUS_IDENTITY = "minus-identity"
    UNIPOTENT_PLUS = "unipotent+"
    UNIPOTENT_MINUS = "unipotent-"
    SEMISIMPLE = "semisimple"


@dataclass(frozen=True)
class ConjClass:
    kind: ClassKind
    trace: object = None

    def __str__(self):
        if self.kind is ClassKind.SEMISIMPLE:
            return f"semisimple(trace={self.trace})"
        return self.kind.value


class CentralizerKind(enum.Enum):
    UNIPOTENT = "unipotent"
    SPLIT_TORUS = "split-torus"
    NON_SPLIT_TORUS = "non-split-torus"


@dataclass(frozen=True)
class QuasiUnipotence:
    """Eigenvalues are primitive ``order``-th roots of unity; ``unipotent`` for A = +-(1 + nilpotent)."""

    order: int
    unipotent: bool = False


def conjugacy_class_kind(A: Matrix2) -> ConjClass:
    if A.is_identity():
        return ConjClass(ClassKind.IDENTITY, A.trace())
    if A.is_minus_identity():
        return ConjClass(ClassKind.MINUS_IDENTITY, A.trace())
    tr = A.trace()
    if is_zero(tr - 2):
        return ConjClass(ClassKind.UNIPOTENT_PLUS, tr)
    if is_zero(tr + 2):
        return ConjClass(ClassKind.UNIPOTENT_MINUS, tr)
    return ConjClass(ClassKind.SEMISIMPLE, tr)


# --- quasi-unipotence ---------------------------------------------------------

_RATIONALS = None


def rationals() -> NumberField:
    global _RATIONALS
    if _RATIONALS is None:
        _RATIONALS = NumberField((0, 1))
    return _RATIONALS


def as_number(x) -> NumberFieldElem:
    if isinstance(x, NumberFieldElem):
        return x
    if isinstance(x, (int, Fraction)):
        return rationals()(x)
    raise TypeError(f"expected a number-field element, got {type(x).__name__}")


def cyclotomic_trace_order(tr) -> int | None:
    """Least m with tr = zeta + zeta^-1 for a primitive m-th root of unity zeta, else None."""
    tr = as_number(tr)
    mp = minimal_polynomial(tr)
    e = len(mp) - 1
    # deg(2cos(2pi/m)) = phi(m)/2 for m >= 3, and phi(m) >= sqrt(m/2)
    for m in range(1, 8 * e * e + 7):
        if m > 2 and euler_phi(m) != 2 * e:
            continue
        if m <= 2 and e != 1:
            continue
        if tuple(Fraction(c) for c in real_cyclotomic_polynomial(m)) == mp:
            return m
    return None


def is_quasi_unipotent(A: Matrix2) -> QuasiUnipotence | None:
    """Exact test over a number field: None when some eigenvalue is not a root of unity."""
    m = cyclotomic_trace_order(A.trace())
    if m is None:
        return None
    return QuasiUnipotence(m, unipotent=m <= 2 and not A.is_projectively_trivial())


def fp_trace_order(c: int, p: int) -> int:
    """Least m with c = zeta + zeta^-1 for a primitive m-th root of unity zeta in an extension of F_p."""
    c %= p
    if (c - 2) % p == 0:
        return 1
    if (c + 2) % p == 0:
        return 2
    n = p * p - 1
    for m in sorted(d for d in range(3, n + 1) if n % d == 0):
        acc = 0
        for coef in reversed(real_cyclotomic_polynomial(m)):
            acc = (acc * c + coef) % p
        if acc == 0:
            return m
    raise AssertionError("every element of F_p is a trace of a root of unity")


def laurent_quasi_unipotence(A: Matrix2) -> QuasiUnipotence | None:
    """Over F_p((t)): eigenvalues have finite order iff the trace is a constant in F_p."""
    tr = A.trace()
    if any(e != 0 for e in tr.terms()):
        return None
    if tr.prec != INF:
        raise PrecisionExhausted("trace not certified constant")
    m = fp_trace_order(tr.coefficient(0), tr.p)
    return QuasiUnipotence(m, unipotent=m <= 2 and not A.is_projectively_trivial())


def quasi_unipotence(A: Matrix2) -> QuasiUnipotence | None:
    """Domain dispatch: number fields, F_p((t)) and F_p(y)."""
    if isinstance(A.a, LaurentSeries):
        return laurent_quasi_unipotence(A)
    if isinstance(A.a, RationalFunction):
        tr = A.trace()
        if not tr.is_constant():
            return None
        m = fp_trace_order(tr.num[0] if tr.num else 0, tr.p)
        return QuasiUnipotence(m, unipotent=m <= 2 and not A.is_projectively_trivial())
    return is_quasi_unipotent(A)


def trace_necessary_condition(A: Matrix2) -> bool:
    """val(tr) >= 0, the necessary condition for quasi-unipotence over F_p((t))."""
    tr = A.trace()
    if tr.coeffs:
        return tr.val >= 0
    if tr.prec != INF and tr.prec < 0:
        raise PrecisionExhausted("trace valuation not certified")
    return True


def has_infinite_order(A: Matrix2) -> bool:
    """Certified: the eigenvalues of A have infinite multiplicative order."""
    tr = A.trace()
    if isinstance(tr, LaurentSeries):
        return any(e != 0 for e in tr.terms())
    if isinstance(tr, RationalFunction):
        return not tr.is_constant()
    m = cyclotomic_trace_order(tr)
    if m is None:
        return True
    # in characteristic zero a nontrivial unipotent has infinite order
    return m <= 2 and not A.is_projectively_trivial()


# --- centralizers -----------------------------------------------------------

def is_square_in_field(s) -> bool:
    """Exact squareness test in the coefficient field of ``s``."""
    if isinstance(s, LaurentSeries):
        if not s.is_constant():
            raise ValueError("squareness only decided for constants of F_p((t))")
        c = s.coefficient(0) % s.p
        if c == 0 or s.p == 2:
            return True
        return pow(c, (s.p - 1) // 2, s.p) == 1
    s = as_number(s)
    if s.field.degree == 1:
        q = s.rational_value()
        if q < 0:
            return False
        from math import isqrt

        return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator
    return _number_field_square(s)


def _number_field_square(s: NumberFieldElem) -> bool:
    import sympy

    x, X = sympy.symbols("x X")
    f = s.field.minpoly
    K = sympy.QQ.algebraic_field(sympy.CRootOf(sum(c * x**i for i, c in enumerate(f)), 0))
    theta = K.ext
    s_expr = sum(sympy.Rational(c.numerator, c.denominator) * theta**i for i, c in enumerate(s.coords))
    poly = sympy.Poly(X**2 - s_expr, X, domain=K)
    _, factors = poly.factor_list()
    return any(fac.degree() == 1 for fac, _ in factors)


def centralizer_kind(A: Matrix2) -> CentralizerKind:
    if A.is_projectively_trivial():
        raise NotQuasiUnipotent("centralizer kind is undefined for +-1")
    qu = quasi_unipotence(A)
    if qu is None:
        raise NotQuasiUnipotent(f"trace {A.trace()} is not a trace of a root of unity")
    if qu.order <= 2:
        return CentralizerKind.UNIPOTENT
    tr = A.trace()
    if is_square_in_field(tr * tr - 4):
        return CentralizerKind.SPLIT_TORUS
    return CentralizerKind.NON_SPLIT_TORUS


# --- Zariski density ----------------------------------------------------------

@dataclass(frozen=True)
class DensityVerdict:
    dense: bool
    alpha: str | None = None
    beta: str | None = None
    infinite_order: str | None = None
    difference: object = None
    max_word_len: int = 0
    pairs_checked: int = 0

    @property
    def label(self) -> str:
        return "dense" if self.dense else "inconclusive"


def _generators_of(rep) -> Mapping[str, Matrix2]:
    if isinstance(rep, RepPresentation):
        return rep.generators
    if isinstance(rep, Mapping):
        return rep
    return {chr(ord("a") + i): g for i, g in enumerate(rep)}


def word_matrices(gens: Mapping[str, Matrix2], max_len: int, min_len: int = 1) -> dict[str, Matrix2]:
    """Matrices of all reduced words up to ``max_len``, built by extending prefixes."""
    first = next(iter(gens.values()))
    cache = {"": Matrix2.identity_like(first.a)}
    letters = {g: m for g, m in gens.items()}
    letters.update({g.upper(): m.adjugate() for g, m in gens.items()})
    out = {}
    for w in reduced_words(list(gens), max_len):
        if w:
            cache[w] = cache[w[:-1]] @ letters[w[-1]]
        if len(w) >= min_len:
            out[w] = cache[w]
    return out


def _trace_of_product(X: Matrix2, Y: Matrix2):
    return X.a * Y.a + X.b * Y.c + X.c * Y.b + X.d * Y.d


def zariski_density_check(rep, max_word_len: int = 4) -> DensityVerdict:
    """Certify density via Tr(a^2 b^2 a^2 b^2) - Tr(a^4 b^4) != 0 plus an infinite-order element.

    Only the certified direction is reported; exhausting the search returns an
    inconclusive verdict, never a claim of non-density.
    """
    gens = _generators_of(rep)
    mats = word_matrices(gens, max_word_len)
    gamma = next((w for w, m in mats.items() if has_infinite_order(m)), None)
    if gamma is None:
        return DensityVerdict(False, max_word_len=max_word_len)
    words = list(mats)
    squares = {w: mats[w] @ mats[w] for w in words}
    fourths = {w: squares[w] @ squares[w] for w in words}
    checked = 0
    # unordered pairs suffice: both traces are symmetric in (alpha, beta)
    for j, beta in enumerate(words):
        for alpha in words[:j]:
            checked += 1
            X = squares[alpha] @ squares[beta]
            trx = X.trace()
            diff = (trx * trx - 2) - _trace_of_product(fourths[alpha], fourths[beta])
            if not is_zero(diff):
                return DensityVerdict(True, alpha, beta, gamma, diff, max_word_len, checked)
    return DensityVerdict(False, infinite_order=gamma, max_word_len=max_word_len, pairs_checked=checked)


def trace_difference(A: Matrix2, B: Matrix2):
    """Tr(ABAB) - Tr(A^2 B^2)."""
    AB = A @ B
    return (AB @ AB).trace() - (A @ A @ B @ B).trace()


# --- tree action --------------------------------------------------------------

def translation_length(g: Matrix2) -> int:
    tr = g.trace()
    if tr.coeffs:
        return max(0, -2 * tr.val)
    if tr.prec == INF or tr.prec >= 0:
        return 0
    raise PrecisionExhausted("trace valuation straddles zero")


def displacement(g: Matrix2, v: bttree.Vertex) -> int:
    return bttree.distance(v, bttree.act(g, v))


def fixed_vertex(g: Matrix2, start: bttree.Vertex | None = None) -> bttree.Vertex:
    """A vertex fixed by an elliptic g, by midpoint iteration from ``start`` (default base)."""
    if translation_length(g) > 0:
        raise NotElliptic(f"translation length {translation_length(g)} > 0")
    v = start or bttree.base_vertex(g.a.p)
    d0 = displacement(g, v)
    for _ in range(max(1, d0)):
        w = bttree.act(g, v)
        if w == v:
            return v
        v = bttree.midpoint(v, w)
    if bttree.act(g, v) == v:
        return v
    raise AssertionError("midpoint iteration failed to converge")


@dataclass(frozen=True)
class BoundednessVerdict:
    bounded: bool
    vertex: bttree.Vertex | None = None
    witness: str | None = None
    translation: int = 0


def is_bounded(gens) -> BoundednessVerdict:
    """Bounded iff every generator and every product g_i g_j (i <= j) is elliptic."""
    gens = dict(_generators_of(gens))
    names = list(gens)
    for n in names:
        ell = translation_length(gens[n])
        if ell > 0:
            return BoundednessVerdict(False, witness=n, translation=ell)
    for i, a in enumerate(names):
        for b in names[i:]:
            ell = translation_length(gens[a] @ gens[b])
            if ell > 0:
                return BoundednessVerdict(False, witness=a + b, translation=ell)
    p = gens[names[0]].a.p
    v = bttree.base_vertex(p)
    # each projection stays inside the previous fixed subtrees (pairwise-meeting subtrees)
    for _ in range(len(names) + 1):
        moved = False
        for n in names:
            w = bttree.act(gens[n], v)
            if w != v:
                v = bttree.midpoint(v, w)
                moved = True
        if not moved:
            return BoundednessVerdict(True, vertex=v)
    if all(bttree.act(g, v) == v for g in gens.values()):
        return BoundednessVerdict(True, vertex=v)
    raise AssertionError("common fixed vertex not reached")


# --- completion at a place ----------------------------------------------------

@dataclass
class BoundednessReport:
    place: str
    precision: int
    bounded: bool
    witness: str | None
    translation: int
    fixed_vertex: bttree.Vertex | None
    density: DensityVerdict
    puncture_checks: list[tuple[str, str]] = field(default_factory=list)
    completed: RepPresentation | None = None

    def lines(self) -> list[tuple[str, str]]:
        out = [
            ("place", self.place),
            ("precision", str(self.precision)),
            ("bounded", "yes" if self.bounded else "no"),
            ("witness", self.witness or "-"),
        ]
        if not self.bounded:
            out.append(("translation_length", str(self.translation)))
        else:
            out.append(("fixed_vertex", str(self.fixed_vertex)))
        out.append(("density", self.density.label))
        out.append(("density_max_word_len", str(self.density.max_word_len)))
        if self.density.dense:
            out.append(("density_witness", f"{self.density.alpha},{self.density.beta},{self.density.infinite_order}"))
        checks = ";".join(f"{w}={s}" for w, s in self.puncture_checks) or "-"
        out.append(("puncture_checks", checks))
        return out


def place_label(place) -> str:
    return "inf" if isinstance(place, Infinity) else str(place.c)


def complete_representation(rep: RepPresentation, place, prec: int = DEFAULT_PREC) -> RepPresentation:
    if rep.mode != "ratfunc":
        raise ValueError("completion needs a rational-function representation")
    gens = {n: m.map(lambda r: expand_at_place(r, place, prec)) for n, m in rep.generators.items()}
    for n, m in gens.items():
        if not is_zero(m.det() - 1):
            raise PrecisionExhausted(f"determinant of {n} not certified at precision {prec}")
    return RepPresentation(LaurentSpec(rep.spec.p, prec), gens, list(rep.punctures), list(rep.relators))


def complete_and_test(rep: RepPresentation, place, prec: int = DEFAULT_PREC, max_word_len: int = 4) -> BoundednessReport:
    """Expand every generator at the place, then run boundedness and density tests."""
    done = complete_representation(rep, place, prec)
    verdict = is_bounded(done.generators)
    density = zariski_density_check(done.generators, max_word_len)
    checks = []
    for w in done.punctures:
        ok = trace_necessary_condition(done.evaluate(w))
        checks.append((display_word(free_reduce(w)), "val(tr)>=0" if ok else "val(tr)<0"))
    return BoundednessReport(
        place_label(place),
        prec,
        verdict.bounded,
        verdict.witness,
        verdict.translation,
        verdict.vertex,
        density,
        checks,
        done,
    )


def parse_place(text: str):
    text = text.strip()
    if text in ("inf", "infinity", "oo"):
        return Infinity()
    return Finite(int(text))
