"""Invariant antihermitian forms over CM fields and their signs at complex embeddings.

L = F(s) with s^2 = delta, F totally real and delta totally negative.  An
antihermitian 2x2 form over L is H = [[a s, u + v s], [-u + v s, d s]] with
a, d, u, v in F, and i * sigma(H) is a hermitian matrix at every complex
embedding sigma.  Its determinant is -zeta(det H), where det H lies in F and
zeta is the real embedding under sigma, so the sign type is decided by the
signs of det H and of a at real embeddings.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import mpmath

from .arith.numberfield import NumberField, NumberFieldElem, format_poly
from .errors import NumericallySingular, SearchBudgetExceeded
from .matrix import Matrix2, is_zero

DEFAULT_TOL = 1e-12
_DPS_LADDER = (30, 60, 120, 240, 480)
SEARCH_VALUES = (1, -1, 0, 2, -2, 3, -3, 4, -4, 5, -5)


# --- real embeddings of a totally real field ----------------------------------

def _real_roots(f: tuple[int, ...], dps: int) -> list:
    with mpmath.workdps(dps):
        if len(f) == 2:
            return [mpmath.mpf(-f[0]) / f[1]]
        roots = mpmath.polyroots(list(reversed(f)), maxsteps=200, extraprec=2 * dps)
        return sorted((mpmath.re(r) for r in roots), reverse=True)


def is_totally_real(f: tuple[int, ...]) -> bool:
    """Exact: Sturm count of real roots equals the degree."""
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(sum(c * x**i for i, c in enumerate(f)), x)
    return poly.count_roots() == poly.degree()


class RealEmbeddings:
    """The real embeddings of F, indexed by the roots of its polynomial in descending order."""

    def __init__(self, field: NumberField, tol: float = DEFAULT_TOL):
        self.field = field
        self.tol = tol

    @property
    def count(self) -> int:
        return self.field.degree

    def roots(self, dps: int = 30) -> list:
        return _real_roots(self.field.minpoly, dps)

    def value(self, e: NumberFieldElem, j: int, dps: int = 30):
        with mpmath.workdps(dps):
            r = self.roots(dps)[j]
            acc = mpmath.mpf(0)
            for c in reversed(e.coords):
                acc = acc * r + mpmath.mpf(c.numerator) / c.denominator
            return acc

    def sign(self, e: NumberFieldElem, j: int) -> int:
        """Certified sign of the j-th real image; escalates precision until clear of zero."""
        if e.is_zero():
            raise NumericallySingular("the element is exactly zero")
        scale = 1 + max(abs(float(c)) for c in e.coords)
        for dps in _DPS_LADDER:
            v = self.value(e, j, dps)
            if abs(v) > self.tol * scale * mpmath.mpf(10) ** (30 - dps):
                return 1 if v > 0 else -1
        raise NumericallySingular(f"sign of {e} at embedding {j} not resolved at {_DPS_LADDER[-1]} digits")

    def signs(self, e: NumberFieldElem) -> tuple[int, ...]:
        return tuple(self.sign(e, j) for j in range(self.count))


# --- CM fields ----------------------------------------------------------------

class CMField:
    """L = F(s), s^2 = delta, with F = Q[x]/(real_minpoly)."""

    def __init__(self, real_minpoly, delta):
        self.real = NumberField(real_minpoly)
        if not is_totally_real(self.real.minpoly):
            raise ValueError(f"{format_poly(self.real.minpoly)} is not totally real")
        self.delta = self.real(delta)
        self.embeddings = RealEmbeddings(self.real)
        if any(s > 0 for s in self.embeddings.signs(self.delta)):
            raise ValueError(f"delta = {self.delta} is not totally negative")

    def __eq__(self, other):
        return isinstance(other, CMField) and self.real is other.real and self.delta == other.delta

    def __hash__(self):
        return hash((self.real.minpoly, self.delta))

    @property
    def degree(self) -> int:
        return 2 * self.real.degree

    def __call__(self, x, y=0) -> CMElem:
        if isinstance(x, CMElem):
            return x
        return CMElem(self, self.real(x), self.real(y))

    @property
    def s(self) -> CMElem:
        return CMElem(self, self.real(0), self.real(1))

    @property
    def x(self) -> CMElem:
        return CMElem(self, self.real.gen, self.real(0))

    def header(self) -> str:
        real = format_poly(self.real.minpoly).replace(" ", "")
        return f"field cm real={real} delta={_fmt_real(self.delta)}"

    def complex_embeddings(self) -> list[tuple[int, int]]:
        """(real index j, sign eps) with sigma(s) = eps * i * sqrt(-zeta_j(delta))."""
        return [(j, eps) for j in range(self.real.degree) for eps in (1, -1)]

    def __repr__(self):
        return f"CMField({format_poly(self.real.minpoly)}, delta={self.delta})"


def _fmt_real(e: NumberFieldElem) -> str:
    return format_poly(e.coords).replace(" ", "")


class CMElem:
    __slots__ = ("field", "x", "y")

    def __init__(self, field: CMField, x: NumberFieldElem, y: NumberFieldElem):
        self.field = field
        self.x = x
        self.y = y

    def _coerce(self, o) -> CMElem:
        if isinstance(o, CMElem):
            return o
        return CMElem(self.field, self.field.real(o), self.field.real(0))

    def __add__(self, o):
        o = self._coerce(o)
        return CMElem(self.field, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return CMElem(self.field, -self.x, -self.y)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        d = self.field.delta
        return CMElem(self.field, self.x * o.x + self.y * o.y * d, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def conj(self) -> CMElem:
        return CMElem(self.field, self.x, -self.y)

    def norm(self) -> NumberFieldElem:
        return self.x * self.x - self.y * self.y * self.field.delta

    def inverse(self) -> CMElem:
        n = self.norm().inverse()
        c = self.conj()
        return CMElem(self.field, c.x * n, c.y * n)

    def __truediv__(self, o):
        return self * self._coerce(o).inverse()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        out = self._coerce(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, NumberFieldElem)):
            o = self._coerce(o)
        if not isinstance(o, CMElem):
            return NotImplemented
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y))

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def embed(self, j: int, eps: int, dps: int = 30):
        emb = self.field.embeddings
        with mpmath.workdps(dps):
            r = mpmath.sqrt(-emb.value(self.field.delta, j, dps))
            return emb.value(self.x, j, dps) + emb.value(self.y, j, dps) * eps * 1j * r

    def __str__(self):
        xs, ys = _fmt_real(self.x), _fmt_real(self.y)
        if self.y.is_zero():
            return xs
        ypart = "s" if ys == "1" else f"({ys})*s"
        if self.x.is_zero():
            return ypart
        return f"{xs} + {ypart}"

    __repr__ = __str__


def conj_matrix(g: Matrix2) -> Matrix2:
    return g.map(lambda e: e.conj())


# --- forms --------------------------------------------------------------------

class EmbeddingSign(enum.Enum):
    POSITIVE = "positive"
    MIXED = "mixed"
    NEGATIVE = "negative"

    def flipped(self) -> EmbeddingSign:
        return {EmbeddingSign.POSITIVE: EmbeddingSign.NEGATIVE, EmbeddingSign.NEGATIVE: EmbeddingSign.POSITIVE}.get(
            self, self
        )


@dataclass(frozen=True)
class SesquiForm:
    """Antihermitian H: conj(H)^T = -H, stored by its F-coordinates (a, d, u, v)."""

    field: CMField
    a: NumberFieldElem
    d: NumberFieldElem
    u: NumberFieldElem
    v: NumberFieldElem

    @classmethod
    def from_matrix(cls, field: CMField, H: Matrix2) -> SesquiForm:
        H = H.map(field)
        if not is_antihermitian(H):
            raise ValueError("matrix is not antihermitian")
        return cls(field, H.a.y, H.d.y, H.b.x, H.b.y)

    @classmethod
    def from_coords(cls, field: CMField, coords) -> SesquiForm:
        return cls(field, *(field.real(c) for c in coords))

    @cached_property
    def matrix(self) -> Matrix2:
        L = self.field
        zero = L.real(0)
        return Matrix2(
            CMElem(L, zero, self.a),
            CMElem(L, self.u, self.v),
            CMElem(L, -self.u, self.v),
            CMElem(L, zero, self.d),
        )

    def coords(self) -> tuple:
        return (self.a, self.d, self.u, self.v)

    def scale(self, lam) -> SesquiForm:
        lam = self.field.real(lam)
        return SesquiForm(self.field, lam * self.a, lam * self.d, lam * self.u, lam * self.v)

    def determinant(self) -> NumberFieldElem:
        """det H, an element of F."""
        delta = self.field.delta
        return self.a * self.d * delta + self.u * self.u - self.v * self.v * delta

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords())

    def __str__(self):
        H = self.matrix
        return f"[[{H.a}, {H.b}], [{H.c}, {H.d}]]"


def is_antihermitian(H: Matrix2) -> bool:
    return conj_matrix(H).transpose().equals(-H)


def _coords_of(H: Matrix2) -> list[NumberFieldElem]:
    return [H.a.y, H.d.y, H.b.x, H.b.y]


def _nullspace(rows: list[list[NumberFieldElem]], ncols: int, field: NumberField) -> list[list[NumberFieldElem]]:
    """Basis of the right kernel by Gauss-Jordan elimination over the field."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [field(0) for _ in range(ncols)]
        vec[fc] = field(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def invariant_form_space(gens, field: CMField, irreducible: bool = False) -> list[SesquiForm]:
    """F-basis of antihermitian forms with g^T H conj(g) = H for every generator.

    With ``irreducible`` the generators are checked to have a pair with
    tr[g, h] != 2 and the dimension is asserted to be at most one.
    """
    gens = [g.map(field) for g in gens]
    unit = [SesquiForm.from_coords(field, [1 if i == k else 0 for i in range(4)]) for k in range(4)]
    rows = []
    for g in gens:
        gT, gc = g.transpose(), conj_matrix(g)
        images = [_coords_of(gT @ e.matrix @ gc - e.matrix) for e in unit]
        for i in range(4):
            rows.append([images[k][i] for k in range(4)])
    basis = [SesquiForm.from_coords(field, v) for v in _nullspace(rows, 4, field.real)]
    if irreducible:
        if not any(
            not is_zero((g @ h @ g.adjugate() @ h.adjugate()).trace() - 2) for g, h in itertools.combinations(gens, 2)
        ):
            raise ValueError("no generator pair certifies irreducibility")
        if len(basis) > 1:
            raise AssertionError(f"irreducible generators admit a {len(basis)}-dimensional space of forms")
    return basis


def nondegenerate_member(space: list[SesquiForm], max_coeff: int = 2) -> SesquiForm | None:
    """First form with det != 0 among small integer combinations of the basis."""
    if not space:
        return None
    L = space[0].field
    rng = range(-max_coeff, max_coeff + 1)
    combos = sorted(itertools.product(rng, repeat=len(space)), key=lambda c: (sum(map(abs, c)), [-x for x in c]))
    for combo in combos:
        if not any(combo):
            continue
        coords = [sum((c * f.coords()[i] for c, f in zip(combo, space)), L.real(0)) for i in range(4)]
        form = SesquiForm(L, *coords)
        if not form.determinant().is_zero():
            return form
    return None


def is_invariant(form: SesquiForm, gens) -> bool:
    H = form.matrix
    L = form.field
    return all((g.map(L).transpose() @ H @ conj_matrix(g.map(L))).equals(H) for g in gens)


# --- signs ----------------------------------------------------------------------

@dataclass(frozen=True)
class SignEntry:
    index: int
    real_index: int
    eps: int
    root: float
    sign: EmbeddingSign


def embedding_signs(form: SesquiForm) -> list[SignEntry]:
    """Type of i * sigma(H) at each complex embedding sigma.

    Embeddings are listed as (real embedding j, sign eps) with
    sigma(s) = eps * i * sqrt(-zeta_j(delta)), real embeddings by descending root.
    """
    L = form.field
    emb = L.embeddings
    det = form.determinant()
    if det.is_zero():
        raise NumericallySingular("the form is degenerate (det H = 0)")
    roots = emb.roots()
    out = []
    for idx, (j, eps) in enumerate(L.complex_embeddings()):
        if emb.sign(det, j) > 0:
            kind = EmbeddingSign.MIXED
        else:
            # definite; the (1,1) entry of i*sigma(H) is -eps * zeta(a) * sqrt(-zeta(delta))
            sgn = -eps * emb.sign(form.a, j)
            kind = EmbeddingSign.POSITIVE if sgn > 0 else EmbeddingSign.NEGATIVE
        out.append(SignEntry(idx, j, eps, float(roots[j]), kind))
    return out


def numeric_signature(form: SesquiForm, j: int, eps: int, dps: int = 30) -> tuple[int, int]:
    """(positive, negative) eigenvalue counts of i*sigma(H), computed directly in floating point."""
    with mpmath.workdps(dps):
        M = mpmath.matrix(2, 2)
        H = form.matrix
        for (r, c), e in zip(((0, 0), (0, 1), (1, 0), (1, 1)), H.entries()):
            M[r, c] = 1j * e.embed(j, eps, dps)
        ev = mpmath.eighe(M, eigvals_only=True)
        pos = sum(1 for x in ev if x > 0)
        return pos, len(ev) - pos


def polydisk_dimension(form: SesquiForm) -> int:
    mixed = sum(1 for e in embedding_signs(form) if e.sign is EmbeddingSign.MIXED)
    if mixed % 2:
        raise AssertionError("mixed embeddings must come in conjugate pairs")
    return mixed // 2


def sign_fixing_lambda(field, targets, max_height: int = 3) -> NumberFieldElem:
    """lambda in F with sign(zeta_j(lambda)) = targets[j] at every real embedding.

    Integer combinations of the power basis are tried shell by shell in
    height, coefficients in the order 1, -1, 0, 2, -2, ...
    """
    F = field.real if isinstance(field, CMField) else field
    emb = field.embeddings if isinstance(field, CMField) else RealEmbeddings(F)
    targets = tuple(1 if t in (1, "+", "+1") else -1 if t in (-1, "-", "-1") else t for t in targets)
    if len(targets) != F.degree or any(t not in (1, -1) for t in targets):
        raise ValueError(f"need {F.degree} signs in {{+1, -1}}")
    for h in range(1, max_height + 1):
        values = [c for c in SEARCH_VALUES if abs(c) <= h]
        for combo in itertools.product(values, repeat=F.degree):
            if max(abs(c) for c in combo) != h:
                continue
            lam = F.from_coords(combo)
            if lam.is_zero():
                continue
            if emb.signs(lam) == targets:
                return lam
    raise SearchBudgetExceeded(f"no element of height <= {max_height} has signs {targets}")


def scale_signs(table: list[SignEntry], lam: NumberFieldElem, emb: RealEmbeddings) -> list[EmbeddingSign]:
    """Signs after scaling the form by lambda in F: flipped where zeta(lambda) < 0."""
    return [e.sign.flipped() if emb.sign(lam, e.real_index) < 0 else e.sign for e in table]
