"""The Bruhat-Tits tree of SL(2, F_p((t))).

Vertices are homothety classes of O-lattices in K^2, O = F_p[[t]].  Every
class has a unique representative L with t^n O^2 <= L <= O^2 and L not inside
t O^2; n is then the distance to the base vertex [O^2].  L/t^n O^2 is a free
rank-one O/t^n module, i.e. a point of P^1(O/t^n), recorded in one of two
charts:

* chart A: L = span(t^n e1, b e1 + e2)
* chart B: L = span(e1 + b e2, t^n e2) with b = 0 mod t

with b a polynomial of degree < n.  Truncating b to degree < k gives the
ancestor at distance k from the base, so the canonical form also encodes the
geodesic back to the base.
"""

from __future__ import annotations

import functools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .arith.laurent import INF, LaurentSeries
from .errors import IdentityInput, PrecisionExhausted
from .matrix import Matrix2


@dataclass(frozen=True, order=True)
class Vertex:
    chart: str
    n: int
    b: tuple[int, ...]
    p: int = field(compare=True)

    def __post_init__(self):
        if self.chart not in ("A", "B"):
            raise ValueError("chart must be 'A' or 'B'")
        if len(self.b) != self.n:
            raise ValueError("representative must have exactly n coefficients")
        if self.chart == "B" and (self.n == 0 or self.b[0] != 0):
            raise ValueError("chart B needs n >= 1 and b = 0 mod t")

    @functools.cached_property
    def basis(self) -> Matrix2:
        p = self.p
        tn = LaurentSeries.monomial(p, self.n)
        bt = LaurentSeries(p, 0, self.b)
        one = LaurentSeries.constant(p, 1)
        zero = LaurentSeries.zero(p)
        if self.chart == "A":
            return Matrix2(tn, bt, zero, one)
        return Matrix2(one, zero, bt, tn)

    @property
    def label(self) -> tuple:
        return (self.chart, self.n, self.b)

    @property
    def parity(self) -> int:
        return self.n % 2

    def ancestor(self, k: int) -> Vertex:
        """Vertex at distance k from the base on the geodesic to this vertex."""
        if not 0 <= k <= self.n:
            raise ValueError("ancestor level out of range")
        if k == 0:
            return base_vertex(self.p)
        return Vertex(self.chart, k, self.b[:k], self.p)

    def __str__(self):
        return f"{self.chart}{self.n}:" + "".join(str(c) for c in self.b)


def base_vertex(p: int) -> Vertex:
    return Vertex("A", 0, (), p)


# --- canonical forms --------------------------------------------------------

def _certified_min_valuation(entries) -> int:
    known = [e.val for e in entries if e.coeffs]
    if not known:
        raise PrecisionExhausted("lattice basis is numerically zero")
    m = min(known)
    for e in entries:
        if not e.coeffs and e.prec != INF and e.prec < m:
            raise PrecisionExhausted("entry valuation not certified below the pivot")
    return m


def _is_unit(x: LaurentSeries) -> bool:
    if x.coeffs:
        return x.val == 0
    if x.prec != INF and x.prec <= 0:
        raise PrecisionExhausted("cannot decide whether an entry is a unit")
    return False


def _poly_mod(x: LaurentSeries, n: int) -> tuple[int, ...]:
    if n == 0:
        return ()
    if x.prec < n:
        raise PrecisionExhausted(f"representative needs precision {n}, have {x.prec}")
    return tuple(x.coefficient(k) for k in range(n))


def canonicalize(basis: Matrix2) -> Vertex:
    """Canonical vertex of the lattice spanned by the columns of ``basis``."""
    p = basis.a.p
    det = basis.det()
    if det.is_exact_zero():
        raise ValueError("basis columns are linearly dependent")
    if not det.coeffs:
        raise PrecisionExhausted("determinant not certified nonzero")
    m = _certified_min_valuation(basis.entries())
    a, b, c, d = (e.shift(-m) for e in basis.entries())
    n = det.val - 2 * m
    if _is_unit(d) or _is_unit(c):
        top, bottom = (b, d) if _is_unit(d) else (a, c)
        beta = top * bottom.inverse(rel_prec=max(n, 1)) if n else top
        return Vertex("A", n, _poly_mod(beta, n), p)
    # no unit in the second row, so the first row has one
    top, bottom = (a, c) if _is_unit(a) else (b, d)
    beta = bottom * top.inverse(rel_prec=max(n, 1)) if n else bottom
    return Vertex("B", n, _poly_mod(beta, n), p)


def _adjugate_product(v: Vertex, w: Vertex) -> Matrix2:
    return v.basis.adjugate() @ w.basis


def distance(v: Vertex, w: Vertex) -> int:
    """Edge distance, from the elementary divisors of the change of basis."""
    if v == w:
        return 0
    c = _adjugate_product(v, w)
    # adj(M_v) M_w = t^{n_v} M_v^{-1} M_w: exact Laurent polynomials
    vals = [e.val for e in c.entries() if e.coeffs]
    emin = min(vals)
    vdet = v.n + w.n
    return vdet - 2 * emin


def neighbors(v: Vertex) -> list[Vertex]:
    """The p+1 classes of index-p sublattices between tL and L, in canonical order."""
    p = v.p
    M = v.basis
    t = LaurentSeries.monomial(p, 1)
    one = LaurentSeries.constant(p, 1)
    zero = LaurentSeries.zero(p)
    out = {canonicalize(M @ Matrix2(t, zero, zero, one))}
    for a in range(p):
        out.add(canonicalize(M @ Matrix2(one, zero, LaurentSeries.constant(p, a), t)))
    return sorted(out)


def children(v: Vertex) -> list[Vertex]:
    """Neighbors one step farther from the base (combinatorial shortcut)."""
    p = v.p
    if v.n == 0:
        kids = [Vertex("A", 1, (c,), p) for c in range(p)]
        kids.append(Vertex("B", 1, (0,), p))
        return sorted(kids)
    return [Vertex(v.chart, v.n + 1, v.b + (c,), p) for c in range(p)]


def parent(v: Vertex) -> Vertex | None:
    return v.ancestor(v.n - 1) if v.n else None


def fast_neighbors(v: Vertex) -> list[Vertex]:
    out = children(v)
    if v.n:
        out.append(parent(v))
    return sorted(out)


def meet_level(v: Vertex, w: Vertex) -> int:
    """Distance from the base to where the geodesics base->v and base->w part."""
    k = min(v.n, w.n)
    if k == 0 or v.chart != w.chart:
        return 0
    i = 0
    while i < k and v.b[i] == w.b[i]:
        i += 1
    return i


@dataclass(frozen=True)
class TreePath:
    vertices: tuple[Vertex, ...]

    def __len__(self):
        return len(self.vertices) - 1

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def reversed(self) -> TreePath:
        return TreePath(tuple(reversed(self.vertices)))

    def midpoint(self) -> Vertex:
        if self.length % 2:
            raise ValueError("odd-length path has no vertex midpoint")
        return self.vertices[self.length // 2]


def geodesic(v: Vertex, w: Vertex) -> TreePath:
    k = meet_level(v, w)
    up = [v.ancestor(j) for j in range(v.n, k - 1, -1)]
    down = [w.ancestor(j) for j in range(k + 1, w.n + 1)]
    return TreePath(tuple(up + down))


def midpoint(v: Vertex, w: Vertex) -> Vertex:
    return geodesic(v, w).midpoint()


def act(g: Matrix2, v: Vertex) -> Vertex:
    return canonicalize(g @ v.basis)


def is_fixed(g: Matrix2, v: Vertex) -> bool:
    return act(g, v) == v


def apartment_vertex(q: int, p: int) -> Vertex:
    """Class of M_q = span(t^q e1, e2) on the standard apartment."""
    if q >= 0:
        return Vertex("A", q, (0,) * q, p)
    return Vertex("B", -q, (0,) * (-q), p)


def unipotent_fixed_threshold(a: LaurentSeries) -> int:
    """Largest q such that [[1, a], [0, 1]] fixes M_q (it fixes exactly q <= val(a))."""
    if a.is_exact_zero():
        raise IdentityInput("the unipotent matrix is the identity")
    return a.valuation()


# --- balls, enumeration, random vertices ------------------------------------

def sphere_around_base(p: int, n: int) -> Iterator[Vertex]:
    if n == 0:
        yield base_vertex(p)
        return
    level = [base_vertex(p)]
    for _ in range(n):
        level = [c for v in level for c in children(v)]
    yield from level


def ball(center: Vertex, radius: int) -> list[Vertex]:
    """All vertices within ``radius`` of ``center``, sorted by (distance, canonical order)."""
    seen = {center: 0}
    queue = deque([center])
    while queue:
        v = queue.popleft()
        dv = seen[v]
        if dv == radius:
            continue
        for w in fast_neighbors(v):
            if w not in seen:
                seen[w] = dv + 1
                queue.append(w)
    return sorted(seen, key=lambda u: (seen[u], u))


def random_vertex(rng: random.Random, p: int, max_n: int) -> Vertex:
    n = rng.randint(0, max_n)
    if n == 0:
        return base_vertex(p)
    if rng.randrange(p + 1) == p:
        return Vertex("B", n, (0,) + tuple(rng.randrange(p) for _ in range(n - 1)), p)
    return Vertex("A", n, tuple(rng.randrange(p) for _ in range(n)), p)


class FixedSet:
    """Vertices fixed by an element; a membership predicate plus bounded enumeration."""

    def __init__(self, g: Matrix2):
        self.g = g

    def __contains__(self, v: Vertex) -> bool:
        return is_fixed(self.g, v)

    def within(self, center: Vertex, radius: int) -> list[Vertex]:
        return [v for v in ball(center, radius) if v in self]


# --- DOT --------------------------------------------------------------------

def _dot_label(v: Vertex) -> str:
    b = ",".join(str(c) for c in v.b)
    return f"({v.chart},{v.n},[{b}])"


def ball_dot(center: Vertex, radius: int, highlight: Iterable[Vertex] = (), name: str = "ball") -> str:
    """The radius-r ball as a DOT digraph (edges point away from the center)."""
    verts = ball(center, radius)
    index = {v: i for i, v in enumerate(verts)}
    marked = set(highlight)
    dist = {v: distance(center, v) for v in verts}
    lines = [f"digraph {name} {{"]
    for v, i in index.items():
        attrs = [f'label="{_dot_label(v)}"']
        if v == center:
            attrs.append('style=filled fillcolor="gold"')
        elif v in marked:
            attrs.append('style=filled fillcolor="lightblue"')
        lines.append(f"  v{i} [{' '.join(attrs)}];")
    for v, i in index.items():
        for w in fast_neighbors(v):
            if w in index and dist[w] == dist[v] + 1:
                lines.append(f"  v{i} -> v{index[w]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
