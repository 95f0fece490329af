"""Shared constructions and independent oracles for the test suite."""

from __future__ import annotations

import random
from collections import deque

from treerep import bttree
from treerep.arith import LaurentSeries
from treerep.matrix import Matrix2


def ls(p, terms, prec=None):
    if prec is None:
        return LaurentSeries.from_dict(p, terms)
    return LaurentSeries.from_dict(p, terms, prec=prec)


def mat(p, a, b, c, d, prec=None):
    return Matrix2(*(ls(p, e, prec) for e in (a, b, c, d)))


def upper(p, x: LaurentSeries) -> Matrix2:
    one, zero = LaurentSeries.constant(p, 1), LaurentSeries.zero(p)
    return Matrix2(one, x, zero, one)


def lower(p, x: LaurentSeries) -> Matrix2:
    one, zero = LaurentSeries.constant(p, 1), LaurentSeries.zero(p)
    return Matrix2(one, zero, x, one)


def diagonal(p, k: int, unit: int = 1) -> Matrix2:
    """diag(u t^k, u^-1 t^-k)."""
    inv = pow(unit, -1, p)
    zero = LaurentSeries.zero(p)
    return Matrix2(LaurentSeries.monomial(p, k, unit), zero, zero, LaurentSeries.monomial(p, -k, inv))


def random_series(rng, p, low, high, prec=None):
    terms = {e: rng.randrange(p) for e in range(low, high + 1)}
    return ls(p, terms, prec)


def random_integral_sl2(rng, p, steps=3, prec=None) -> Matrix2:
    """Product of elementary matrices with entries in F_p[[t]]: an element of SL2(O)."""
    g = diagonal(p, 0)
    for _ in range(steps):
        x = random_series(rng, p, 0, 3, prec)
        g = g @ (upper(p, x) if rng.random() < 0.5 else lower(p, x))
    return g


def random_mover(rng, p, steps=3, prec=None) -> Matrix2:
    """Elementary product whose entries have valuation >= -1; moves the base by at most 2*steps."""
    g = diagonal(p, 0)
    for _ in range(steps):
        x = random_series(rng, p, -1, 2, prec)
        g = g @ (upper(p, x) if rng.random() < 0.5 else lower(p, x))
    return g


def conj(h: Matrix2, g: Matrix2) -> Matrix2:
    return h @ g @ h.adjugate()


def bfs_distances(adjacency, source):
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def lattice_adjacency(vertices):
    """Adjacency from the lattice-theoretic neighbor enumeration, restricted to ``vertices``."""
    inside = set(vertices)
    return {v: [w for w in bttree.neighbors(v) if w in inside] for v in vertices}


def descend_displacement(g: Matrix2, start, radius: int):
    """Minimum of d(v, gv) over the ball of the given radius around the base.

    The displacement function is convex along geodesics, so greedy descent
    inside the (convex) ball reaches the minimum over the ball.
    """
    base = bttree.base_vertex(start.p)
    v = start
    best = bttree.distance(v, bttree.act(g, v))
    while True:
        nxt = None
        for w in bttree.fast_neighbors(v):
            if w.n > radius or bttree.distance(base, w) > radius:
                continue
            d = bttree.distance(w, bttree.act(g, w))
            if d < best:
                best, nxt = d, w
        if nxt is None:
            return best
        v = nxt


def rng_for(seed) -> random.Random:
    return random.Random(seed)
