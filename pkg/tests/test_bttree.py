import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import bfs_distances, diagonal, lattice_adjacency, ls, mat, random_integral_sl2, upper
from treerep import bttree
from treerep.arith import LaurentSeries
from treerep.errors import IdentityInput, PrecisionExhausted
from treerep.matrix import Matrix2


def vertices(p, radius):
    return bttree.ball(bttree.base_vertex(p), radius)


@st.composite
def vertex(draw, p=3, max_n=6):
    seed = draw(st.integers(0, 10**6))
    return bttree.random_vertex(random.Random(seed), p, max_n)


def test_base_vertex_is_standard_lattice():
    for p in (2, 3, 5):
        v = bttree.base_vertex(p)
        assert bttree.canonicalize(diagonal(p, 0)) == v
        assert len(bttree.neighbors(v)) == p + 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_lattice_neighbors_match_combinatorial_neighbors(p):
    for v in vertices(p, 3):
        assert bttree.neighbors(v) == bttree.fast_neighbors(v)


def test_canonical_form_is_basis_independent():
    rng = random.Random(4)
    p = 3
    for v in vertices(p, 3):
        for _ in range(3):
            k = random_integral_sl2(rng, p)
            assert bttree.canonicalize(v.basis @ k) == v
            assert bttree.canonicalize(v.basis.scale(LaurentSeries.monomial(p, 2))) == v


def test_sphere_sizes():
    for p in (2, 3):
        for n in range(5):
            expected = 1 if n == 0 else (p + 1) * p ** (n - 1)
            assert len(list(bttree.sphere_around_base(p, n))) == expected


@pytest.mark.parametrize("p", [2, 3])
def test_distance_matches_bfs_radius_3(p):
    verts = vertices(p, 3)
    adj = lattice_adjacency(verts)
    for v in verts[:40]:
        dist = bfs_distances(adj, v)
        for w in verts:
            assert bttree.distance(v, w) == dist[w]


@settings(max_examples=60, deadline=None)
@given(vertex(), vertex(), vertex())
def test_tree_metric_axioms(u, v, w):
    d = bttree.distance
    assert d(u, v) == d(v, u)
    assert (d(u, v) == 0) == (u == v)
    assert d(u, w) <= d(u, v) + d(v, w)
    assert (d(u, v) - u.n - v.n) % 2 == 0  # bipartite: parity of n is the colour


@settings(max_examples=60, deadline=None)
@given(vertex(), vertex())
def test_geodesic_is_a_shortest_path(v, w):
    path = bttree.geodesic(v, w)
    assert path.vertices[0] == v and path.vertices[-1] == w
    assert path.length == bttree.distance(v, w)
    for a, b in zip(path.vertices, path.vertices[1:]):
        assert b in bttree.neighbors(a)
    assert len(set(path.vertices)) == len(path.vertices)


@settings(max_examples=40, deadline=None)
@given(vertex(), vertex(), st.integers(0, 10**6))
def test_action_is_an_isometry(v, w, seed):
    rng = random.Random(seed)
    p = v.p
    g = random_integral_sl2(rng, p) @ upper(p, ls(p, {-2: rng.randrange(1, p)})) @ random_integral_sl2(rng, p)
    assert bttree.distance(bttree.act(g, v), bttree.act(g, w)) == bttree.distance(v, w)
    h = random_integral_sl2(rng, p)
    assert bttree.act(g @ h, v) == bttree.act(g, bttree.act(h, v))


def test_unipotent_fixes_half_apartment():
    p = 3
    for val in (-2, 0, 3):
        a = ls(p, {val: 1, val + 1: 2})
        u = upper(p, a)
        assert bttree.unipotent_fixed_threshold(a) == val
        for q in range(val - 4, val + 5):
            assert bttree.is_fixed(u, bttree.apartment_vertex(q, p)) == (q <= val)
    with pytest.raises(IdentityInput):
        bttree.unipotent_fixed_threshold(LaurentSeries.zero(p))


def test_diagonal_translates_apartment():
    p = 2
    g = diagonal(p, 3)
    for q in range(-3, 4):
        assert bttree.act(g, bttree.apartment_vertex(q, p)) == bttree.apartment_vertex(q + 6, p)


def test_precision_exhaustion_reported():
    p = 3
    g = mat(p, {0: 1}, {}, {}, {0: 1}, prec=1)
    deep = bttree.Vertex("A", 4, (1, 2, 0, 1), p)
    with pytest.raises(PrecisionExhausted):
        bttree.act(g, deep)


def test_fixed_set_and_dot_output():
    p = 2
    g = upper(p, ls(p, {-1: 1}))
    fs = bttree.FixedSet(g)
    base = bttree.base_vertex(p)
    fixed = fs.within(base, 2)
    assert base not in fs and bttree.Vertex("B", 1, (0,), p) in fixed
    dot = bttree.ball_dot(base, 2, fixed)
    assert dot.startswith("digraph ball {") and dot.rstrip().endswith("}")
    assert dot.count("->") == len(vertices(p, 2)) - 1
    assert "lightblue" in dot


def test_midpoint_requires_even_distance():
    p = 2
    v = bttree.Vertex("A", 2, (0, 1), p)
    assert bttree.midpoint(bttree.base_vertex(p), v) == bttree.Vertex("A", 1, (0,), p)
    with pytest.raises(ValueError):
        bttree.midpoint(bttree.base_vertex(p), bttree.Vertex("A", 1, (1,), p))
