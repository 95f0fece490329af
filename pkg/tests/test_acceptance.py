"""Acceptance criteria, one test each, with the stated runtime limits.

Every test records a single ``criterion N: PASS|FAIL`` line, printed in the
terminal summary of the pytest run.
"""

import itertools
import random
import time
from fractions import Fraction

from conftest import ACCEPTANCE_LINES
from helpers import (
    bfs_distances,
    conj,
    descend_displacement,
    diagonal,
    lattice_adjacency,
    ls,
    lower,
    random_integral_sl2,
    random_mover,
    upper,
)
from treerep import bttree, hodgesign, integrality, orbicurve, rigidkit, sl2kit, treeharm
from treerep.arith import INFINITY, Finite, NumberField, RationalFunction, transport
from treerep.hodgesign import CMField, EmbeddingSign, SesquiForm
from treerep.matrix import Matrix2
from treerep.rep import NumberSpec, RatFuncSpec, RepPresentation
from treerep.sl2kit import ClassKind
from treerep.treeharm import GainGraph


def check(number, limit, body):
    """Run ``body`` (which returns a short detail string or raises), time it, record the line."""
    start = time.perf_counter()
    error = None
    try:
        detail = body()
    except AssertionError as exc:
        detail, error = f"assertion failed: {exc}", exc
    elapsed = time.perf_counter() - start
    ok = error is None and elapsed < limit
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s, limit {limit}s) {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    if error is not None:
        raise error
    assert elapsed < limit, line


def qmat(a, b, c, d, field=None):
    K = field or NumberField((0, 1))
    return Matrix2(*(x if not isinstance(x, (int, Fraction)) else K(x) for x in (a, b, c, d)))


# 1 -----------------------------------------------------------------------------

def test_density_constant():
    def body():
        A, B = qmat(1, 1, 0, 1), qmat(1, 0, 1, 1)
        AB = A @ B
        abab, aabb = (AB @ AB).trace(), (A @ A @ B @ B).trace()
        assert abab.rational_value() == 7 and aabb.rational_value() == 6
        verdict = sl2kit.zariski_density_check({"a": A, "b": B})
        assert verdict.dense
        return f"Tr(ABAB)={abab} Tr(A^2B^2)={aabb} dense"

    check(1, 1, body)


# 2 -----------------------------------------------------------------------------

def test_hypergeometric_tuple():
    def body():
        T = rigidkit.hypergeometric_build("u", "u", "request")
        product = [[int(e.rational_value()) for e in row] for row in T.product.rows()]
        assert product == [[-3, 1], [-4, 1]], product
        assert rigidkit.verify_rigid_tuple(*T.matrices, T.classes)
        report = integrality.integrality_scan(T.to_rep(), 6)
        assert report.verdict == "all-integral"
        return f"product={product} verified all-integral words={report.words_checked}"

    check(2, 10, body)


# 3 -----------------------------------------------------------------------------

def test_hurwitz_bounds():
    pairs = [(g, b) for g in range(4) for b in range(6) if (g, b) != (0, 0)][:20]

    def body():
        for g, b in pairs:
            br = orbicurve.index_bound_branches(g, b)
            chi = 2 * g - 2 + b  # minus the Euler characteristic of the punctured surface
            assert br.some_index_at_least_3 == max(6, 42 * (chi + 2 * b)), (g, b)
            assert br.two_indices_equal_2 == max(2, 6 * (chi + 3 * b)), (g, b)
            assert br.positive_genus == 2 * g - 1
            assert orbicurve.hurwitz_index_bound(g, b) == max(br.positive_genus, br.some_index_at_least_3, br.two_indices_equal_2)
        return f"{len(pairs)} (g,b) pairs"

    check(3, 1, body)


# 4 -----------------------------------------------------------------------------

def test_virtual_dimension_rigidity():
    kinds = list(ClassKind)
    central = {ClassKind.IDENTITY, ClassKind.MINUS_IDENTITY}

    def body():
        checked = 0
        for size in range(1, 6):
            for multiset in itertools.combinations_with_replacement(kinds, size):
                noncentral = sum(k not in central for k in multiset)
                assert (rigidkit.virtual_dimension(multiset) == 0) == (noncentral == 3), multiset
                checked += 1
        return f"{checked} multisets"

    check(4, 1, body)


# 5 -----------------------------------------------------------------------------

def test_tree_oracle_equivalence():
    def body():
        pairs = 0
        for p in (2, 3):
            verts = bttree.ball(bttree.base_vertex(p), 5)
            adj = lattice_adjacency(verts)
            for i, v in enumerate(verts):
                dist = bfs_distances(adj, v)
                assert len(dist) == len(verts)
                for w in verts[i:]:
                    assert bttree.distance(v, w) == dist[w], (v, w)
                    path = bttree.geodesic(v, w).vertices
                    assert path[0] == v and path[-1] == w
                    assert len(path) - 1 == dist[w]
                    assert all(y in adj[x] for x, y in zip(path, path[1:]))
                    pairs += 1
        return f"{pairs} pairs, 0 mismatches"

    check(5, 60, body)


# 6 -----------------------------------------------------------------------------

def length_from_trace(tr):
    """max(0, -2 val tr), using only what the precision certifies.

    A trace whose known coefficients all vanish has valuation at least its
    precision, which is nonnegative here, so the length is 0.
    """
    if tr.known_zero():
        assert tr.prec >= 0
        return 0
    return max(0, -2 * tr.valuation())


def test_translation_length_law():
    def body():
        rng = random.Random(2024)
        hyperbolic = 0
        for k in range(100):
            p = (2, 3, 5)[k % 3]
            h = random_mover(rng, p, steps=rng.randint(1, 3), prec=32)
            core = diagonal(p, rng.randint(1, 3)) if k % 2 else random_integral_sl2(rng, p, prec=32)
            g = conj(h, core)
            ell = sl2kit.translation_length(g)
            assert ell == length_from_trace(g.trace())
            assert ell == descend_displacement(g, bttree.base_vertex(p), 6), (k, p)
            if ell:
                hyperbolic += 1
                assert sl2kit.translation_length(g @ g) == 2 * ell
        return f"100 samples, {hyperbolic} hyperbolic"

    check(6, 120, body)


# 7 -----------------------------------------------------------------------------

def brute_common_fixed(gens, p, radius):
    for v in bttree.ball(bttree.base_vertex(p), radius):
        if all(bttree.is_fixed(g, v) for g in gens):
            return v
    return None


def random_pair(rng, p, kind):
    h = random_mover(rng, p, 2)
    pole = ls(p, {-1: 1})
    if kind == 0:
        gens = [random_integral_sl2(rng, p), random_integral_sl2(rng, p)]
    elif kind == 1:
        gens = [random_integral_sl2(rng, p), lower(p, ls(p, {-1: 1, 0: rng.randrange(p)}))]
    elif kind == 2:
        gens = [upper(p, pole), lower(p, pole)]
    elif kind == 3:
        gens = [upper(p, ls(p, {0: 1, 1: rng.randrange(p)})), lower(p, ls(p, {1: 1}))]
    else:
        gens = [random_integral_sl2(rng, p), diagonal(p, 1)]
    return [conj(h, g) for g in gens]


def test_boundedness_equivalence():
    def body():
        rng = random.Random(77)
        counts = [0, 0]
        for k in range(50):
            p = 3 if k % 10 == 9 else 2
            gens = random_pair(rng, p, k % 5)
            verdict = sl2kit.is_bounded({"a": gens[0], "b": gens[1]})
            brute = brute_common_fixed(gens, p, 8)
            assert verdict.bounded == (brute is not None), k
            if verdict.bounded:
                assert all(bttree.is_fixed(g, verdict.vertex) for g in gens)
            counts[verdict.bounded] += 1
        return f"50 pairs, {counts[1]} bounded, {counts[0]} unbounded"

    check(7, 120, body)


# 8 -----------------------------------------------------------------------------

def test_completion_pipeline():
    def body():
        y = RationalFunction.gen(5)
        one, zero = RationalFunction.constant(5, 1), RationalFunction.constant(5, 0)
        rep = RepPresentation(RatFuncSpec(5, "y"), {"a": Matrix2(y, zero, zero, one / y)}, [])
        at_inf = sl2kit.complete_and_test(rep, INFINITY, 32)
        val = at_inf.completed.generators["a"].trace().valuation()
        assert val == -1 and not at_inf.bounded
        at_two = sl2kit.complete_and_test(rep, Finite(2), 32)
        assert at_two.bounded
        return f"val(tr)={val} at inf unbounded, bounded at y=2"

    check(8, 5, body)


# 9 -----------------------------------------------------------------------------

def bounded_graph(rng, p, n_vertices):
    names = [f"v{i}" for i in range(n_vertices)]
    hs = {u: random_mover(rng, p, 1) for u in names}
    pairs = [(names[i], names[i + 1]) for i in range(n_vertices - 1)]
    pairs += [(rng.choice(names), rng.choice(names)) for _ in range(2)]
    return GainGraph(names, [(u, v, hs[u] @ random_integral_sl2(rng, p, 2) @ hs[v].adjugate()) for u, v in pairs])


def even_vertex(rng, p, max_n):
    v = bttree.random_vertex(rng, p, max_n)
    return v if v.n % 2 == 0 else bttree.parent(v)


def test_harmonic_solver():
    def body():
        rng = random.Random(9)
        for k in range(10):
            G = bounded_graph(rng, 2 + k % 2, 2 + k % 3)
            res = treeharm.minimize(G)
            assert res.converged and res.energy == 0, k
            assert treeharm.reeb_contract(G, res.assignment).is_point
        loop = GainGraph(["u"], [("u", "u", diagonal(3, -1))])
        res = treeharm.minimize(loop)
        verts = bttree.ball(bttree.base_vertex(3), 4)
        brute = min(treeharm.energy(loop, {"u": v}) for v in verts)
        assert res.energy == 4 == brute
        p = 3
        G = GainGraph(
            ["u", "v", "w"],
            [("u", "v", upper(p, ls(p, {-1: 1}))), ("v", "w", lower(p, ls(p, {-2: 2}))), ("w", "w", diagonal(p, 1))],
        )
        for _ in range(100):
            a0 = {u: even_vertex(rng, p, 6) for u in G.vertices}
            a1 = {u: even_vertex(rng, p, 6) for u in G.vertices}
            mid = treeharm.midpoint_assignment(a0, a1)
            assert 2 * treeharm.energy(G, mid) <= treeharm.energy(G, a0) + treeharm.energy(G, a1)
        return "10 bounded graphs at energy 0, loop energy 4 = brute force, 100 midpoint pairs"

    check(9, 120, body)


# 10 ----------------------------------------------------------------------------

def test_hodge_signs():
    gauss, sqrt2 = CMField((0, 1), -1), CMField((-2, 0, 1), -1)

    def diag(a, d):
        return Matrix2(gauss(*a), gauss(0), gauss(0), gauss(*d))

    def body():
        mixed = SesquiForm.from_matrix(gauss, diag((0, 1), (0, -1)))
        signs = [e.sign for e in hodgesign.embedding_signs(mixed)]
        assert signs == [EmbeddingSign.MIXED, EmbeddingSign.MIXED]
        assert hodgesign.polydisk_dimension(mixed) == 1
        definite = SesquiForm.from_matrix(gauss, diag((0, 1), (0, 1)))
        assert hodgesign.polydisk_dimension(definite) == 0
        for targets in itertools.product((1, -1), repeat=2):
            lam = hodgesign.sign_fixing_lambda(sqrt2, targets)
            assert sqrt2.embeddings.signs(lam) == targets
            assert max(abs(c) for c in lam.coords) <= 3
        return "mixed/mixed polydisk 1, definite polydisk 0, 4 sign patterns"

    check(10, 5, body)


# 11 ----------------------------------------------------------------------------

QUADRATIC = [(-2, 0, 1), (-1, -1, 1), (1, 0, 1), (-3, 0, 1)]


def random_element(rng, K):
    den = rng.choice([1, 1, 1, 2, 3])
    return K.from_coords([Fraction(rng.randint(-3, 3), den) for _ in range(K.degree)])


def random_irreducible(rng, K):
    while True:
        a = qmat(1, random_element(rng, K), 0, 1, K) @ qmat(1, 0, random_element(rng, K), 1, K)
        b = qmat(1, 0, random_element(rng, K), 1, K) @ qmat(1, random_element(rng, K), 0, 1, K)
        if not ((a @ b @ a.adjugate() @ b.adjugate()).trace() - 2).is_zero():
            return a, b


def test_integrality_invariance():
    def body():
        rng = random.Random(11)
        verdicts = []
        for k in range(20):
            f = QUADRATIC[k % len(QUADRATIC)]
            K = NumberField(f)
            a, b = random_irreducible(rng, K)
            rep = RepPresentation(NumberSpec(f), {"a": a, "b": b}, [])
            base = integrality.integrality_scan(rep, 4).verdict
            h = qmat(random_element(rng, K) + 2, 1, 1, 1, K)
            if h.det().is_zero():
                h = qmat(1, 1, 0, 1, K)
            moved = integrality.integrality_scan(integrality.conjugate_representation(rep, h), 4).verdict
            other_root = K(-f[1]) - K.gen
            galois = {n: g.map(lambda e: transport(e, K, other_root)) for n, g in rep.generators.items()}
            flipped = integrality.integrality_scan(RepPresentation(rep.spec, galois, []), 4).verdict
            assert base == moved == flipped, k
            verdicts.append(base)
        golden = NumberField((-1, -1, 1))
        rep = RepPresentation(NumberSpec(golden.minpoly), {"a": qmat(golden.gen, 1, -1, 0, golden)}, [])
        assert integrality.integrality_scan(rep, 4).all_integral
        half = RepPresentation(NumberSpec((0, 1)), {"a": qmat(Fraction(1, 2), 1, Fraction(-3, 4), 1)}, [])
        assert not integrality.integrality_scan(half, 4).all_integral
        n = verdicts.count("all-integral")
        return f"20 examples ({n} integral, {20 - n} violations), golden accepted, 1/2 rejected"

    check(11, 30, body)
