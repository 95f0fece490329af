import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treerep import hodgesign
from treerep.errors import NumericallySingular, SearchBudgetExceeded
from treerep.hodgesign import CMField, EmbeddingSign, SesquiForm
from treerep.matrix import Matrix2

POS, NEG, MIX = EmbeddingSign.POSITIVE, EmbeddingSign.NEGATIVE, EmbeddingSign.MIXED
GAUSS = CMField((0, 1), -1)  # Q(i), s = i
SQRT2 = CMField((-2, 0, 1), -1)  # Q(sqrt2, i)
GOLDEN = CMField((-1, -1, 1), (-3, 0))  # Q(phi, sqrt(-3))


def form(L, H):
    return SesquiForm.from_matrix(L, H)


def diag(L, a, d):
    return Matrix2(L(a[0], a[1]), L(0), L(0), L(d[0], d[1]))


def test_gaussian_examples():
    mixed = form(GAUSS, diag(GAUSS, (0, 1), (0, -1)))  # diag(i, -i)
    assert [e.sign for e in hodgesign.embedding_signs(mixed)] == [MIX, MIX]
    assert hodgesign.polydisk_dimension(mixed) == 1
    definite = form(GAUSS, diag(GAUSS, (0, 1), (0, 1)))  # diag(i, i)
    signs = [e.sign for e in hodgesign.embedding_signs(definite)]
    assert signs == [NEG, POS]
    assert hodgesign.polydisk_dimension(definite) == 0


def signature_kind(pos_neg):
    return {(2, 0): POS, (0, 2): NEG, (1, 1): MIX}[pos_neg]


@st.composite
def forms(draw, L):
    n = L.real.degree
    coords = [[Fraction(draw(st.integers(-3, 3))) for _ in range(n)] for _ in range(4)]
    H = SesquiForm.from_coords(L, [L.real.from_coords(c) for c in coords])
    return H


@pytest.mark.parametrize("L", [GAUSS, SQRT2, GOLDEN], ids=["gauss", "sqrt2", "golden"])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_exact_signs_match_floating_eigenvalues(L, data):
    H = data.draw(forms(L))
    if H.determinant().is_zero():
        with pytest.raises(NumericallySingular):
            hodgesign.embedding_signs(H)
        return
    for e in hodgesign.embedding_signs(H):
        assert e.sign is signature_kind(hodgesign.numeric_signature(H, e.real_index, e.eps, dps=50))


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_scaling_flips_signs_where_lambda_is_negative(data):
    L = SQRT2
    H = data.draw(forms(L))
    if H.determinant().is_zero():
        return
    lam = L.real.from_coords([data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3))])
    if lam.is_zero():
        return
    table = hodgesign.embedding_signs(H)
    direct = [e.sign for e in hodgesign.embedding_signs(H.scale(lam))]
    assert hodgesign.scale_signs(table, lam, L.embeddings) == direct
    # conjugate embeddings see opposite definite signs, mixed stays mixed
    for e0, e1 in zip(table[::2], table[1::2]):
        assert e1.sign is e0.sign.flipped()


def test_sign_fixing_lambda_all_patterns():
    F = SQRT2.real
    for targets in itertools.product((1, -1), repeat=2):
        lam = hodgesign.sign_fixing_lambda(SQRT2, targets)
        assert SQRT2.embeddings.signs(lam) == targets
        assert max(abs(c) for c in lam.coords) <= 3
    assert hodgesign.sign_fixing_lambda(F, ("+", "-")) == F.from_coords([1, 1])
    with pytest.raises(ValueError):
        hodgesign.sign_fixing_lambda(F, (1,))


def test_sign_search_budget():
    with pytest.raises(SearchBudgetExceeded):
        hodgesign.sign_fixing_lambda(CMField((1, -3, 0, 1), -1), (1, -1, 1), max_height=0)


def test_embeddings_are_sorted_descending():
    roots = SQRT2.embeddings.roots()
    assert roots == sorted(roots, reverse=True)
    assert hodgesign.is_totally_real((-2, 0, 1)) and not hodgesign.is_totally_real((2, 0, 1))
    with pytest.raises(ValueError):
        CMField((-2, 0, 1), 1)


def test_invariant_forms_of_sl2z():
    for L in (GAUSS, SQRT2):
        gens = [Matrix2(L(1), L(1), L(0), L(1)), Matrix2(L(1), L(0), L(-1), L(1))]
        space = hodgesign.invariant_form_space(gens, L, irreducible=True)
        assert len(space) == 1
        H = space[0].matrix
        assert H.a.is_zero() and H.d.is_zero() and (H.b + H.c).is_zero()
        assert hodgesign.is_invariant(space[0], gens)
        assert hodgesign.polydisk_dimension(space[0]) == L.real.degree


def test_compact_unitary_pair_is_definite():
    L = GAUSS
    q = Fraction
    g = Matrix2(L(q(3, 5)), L(0, q(4, 5)), L(0, q(4, 5)), L(q(3, 5)))
    h = Matrix2(L(q(5, 13)), L(q(12, 13)), L(q(-12, 13)), L(q(5, 13)))
    space = hodgesign.invariant_form_space([g, h], L, irreducible=True)
    assert len(space) == 1
    assert hodgesign.polydisk_dimension(space[0]) == 0
    assert {e.sign for e in hodgesign.embedding_signs(space[0])} == {POS, NEG}


def test_invariant_form_needs_real_traces():
    # an invariant form makes every trace conjugation-fixed: tr(gh) = 2 + z
    rng = random.Random(0)
    L = GAUSS
    h = Matrix2(L(1), L(0), L(1), L(1))
    for _ in range(5):
        a, b = rng.randint(-4, 4), rng.randint(1, 4)
        g = Matrix2(L(1), L(a, b), L(0), L(1))
        assert hodgesign.invariant_form_space([g, h], L) == []
        real = Matrix2(L(1), L(a or 1), L(0), L(1))
        assert len(hodgesign.invariant_form_space([real, h], L)) == 1


def test_cm_arithmetic():
    L = SQRT2
    z = L(1, 2) * L.x
    assert (z * z.inverse()) == L(1)
    assert (z * z.conj()).y.is_zero()
    assert (L.s * L.s) == L(-1)
    assert (z ** 3) == z * z * z
