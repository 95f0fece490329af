import itertools

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from treerep import rigidkit, sl2kit
from treerep.arith import NumberField, minimal_polynomial
from treerep.errors import Obstructed
from treerep.sl2kit import ClassKind

POOL = ["u", "-u", "e3", "e4", "e5", "e6", "e5^2", "e8"]


def test_parse_class_specs():
    assert rigidkit.parse_class_spec("u").kind is ClassKind.UNIPOTENT_PLUS
    assert rigidkit.parse_class_spec("-u").kind is ClassKind.UNIPOTENT_MINUS
    assert rigidkit.parse_class_spec("request").is_request
    assert rigidkit.parse_class_spec("e10^3").order == (10, 3)
    assert rigidkit.parse_class_spec("e6^2").order == (3, 1)
    assert str(rigidkit.parse_class_spec("e5^2")) == "e5^2"
    for bad in ("e2", "e4^2", "v", "e"):
        with pytest.raises(ValueError):
            rigidkit.parse_class_spec(bad)


def test_virtual_dimension_counts():
    u, one = rigidkit.parse_class_spec("u"), rigidkit.parse_class_spec("id")
    assert rigidkit.virtual_dimension([u, u, u]) == 0
    assert rigidkit.virtual_dimension([u, u, u, u]) == 2
    assert rigidkit.virtual_dimension([u, u, one]) == -2
    assert rigidkit.is_rigid([u, u, u, one])


def sympy_matrix(M):
    """Exact sympy matrix through a complex embedding of the entries' field."""
    f = M.a.field.minpoly
    if len(f) == 2:
        return sympy.Matrix(2, 2, [sympy.Rational(e.rational_value().numerator, e.rational_value().denominator) for e in M.entries()])
    root = sympy.CRootOf(sympy.Poly(list(reversed(f)), sympy.Symbol("x")), len(f) - 2)
    vals = [sum(sympy.Rational(c.numerator, c.denominator) * root**i for i, c in enumerate(e.coords)) for e in M.entries()]
    return sympy.Matrix(2, 2, vals)


def test_three_unipotent_tuple_matches_known_product():
    T = rigidkit.hypergeometric_build("u", "u", "request")
    assert T.case == "three-unipotent"
    M1, M2, M3 = T.matrices
    prod = [[e.rational_value() for e in row] for row in T.product.rows()]
    assert prod == [[-3, 1], [-4, 1]]
    # independent check of the relation with sympy
    assert sympy_matrix(M1) * sympy_matrix(M2) * sympy_matrix(M3) == sympy.eye(2)
    assert rigidkit.verify_rigid_tuple(M1, M2, M3, T.classes)
    assert [str(c) for c in T.realized_classes()] == ["u", "u", "-u"]


def test_two_unipotent_and_torus_over_golden_field():
    T = rigidkit.hypergeometric_build("u", "u", "e5")
    assert T.field.minpoly == (-1, 1, 1)
    assert rigidkit.verify_rigid_tuple(*T.matrices, T.classes)
    assert minimal_polynomial(T.matrices[2].trace()) == minimal_polynomial(NumberField((-1, 1, 1)).gen)


def test_obstructions():
    with pytest.raises(Obstructed):
        rigidkit.hypergeometric_build("u", "u", "u")
    with pytest.raises(Obstructed):
        rigidkit.hypergeometric_build("u", "id", "u")
    with pytest.raises(ValueError):
        rigidkit.hypergeometric_build("request", "u", "u")
    with pytest.raises(ValueError):
        rigidkit.hypergeometric_build("e3", "e4", "request")


def test_finite_icosahedral_triple_is_not_dense():
    # projective orders (3, 2, 5): the image is finite, so density must not be certified
    T = rigidkit.hypergeometric_build("e3", "e4", "e5")
    assert (T.matrices[0] @ T.matrices[1] @ T.matrices[2]).is_identity()
    assert not rigidkit.verify_rigid_tuple(*T.matrices, T.classes)


def test_hyperbolic_triangle_triple():
    T = rigidkit.hypergeometric_build("e3", "e4", "e7")
    assert rigidkit.verify_rigid_tuple(*T.matrices, T.classes)
    assert not rigidkit.verify_rigid_tuple(*T.matrices, T.classes, max_word_len=2)


def realizes(T, specs):
    M = T.matrices
    return (M[0] @ M[1] @ M[2]).is_identity() and all(c.matches(m) for c, m in zip(specs, M))


@settings(max_examples=40, deadline=None)
@given(st.tuples(*[st.sampled_from(POOL)] * 3))
def test_build_realizes_every_ordering(triple):
    specs = [rigidkit.parse_class_spec(s) for s in triple]
    outcomes = []
    for perm in itertools.permutations(range(3)):
        arranged = [specs[i] for i in perm]
        try:
            T = rigidkit.hypergeometric_build(*arranged)
        except Obstructed:
            outcomes.append("obstructed")
            continue
        except ValueError as e:
            if "degree" in str(e):
                return
            raise
        assert realizes(T, arranged)
        assert rigidkit._irreducible(T.matrices[0], T.matrices[1])
        outcomes.append("built")
    # whether an irreducible tuple exists does not depend on the ordering
    assert len(set(outcomes)) == 1


def test_class_spec_of_matrix():
    T = rigidkit.hypergeometric_build("u", "u", "request")
    assert rigidkit.class_spec_of(T.matrices[2]).kind is ClassKind.UNIPOTENT_MINUS
    rep = T.to_rep()
    assert rep.relators == ["abc"] and rep.evaluate("abc").is_identity()
    K = NumberField((-1, 1, 1))
    assert rigidkit.torsion_class_of_trace(K.gen).kind is ClassKind.SEMISIMPLE
    with pytest.raises(ValueError):
        rigidkit.torsion_class_of_trace(sl2kit.rationals()(3))
