"""Rigidity dimension counts and explicit rank-two hypergeometric tuples."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd

from .arith.numberfield import (
    NumberField,
    NumberFieldElem,
    chebyshev_trace,
    cyclotomic_field,
    cyclotomic_polynomial,
    euler_phi,
    minimal_polynomial,
    real_cyclotomic_field,
    real_cyclotomic_polynomial,
)
from .errors import Obstructed
from .matrix import Matrix2, is_zero
from .rep import NumberSpec, RepPresentation
from .sl2kit import ClassKind, conjugacy_class_kind, cyclotomic_trace_order, rationals, zariski_density_check

SL2_DIM = 3
UNIPOTENT = (ClassKind.UNIPOTENT_PLUS, ClassKind.UNIPOTENT_MINUS)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class ClassSpec:
    """Requested local monodromy at one puncture.

    Semisimple classes carry the eigenvalue zeta_m^k as ``order = (m, k)``
    with gcd(m, k) = 1 and m >= 3, or only a trace.  ``REQUEST`` leaves the
    class free (it is whatever the product forces).
    """

    kind: ClassKind | None
    order: tuple[int, int] | None = None
    trace: NumberFieldElem | None = None

    def __post_init__(self):
        if self.kind is ClassKind.SEMISIMPLE:
            if self.order is None and self.trace is None:
                raise ValueError("semisimple class needs an eigenvalue order or a trace")
            if self.order is not None:
                m, k = self.order
                if m < 3 or gcd(m, k) != 1:
                    raise ValueError(f"eigenvalue order {self.order} is not a primitive root of unity other than +-1")

    @classmethod
    def root_of_unity(cls, m: int, k: int = 1) -> ClassSpec:
        g = gcd(m, k % m)
        return cls(ClassKind.SEMISIMPLE, (m // g, (k % m) // g))

    @property
    def is_request(self) -> bool:
        return self.kind is None

    @property
    def is_unipotent(self) -> bool:
        return self.kind in UNIPOTENT

    @property
    def sign(self) -> int:
        return -1 if self.kind in (ClassKind.UNIPOTENT_MINUS, ClassKind.MINUS_IDENTITY) else 1

    def target_trace(self, fld: NumberField | None = None):
        """Trace of the class, inside ``fld`` when given."""
        if self.kind is ClassKind.SEMISIMPLE:
            if self.order is None:
                return self.trace
            m, k = self.order
            if fld is None or fld.minpoly == real_cyclotomic_polynomial(m):
                return chebyshev_trace(real_cyclotomic_field(m).gen, k)
            for big in range(m, 25 * m + 1, m):
                if euler_phi(big) == fld.degree and fld.minpoly == cyclotomic_polynomial(big):
                    z = fld.gen ** (k * big // m)
                    return z + z.inverse()
            return None
        return 2 * self.sign

    def matches(self, M: Matrix2) -> bool:
        if self.is_request:
            return True
        got = conjugacy_class_kind(M)
        if got.kind is not self.kind:
            return False
        if self.kind is not ClassKind.SEMISIMPLE:
            return True
        tr = M.trace()
        want = self.target_trace(tr.field)
        if want is None or want.field is not tr.field:
            # different presentations: compare up to Galois conjugacy
            want = self.target_trace() if want is None else want
            return minimal_polynomial(want) == minimal_polynomial(tr)
        return is_zero(want - tr)

    def __str__(self):
        if self.is_request:
            return "request"
        if self.kind is ClassKind.SEMISIMPLE:
            if self.order is None:
                return f"trace({self.trace})"
            m, k = self.order
            return f"e{m}" if k == 1 else f"e{m}^{k}"
        return {
            ClassKind.IDENTITY: "id",
            ClassKind.MINUS_IDENTITY: "-id",
            ClassKind.UNIPOTENT_PLUS: "u",
            ClassKind.UNIPOTENT_MINUS: "-u",
        }[self.kind]


REQUEST = ClassSpec(None)
_SPEC_RE = re.compile(r"^e(\d+)(?:\^(-?\d+))?$")


def parse_class_spec(text: str) -> ClassSpec:
    """'u', '-u', 'id', '-id', 'e<m>' or 'e<m>^<k>' (eigenvalue zeta_m^k), 'request'."""
    s = text.strip().lower()
    named = {
        "u": ClassKind.UNIPOTENT_PLUS,
        "u+": ClassKind.UNIPOTENT_PLUS,
        "-u": ClassKind.UNIPOTENT_MINUS,
        "u-": ClassKind.UNIPOTENT_MINUS,
        "id": ClassKind.IDENTITY,
        "1": ClassKind.IDENTITY,
        "-id": ClassKind.MINUS_IDENTITY,
        "-1": ClassKind.MINUS_IDENTITY,
    }
    if s in named:
        return ClassSpec(named[s])
    if s in ("request", "?"):
        return REQUEST
    m = _SPEC_RE.match(s)
    if m:
        order = int(m.group(1))
        k = int(m.group(2) or 1)
        if order // gcd(order, k % order) < 3:
            raise ValueError(f"e{order}^{k} has eigenvalue +-1; use id/-id or u/-u")
        return ClassSpec.root_of_unity(order, k)
    raise ValueError(f"unknown class spec {text!r}")


def parse_class_list(text: str) -> list[ClassSpec]:
    return [parse_class_spec(part) for part in text.split(",") if part.strip()]


def class_spec_of(M: Matrix2) -> ClassSpec:
    """Class of a concrete matrix; semisimple eigenvalue orders recovered when torsion."""
    c = conjugacy_class_kind(M)
    if c.kind is not ClassKind.SEMISIMPLE:
        return ClassSpec(c.kind)
    return ClassSpec(ClassKind.SEMISIMPLE, trace=c.trace)


# --- dimension counts ---------------------------------------------------------

def class_dimension(kind) -> int:
    if isinstance(kind, ClassSpec):
        kind = kind.kind
    if kind in (ClassKind.IDENTITY, ClassKind.MINUS_IDENTITY):
        return 0
    return 2


def virtual_dimension(data) -> int:
    """Sum of class dimensions minus 2 dim SL(2); zero exactly for rigid genus-zero data."""
    return sum(class_dimension(k) for k in data) - 2 * SL2_DIM


def is_rigid(data) -> bool:
    return virtual_dimension(data) == 0


# --- explicit tuples --------------------------------------------------------

@dataclass
class RigidTuple:
    matrices: tuple[Matrix2, Matrix2, Matrix2]
    classes: tuple[ClassSpec, ClassSpec, ClassSpec]
    case: str
    arrangement: list[str] = field(default_factory=list)

    @property
    def product(self) -> Matrix2:
        M1, M2, _ = self.matrices
        return M1 @ M2

    @property
    def field(self) -> NumberField:
        return self.matrices[0].a.field

    def realized_classes(self) -> list[ClassSpec]:
        return [c if not c.is_request else class_spec_of(M) for c, M in zip(self.classes, self.matrices)]

    def to_rep(self, names: str = "abc") -> RepPresentation:
        gens = dict(zip(names, self.matrices))
        return RepPresentation(NumberSpec(self.field.minpoly), gens, list(names), [names])


def _as_q(e: NumberFieldElem) -> NumberFieldElem:
    """Move degree-one elements into the canonical copy of Q."""
    if e.field.degree == 1 and e.field.minpoly != (0, 1):
        return rationals()(e.rational_value())
    return e


def _mat(a, b, c, d, fld: NumberField) -> Matrix2:
    return Matrix2(*(_as_q(fld(x)) if not isinstance(x, NumberFieldElem) else _as_q(x) for x in (a, b, c, d)))


def _irreducible(M1: Matrix2, M2: Matrix2) -> bool:
    comm = M1 @ M2 @ M1.adjugate() @ M2.adjugate()
    return not is_zero(comm.trace() - 2)


def _close(M1: Matrix2, M2: Matrix2) -> tuple[Matrix2, Matrix2, Matrix2]:
    return M1, M2, (M1 @ M2).adjugate()


def _two_unipotent(s1: int, s2: int, target: ClassSpec) -> tuple[Matrix2, Matrix2, Matrix2]:
    """M1 = s1 [[1,1],[0,1]], M2 = s2 [[1,0],[b,1]] with tr(M1 M2) = s1 s2 (2 + b)."""
    tau = target.target_trace()
    if isinstance(tau, int):
        fld = rationals()
    else:
        fld = tau.field
    b = s1 * s2 * tau - 2
    if is_zero(fld(b) if isinstance(b, int) else b):
        raise Obstructed("the requested classes only admit a reducible (upper triangular) tuple")
    M1 = _mat(s1, s1, 0, s1, fld)
    M2 = _mat(s2, 0, s2 * b, s2, fld)
    return _close(M1, M2)


def _torus_pair(c1: ClassSpec, c2: ClassSpec, c3: ClassSpec) -> tuple[Matrix2, Matrix2, Matrix2]:
    """M1 = [[a,1],[0,1/a]], M2 = [[b,0],[x,1/b]], x = tr(target) - (ab + 1/(ab))."""
    big = 1
    for c in (c1, c2, c3):
        if c.kind is ClassKind.SEMISIMPLE:
            if c.order is None:
                raise ValueError("torus classes need eigenvalue orders (m, k) for this construction")
            big = _lcm(big, c.order[0])
    fld = cyclotomic_field(big)
    alpha = fld.gen ** (c1.order[1] * big // c1.order[0])
    beta = fld.gen ** (c2.order[1] * big // c2.order[0])
    ab = alpha * beta
    target = c3.target_trace(fld)
    if isinstance(target, int):
        target = fld(target)
    x = target - (ab + ab.inverse())
    if x.is_zero():
        raise Obstructed("x = 0: the two torus matrices share an eigenline, so the tuple is reducible")
    M1 = _mat(alpha, 1, 0, alpha.inverse(), fld)
    M2 = _mat(beta, 0, x, beta.inverse(), fld)
    if not _irreducible(M1, M2):
        raise Obstructed("eigenvalues admit a reducible tuple with these classes; no irreducible one exists")
    return _close(M1, M2)


def _permutations_to_canonical(classes):
    """Yield (arrangement, index map, reversed?) for the 6 orderings reachable by rotation and reversal."""
    for rev in (False, True):
        seq = list(reversed(classes)) if rev else list(classes)
        idx = [2, 1, 0] if rev else [0, 1, 2]
        for r in range(3):
            yield seq[r:] + seq[:r], idx[r:] + idx[:r], rev


def _build_canonical(c1: ClassSpec, c2: ClassSpec, c3: ClassSpec):
    """Return (case name, matrices) when (c1, c2, c3) is in a directly solvable arrangement, else None."""
    u1, u2 = c1.is_unipotent, c2.is_unipotent
    if u1 and u2:
        if c3.is_request or c3.is_unipotent:
            if c3.is_unipotent and c3.sign != -c1.sign * c2.sign:
                raise Obstructed(
                    "three unipotent classes need an odd number with eigenvalue -1; "
                    "otherwise only reducible tuples exist"
                )
            target = ClassSpec(ClassKind.UNIPOTENT_MINUS if c1.sign * c2.sign > 0 else ClassKind.UNIPOTENT_PLUS)
            return "three-unipotent", _two_unipotent(c1.sign, c2.sign, target)
        if c3.kind is ClassKind.SEMISIMPLE:
            return "two-unipotent-torus", _two_unipotent(c1.sign, c2.sign, c3)
        return None
    s = lambda c: c.kind is ClassKind.SEMISIMPLE
    if s(c1) and s(c2) and (c3.is_unipotent or s(c3)):
        return ("one-unipotent-two-tori" if c3.is_unipotent else "three-tori"), _torus_pair(c1, c2, c3)
    return None


def hypergeometric_build(c1, c2, c3) -> RigidTuple:
    """Explicit irreducible tuple M1 M2 M3 = 1 with M_i in the requested classes.

    Handles three unipotent classes, two unipotent plus a torus, one unipotent
    plus two tori and three tori.  Entries are algebraic integers.  'request'
    is only allowed for the third class with two unipotent classes.
    """
    classes = [c if isinstance(c, ClassSpec) else parse_class_spec(c) for c in (c1, c2, c3)]
    if any(c.kind in (ClassKind.IDENTITY, ClassKind.MINUS_IDENTITY) for c in classes):
        raise Obstructed("a central class leaves fewer than three nontrivial classes, so the image is abelian")
    if classes[0].is_request or classes[1].is_request:
        raise ValueError("only the third class may be 'request'")
    if classes[2].is_request and not (classes[0].is_unipotent and classes[1].is_unipotent):
        raise ValueError("'request' is supported for the third class after two unipotent classes")
    for arranged, idx, rev in _permutations_to_canonical(classes):
        if arranged[2].is_request and idx[2] != 2:
            continue
        built = _build_canonical(*arranged)
        if built is None:
            continue
        case, mats = built
        steps = []
        if rev:
            mats = tuple(M.adjugate() for M in reversed(mats))
            idx = list(reversed(idx))
            steps.append("reversed with inverses")
        # mats[j] realizes classes[idx[j]] for the relation mats[0] mats[1] mats[2] = 1;
        # rotate so position i carries classes[i]
        start = idx.index(0)
        mats = mats[start:] + mats[:start]
        if start:
            steps.append(f"rotated by {start}")
        return RigidTuple(tuple(mats), tuple(classes), case, steps)
    raise ValueError(f"no construction for classes {', '.join(map(str, classes))}")


def verify_rigid_tuple(M1: Matrix2, M2: Matrix2, M3: Matrix2, data, max_word_len: int = 4) -> bool:
    """Product is 1, classes match, the pair is certified dense, and the data is rigid."""
    data = [c if isinstance(c, ClassSpec) else parse_class_spec(c) for c in data]
    if len(data) != 3:
        return False
    if not (M1 @ M2 @ M3).is_identity():
        return False
    if not all(c.matches(M) for c, M in zip(data, (M1, M2, M3))):
        return False
    realized = [c if not c.is_request else class_spec_of(M) for c, M in zip(data, (M1, M2, M3))]
    if virtual_dimension(realized) != 0:
        return False
    return zariski_density_check([M1, M2], max_word_len).dense


def torsion_class_of_trace(tr) -> ClassSpec:
    """ClassSpec for a semisimple trace that is a root-of-unity trace."""
    m = cyclotomic_trace_order(tr)
    if m is None or m <= 2:
        raise ValueError(f"{tr} is not the trace of a root of unity other than +-1")
    return ClassSpec(ClassKind.SEMISIMPLE, trace=tr)
