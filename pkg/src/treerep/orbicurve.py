"""Orbicurve types and Hurwitz-style bounds on target orbicurves."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from .errors import DegenerateInput, SearchBudgetExceeded

# compact genus-zero spherical types with three or more cone points
PLATONIC = ((2, 2, 2), (3, 3, 2), (4, 3, 2), (5, 3, 2))
DEFAULT_BUDGET = 200_000


class GeomClass(enum.Enum):
    SPHERICAL = "spherical"
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True, order=True)
class OrbicurveData:
    genus: int
    punctures: int
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise ValueError("genus and puncture count must be nonnegative")
        if any(n < 2 for n in self.indices):
            raise ValueError("orbifold indices must be at least 2")
        object.__setattr__(self, "indices", tuple(sorted(self.indices, reverse=True)))

    @property
    def euler_characteristic(self) -> Fraction:
        chi = Fraction(2 - 2 * self.genus - self.punctures)
        for n in self.indices:
            chi -= 1 - Fraction(1, n)
        return chi

    def __str__(self):
        pts = ",".join(map(str, self.indices))
        return f"(g={self.genus}, b={self.punctures}; {pts})"


def orbifold_euler_characteristic(d: OrbicurveData) -> Fraction:
    return d.euler_characteristic


def classify_orbicurve(d: OrbicurveData) -> GeomClass:
    chi = d.euler_characteristic
    if chi < 0:
        return GeomClass.HYPERBOLIC
    if chi == 0 or d.punctures > 0:
        return GeomClass.ELLIPTIC
    # compact with chi > 0: P^1, drops, footballs, (2,2,n) and the platonic triples
    assert d.genus == 0
    k = len(d.indices)
    if k <= 2:
        return GeomClass.SPHERICAL
    if k == 3 and (d.indices[1:] == (2, 2) or d.indices in PLATONIC):
        return GeomClass.SPHERICAL
    raise AssertionError(f"unexpected compact type with positive characteristic: {d}")


def is_hyperbolic(d: OrbicurveData) -> bool:
    return classify_orbicurve(d) is GeomClass.HYPERBOLIC


# --- bounds -----------------------------------------------------------------

@dataclass(frozen=True)
class IndexBound:
    genus: int
    punctures: int
    positive_genus: int
    some_index_at_least_3: int
    two_indices_equal_2: int

    @property
    def value(self) -> int:
        return max(self.positive_genus, self.some_index_at_least_3, self.two_indices_equal_2)


def index_bound_branches(g: int, b: int) -> IndexBound:
    """The three case bounds on the orbifold index at a point in the image of the curve."""
    if g < 0 or b < 0:
        raise ValueError("genus and puncture bound must be nonnegative")
    if g == 0 and b == 0:
        raise DegenerateInput("no hyperbolic target receives a nonconstant map from P^1")
    return IndexBound(
        g,
        b,
        2 * g - 1,
        max(6, 42 * (3 * b + 2 * g - 2)),
        max(2, 6 * (4 * b + 2 * g - 2)),
    )


def hurwitz_index_bound(g: int, b: int) -> int:
    return index_bound_branches(g, b).value


def orbifold_point_bound(g: int, b: int) -> int:
    """K(g, b) = 2(2g - 2 + b) + 4, a conservative cap on the number of cone points."""
    return max(0, 2 * (2 * g - 2 + b) + 4)


def _multiset_count(values: int, k: int) -> int:
    if values <= 0:
        return 1 if k == 0 else 0
    return comb(values + k - 1, k)


def _index_multisets(k: int, top: int):
    # descending tuples with entries in [2, top]
    for combo in combinations_with_replacement(range(top, 1, -1), k):
        yield combo


def enumerate_candidate_types(
    g: int,
    b: int,
    index_bound: int | None = None,
    max_points: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[OrbicurveData]:
    """Every hyperbolic type with genus <= g, punctures <= b, indices <= N, at most K cone points.

    ``index_bound`` and ``max_points`` override N and K (needed when g = b = 0).
    Raises SearchBudgetExceeded when more than ``budget`` candidates would be examined.
    """
    n_max = hurwitz_index_bound(g, b) if index_bound is None else index_bound
    k_max = orbifold_point_bound(g, b) if max_points is None else max_points
    total = sum(_multiset_count(n_max - 1, k) for k in range(k_max + 1)) * (g + 1) * (b + 1)
    if total > budget:
        raise SearchBudgetExceeded(f"{total} candidate types exceed the budget of {budget}")
    out = []
    for gy in range(g + 1):
        for by in range(b + 1):
            for k in range(k_max + 1):
                for idx in _index_multisets(k, n_max):
                    d = OrbicurveData(gy, by, idx)
                    if is_hyperbolic(d):
                        out.append(d)
    return sorted(out)


def _non_hyperbolic_count(gy: int, by: int, n_max: int, k_max: int) -> int:
    """Types with chi >= 0; each cone point costs at least 1/2, so few cases survive."""
    room = Fraction(2 - 2 * gy - by)
    if room < 0:
        return 0
    count = 0

    def extend(prefix_len: int, top: int, used: Fraction):
        nonlocal count
        count += 1
        if prefix_len == k_max:
            return
        for n in range(min(top, n_max), 1, -1):
            cost = 1 - Fraction(1, n)
            if used + cost <= room:
                extend(prefix_len + 1, n, used + cost)

    extend(0, n_max, Fraction(0))
    return count


def count_candidate_types(g: int, b: int, index_bound: int | None = None, max_points: int | None = None) -> int:
    """Size of enumerate_candidate_types without listing it."""
    n_max = hurwitz_index_bound(g, b) if index_bound is None else index_bound
    k_max = orbifold_point_bound(g, b) if max_points is None else max_points
    total = 0
    for gy in range(g + 1):
        for by in range(b + 1):
            all_types = sum(_multiset_count(n_max - 1, k) for k in range(k_max + 1))
            total += all_types - _non_hyperbolic_count(gy, by, n_max, k_max)
    return total
