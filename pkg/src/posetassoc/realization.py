"""Half-space realizations of poset associahedra and related polytopes.

All numbers are :class:`fractions.Fraction`.  A point is a tuple of
fractions ordered like the ``variables`` of the system it belongs to.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Hashable, Iterable, Sequence

from . import linalg
from .errors import (
    BoundednessError,
    EpsilonRangeError,
    NotConnectedError,
    NotGenericError,
    SingularSystemError,
)
from .poset import Poset, _bits
from .tubings import Tube, TubingComplex

VARIANTS = ("covers", "all_pairs", "minmax")

RationalPoint = tuple  # tuple[Fraction, ...]


@dataclass(frozen=True)
class LinearFunctional:
    variables: tuple
    coefficients: tuple
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        object.__setattr__(self, "constant", Fraction(self.constant))
        if len(self.coefficients) != len(self.variables):
            raise ValueError("one coefficient per variable expected")

    @classmethod
    def from_dict(cls, variables: Sequence, coeffs: dict, constant=0) -> "LinearFunctional":
        return cls(tuple(variables), tuple(coeffs.get(v, 0) for v in variables), constant)

    def __call__(self, point: Sequence) -> Fraction:
        return sum((c * x for c, x in zip(self.coefficients, point)), self.constant)

    def __neg__(self):
        return LinearFunctional(self.variables, tuple(-c for c in self.coefficients), -self.constant)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def as_dict(self) -> dict:
        return {v: c for v, c in zip(self.variables, self.coefficients) if c}


@dataclass(frozen=True)
class Constraint:
    """``functional(p) >= rhs`` for inequalities, ``== rhs`` for equalities."""

    functional: LinearFunctional
    rhs: Fraction
    label: str

    def row(self) -> tuple[tuple, Fraction]:
        """Coefficients and right-hand side with the constant moved across."""
        return self.functional.coefficients, Fraction(self.rhs) - self.functional.constant

    def slack(self, point: Sequence) -> Fraction:
        return self.functional(point) - self.rhs


@dataclass(frozen=True)
class HalfSpaceSystem:
    variables: tuple
    equalities: tuple = ()
    inequalities: tuple = ()

    def __post_init__(self):
        labels = [c.label for c in self.equalities + self.inequalities]
        if len(set(labels)) != len(labels):
            raise ValueError("constraint labels must be unique")

    def inequality(self, label: str) -> Constraint:
        for c in self.inequalities:
            if c.label == label:
                return c
        raise KeyError(label)

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.inequalities]

    def contains(self, point: Sequence) -> bool:
        return all(c.slack(point) == 0 for c in self.equalities) and all(
            c.slack(point) >= 0 for c in self.inequalities
        )

    def tight(self, point: Sequence) -> frozenset:
        return frozenset(c.label for c in self.inequalities if c.slack(point) == 0)


@dataclass(frozen=True)
class FHVector:
    f: tuple
    h: tuple = field(default=())

    @property
    def dimension(self) -> int:
        return len(self.f) - 1


def _check_variant(variant: str):
    if variant not in VARIANTS:
        raise ValueError(f"unknown alpha variant {variant!r}; choose from {VARIANTS}")


def _alpha_coeffs(P: Poset, mask: int, variant: str) -> list[int]:
    coeffs = [0] * P.n
    if variant == "covers":
        pairs = [(i, j) for i, j in P.covers if mask >> i & 1 and mask >> j & 1]
    elif variant == "all_pairs":
        pairs = [(i, j) for i in _bits(mask) for j in _bits(P.up[i] & mask) if j != i]
    else:
        lo, hi = P.minima_mask(mask), P.maxima_mask(mask)
        pairs = [(i, j) for i in _bits(lo) for j in _bits(P.up[i] & hi) if j != i]
    for i, j in pairs:
        coeffs[j] += 1
        coeffs[i] -= 1
    return coeffs


def alpha(P: Poset, subset: Iterable[Hashable], variant: str = "covers") -> LinearFunctional:
    """The functional measuring how spread out ``subset`` is.

    ``covers`` sums ``p_j - p_i`` over cover relations inside the subset,
    ``all_pairs`` over all strict relations inside it, and ``minmax`` over
    relations from its minima to its maxima.
    """
    _check_variant(variant)
    mask = subset.mask if isinstance(subset, Tube) else P.mask(subset)
    return LinearFunctional(P.elements, tuple(_alpha_coeffs(P, mask, variant)))


def threshold(n: int, size: int) -> Fraction:
    return Fraction(n ** (2 * size))


def diameter(point: Sequence, indices: Iterable[int]) -> Fraction:
    values = [point[i] for i in indices]
    return max(values) - min(values) if values else Fraction(0)


def _require_connected(P: Poset):
    if P.n < 2 or not P.connected_mask(P.full):
        raise NotConnectedError("the poset must be connected with at least 2 elements")


def _sum_zero(variables) -> Constraint:
    return Constraint(LinearFunctional(tuple(variables), (1,) * len(variables)), Fraction(0), "sum")


def _tube_label(P: Poset, mask: int) -> str:
    return "{" + ",".join(map(str, P.members(mask))) + "}"


def build_associahedron(P: Poset, variant: str = "covers") -> HalfSpaceSystem:
    """Sum zero, alpha_P = n^(2n), and alpha_tau >= n^(2|tau|) for every proper tube."""
    _require_connected(P)
    _check_variant(variant)
    n = P.n
    whole = Constraint(
        LinearFunctional(P.elements, _alpha_coeffs(P, P.full, variant)),
        threshold(n, n),
        _tube_label(P, P.full),
    )
    inequalities = tuple(
        Constraint(
            LinearFunctional(P.elements, _alpha_coeffs(P, t.mask, variant)),
            threshold(n, t.size),
            _tube_label(P, t.mask),
        )
        for t in TubingComplex(P).tubes
    )
    return HalfSpaceSystem(P.elements, (_sum_zero(P.elements), whole), inequalities)


def _tube_masks(P: Poset, tubing) -> list[int]:
    masks = []
    for t in tubing:
        masks.append(t.mask if isinstance(t, Tube) else P.mask(t))
    return masks


def vertex_of_tubing(P: Poset, tubing, variant: str = "covers") -> RationalPoint:
    """The point where the hyperplanes of a maximal tubing and of P itself meet."""
    _check_variant(variant)
    masks = _tube_masks(P, tubing) + [P.full]
    rows = [[1] * P.n] + [_alpha_coeffs(P, m, variant) for m in masks]
    rhs = [0] + [threshold(P.n, bin(m).count("1")) for m in masks]
    if len(rows) != P.n:
        raise SingularSystemError(
            f"tubing with {len(masks) - 1} tubes does not give a square system on {P.n} elements"
        )
    return linalg.solve(rows, rhs)


def tubing_vertices(P: Poset, variant: str = "covers", complex_: TubingComplex | None = None) -> dict:
    """Map each maximal tubing (as a tuple of tube indices) to its vertex."""
    cx = complex_ or TubingComplex(P)
    return {t: vertex_of_tubing(P, cx.as_tubes(t), variant) for t in cx.maximal_tubings()}


def evaluate(f: LinearFunctional, point: Sequence) -> Fraction:
    return f(point)


def strictly_interior(P: Poset, point: Sequence, tube, variant: str = "covers") -> bool:
    mask = tube.mask if isinstance(tube, Tube) else P.mask(tube)
    value = alpha(P, P.members(mask), variant)(point)
    return value > threshold(P.n, bin(mask).count("1"))


def _cover_constraints(P: Poset) -> tuple:
    out = []
    for i, j in P.covers:
        coeffs = [0] * P.n
        coeffs[j], coeffs[i] = 1, -1
        out.append(
            Constraint(
                LinearFunctional(P.elements, coeffs),
                Fraction(0),
                f"cover {P.elements[i]}<{P.elements[j]}",
            )
        )
    return tuple(out)


def order_polytope(P: Poset, c=1) -> HalfSpaceSystem:
    """Order-preserving maps summing to zero with alpha_P fixed to ``c``."""
    _require_connected(P)
    whole = Constraint(
        LinearFunctional(P.elements, _alpha_coeffs(P, P.full, "covers")),
        Fraction(c),
        _tube_label(P, P.full),
    )
    return HalfSpaceSystem(P.elements, (_sum_zero(P.elements), whole), _cover_constraints(P))


def _endpoint_equalities(P: Poset) -> tuple:
    if not P.is_bounded():
        raise BoundednessError("the poset needs a unique minimum and a unique maximum")
    lo, hi = P.index[P.bottom()], P.index[P.top()]
    e_lo = [0] * P.n
    e_hi = [0] * P.n
    e_lo[lo] = 1
    e_hi[hi] = 1
    return (
        Constraint(LinearFunctional(P.elements, e_lo), Fraction(0), f"bottom {P.elements[lo]}"),
        Constraint(LinearFunctional(P.elements, e_hi), Fraction(1), f"top {P.elements[hi]}"),
    )


def stanley_normalized(P: Poset) -> HalfSpaceSystem:
    """Order polytope normalised by ``p_bottom = 0`` and ``p_top = 1``."""
    _require_connected(P)
    return HalfSpaceSystem(P.elements, _endpoint_equalities(P), _cover_constraints(P))


def epsilon_realization(P: Poset, epsilon, strict: bool = True) -> HalfSpaceSystem:
    """The associahedron of a bounded poset sitting inside its Stanley order polytope.

    Each proper tube cuts ``alpha_tau(p) >= epsilon^(n - |tau|)``.  With
    ``strict`` the guaranteed range ``0 < epsilon < 1/n^2`` is enforced;
    otherwise only ``0 < epsilon < 1`` and the caller is expected to check
    the combinatorics.
    """
    _require_connected(P)
    eps = Fraction(epsilon)
    n = P.n
    limit = Fraction(1, n * n) if strict else Fraction(1)
    if not 0 < eps < limit:
        raise EpsilonRangeError(f"epsilon must satisfy 0 < epsilon < {limit}, got {eps}")
    equalities = _endpoint_equalities(P)
    cuts = tuple(
        Constraint(
            LinearFunctional(P.elements, _alpha_coeffs(P, t.mask, "covers")),
            eps ** (n - t.size),
            _tube_label(P, t.mask),
        )
        for t in TubingComplex(P).tubes
    )
    return HalfSpaceSystem(P.elements, equalities, _cover_constraints(P) + cuts)


def h_from_f(f: Sequence[int]) -> tuple[int, ...]:
    """Solve sum f_i t^i = sum h_i (t+1)^i for h."""
    d = len(f) - 1
    return tuple(
        sum(f[i] * comb(i, k) * (-1) ** (i - k) for i in range(k, d + 1)) for k in range(d + 1)
    )


def f_from_h(h: Sequence[int]) -> tuple[int, ...]:
    d = len(h) - 1
    return tuple(sum(h[i] * comb(i, k) for i in range(k, d + 1)) for k in range(d + 1))


def f_vector(P: Poset) -> FHVector:
    """Face numbers from tubing counts: a tubing with k tubes is a face of dimension d - k."""
    cx = TubingComplex(P)
    d = cx.dimension
    f = [0] * (d + 1)
    for t in cx.tubings():
        f[d - len(t)] += 1
    return FHVector(tuple(f), h_from_f(f))


def vertex_graph(cx: TubingComplex) -> dict:
    """Adjacency between maximal tubings sharing all but one tube."""
    maximal = cx.maximal_tubings()
    d = cx.dimension
    graph = {t: [] for t in maximal}
    by_face: dict = {}
    for t in maximal:
        for k in range(len(t)):
            by_face.setdefault(t[:k] + t[k + 1:], []).append(t)
    for members in by_face.values():
        for a in members:
            for b in members:
                if a != b:
                    graph[a].append(b)
    assert all(len(v) == d for v in graph.values()), "vertex graph of a simple polytope is d-regular"
    return graph


def h_vector_by_outdegree(P: Poset, direction, variant: str = "covers") -> tuple[int, ...]:
    """Histogram of outdegrees when edges point toward larger ``direction`` values."""
    if not isinstance(direction, LinearFunctional):
        direction = LinearFunctional(P.elements, tuple(direction))
    cx = TubingComplex(P)
    verts = tubing_vertices(P, variant, cx)
    graph = vertex_graph(cx)
    value = {t: direction(p) for t, p in verts.items()}
    d = cx.dimension
    hist = [0] * (d + 1)
    for t, nbrs in graph.items():
        out = 0
        for s in nbrs:
            if value[s] == value[t]:
                raise NotGenericError(
                    f"direction takes the same value on adjacent vertices {cx.as_tubes(t)} "
                    f"and {cx.as_tubes(s)}; pick another direction"
                )
            out += value[s] > value[t]
        hist[out] += 1
    if d == 0 and direction.is_zero():
        raise NotGenericError("the zero functional is not generic")
    expected = f_vector(P).h
    assert tuple(hist) == expected, f"outdegree histogram {hist} differs from h-vector {expected}"
    return tuple(hist)
