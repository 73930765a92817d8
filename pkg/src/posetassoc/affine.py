"""Affine posets of order n and the half-space realization of their cyclohedra.

An affine poset lives on the integers.  Writing ``i = r + a*n`` with
residue ``0 <= r < n``, the order is determined by the residue digraph:
each generator ``(r, j)`` becomes an arc ``r -> j mod n`` of weight
``j div n``, and ``r + a*n <= s + b*n`` holds iff some walk from ``r`` to
``s`` has total weight at most ``b - a``.  The minimum walk weights are
computed once with Floyd-Warshall, so comparisons are exact without any
integer window.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import CycleError, NotConnectedError, NotStronglyConnectedError, SingularSystemError
from .realization import Constraint, HalfSpaceSystem, LinearFunctional, threshold

INF = float("inf")


class AffinePoset:
    """Affine poset of order ``n`` generated by periodic relations.

    ``generators`` are pairs ``(i, j)`` with ``0 <= i < n`` and ``j`` any
    other integer, read as ``i + k*n <= j + k*n`` for all k.  The relations
    ``i <= i + n`` are always added.
    """

    def __init__(self, n: int, generators: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValueError("order must be at least 1")
        self.n = n
        gens = set()
        for i, j in generators:
            i, j = int(i), int(j)
            if i == j:
                continue
            shift = i // n
            gens.add((i - shift * n, j - shift * n))
        for r in range(n):
            gens.add((r, r + n))
        self.generators = tuple(sorted(gens))

        dist = [[INF] * n for _ in range(n)]
        for r in range(n):
            dist[r][r] = 0
        arcs = [(i, j % n, j // n) for i, j in self.generators]
        for i, s, w in arcs:
            if i != s and w < dist[i][s]:
                dist[i][s] = w
        for k in range(n):
            for a in range(n):
                if dist[a][k] == INF:
                    continue
                for b in range(n):
                    if dist[a][k] + dist[k][b] < dist[a][b]:
                        dist[a][b] = dist[a][k] + dist[k][b]
        # a nontrivial closed walk of weight <= 0 breaks antisymmetry
        for r, s, w in arcs:
            if w + dist[s][r] <= 0:
                raise CycleError(
                    f"generators force {r} <= {s + w * n} <= {r} (or below itself after shifting)"
                )
        for a in range(n):
            if any(dist[a][b] == INF for b in range(n)):
                raise NotStronglyConnectedError(
                    f"residue {a} never lies below some other residue class"
                )
        self.dist = tuple(tuple(int(x) for x in row) for row in dist)
        self.cover_offsets = self._compute_covers()

    def __repr__(self):
        return f"AffinePoset(n={self.n}, generators={list(self.generators)})"

    def __eq__(self, other):
        return isinstance(other, AffinePoset) and (self.n, self.generators) == (other.n, other.generators)

    def __hash__(self):
        return hash((self.n, self.generators))

    @property
    def period_constant(self) -> int:
        return self.n ** (2 * (self.n + 1))

    def leq(self, i: int, j: int) -> bool:
        n = self.n
        return self.dist[i % n][j % n] <= j // n - i // n

    def less(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    def between(self, i: int, j: int) -> list[int]:
        """All k with i <= k <= j (a finite interval)."""
        if not self.leq(i, j):
            return []
        n = self.n
        out = []
        a, b = i // n, j // n
        for t in range(n):
            lo = a + self.dist[i % n][t]
            hi = b - self.dist[t][j % n]
            out.extend(t + c * n for c in range(lo, hi + 1))
        return sorted(out)

    def _compute_covers(self) -> tuple[tuple[int, int], ...]:
        # every cover is a generator arc, since intervals are finite
        offsets = set()
        for i, j in self.generators:
            if self.less(i, j) and len(self.between(i, j)) == 2:
                offsets.add((i, j - i))
        return tuple(sorted(offsets))

    def upper_covers(self, i: int) -> list[int]:
        r, base = i % self.n, i - i % self.n
        return [base + r + d for (s, d) in self.cover_offsets if s == r]

    def lower_covers(self, j: int) -> list[int]:
        out = []
        for s, d in self.cover_offsets:
            i = j - d
            if i % self.n == s:
                out.append(i)
        return out

    def neighbours(self, i: int) -> list[int]:
        return self.upper_covers(i) + self.lower_covers(i)

    def is_cover(self, i: int, j: int) -> bool:
        return (i % self.n, j - i) in self.cover_offsets

    # -- finite subsets ------------------------------------------------------

    def is_connected_set(self, members: Iterable[int]) -> bool:
        members = set(members)
        if not members:
            return False
        start = min(members)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.neighbours(x):
                if y in members and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen == members

    def is_convex_set(self, members: Iterable[int]) -> bool:
        members = set(members)
        for a in members:
            for c in members:
                if a != c and self.leq(a, c):
                    if any(b not in members for b in self.between(a, c)):
                        return False
        return True

    def is_tube(self, members: Iterable[int]) -> bool:
        members = frozenset(members)
        residues = {x % self.n for x in members}
        return (
            len(members) >= 2
            and len(residues) == len(members)
            and self.is_connected_set(members)
            and self.is_convex_set(members)
        )

    def set_precedes(self, A: Iterable[int], B: Iterable[int]) -> bool:
        return any(self.less(a, b) for a in A for b in B)


def build_affine_poset(n: int, generators: Iterable[tuple[int, int]] = ()) -> AffinePoset:
    return AffinePoset(n, generators)


def affine_chain(n: int) -> AffinePoset:
    """The integers in their usual order, viewed as an affine poset of order n."""
    return AffinePoset(n, [(i, i + 1) for i in range(n)])


@dataclass(frozen=True, order=True)
class AffineTube:
    """Canonical representative of a tube orbit: the minimum member is in 0..n-1."""

    members: tuple

    @classmethod
    def canonical(cls, members: Iterable[int], n: int) -> "AffineTube":
        members = sorted(members)
        shift = (members[0] // n) * n
        return cls(tuple(m - shift for m in members))

    def shifted(self, k: int, n: int) -> frozenset:
        return frozenset(m + k * n for m in self.members)

    @property
    def size(self) -> int:
        return len(self.members)

    def sort_key(self):
        return (self.size, self.members)

    def __repr__(self):
        return "{" + ",".join(map(str, self.members)) + "}"


def enumerate_affine_tube_orbits(P: AffinePoset) -> list[AffineTube]:
    """One representative per periodic orbit of proper tubes, sorted by size then members."""
    n = P.n
    found = set()
    for root in range(n):
        # connected sets whose minimum is root, grown along covers
        start = frozenset([root])
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for S in frontier:
                if len(S) >= n:
                    continue
                residues = {x % n for x in S}
                for x in S:
                    for y in P.neighbours(x):
                        if y <= root or y in S or y % n in residues:
                            continue
                        T = S | {y}
                        if T not in seen:
                            seen.add(T)
                            nxt.append(T)
            frontier = nxt
        for S in seen:
            if len(S) >= 2 and P.is_convex_set(S):
                found.add(AffineTube(tuple(sorted(S))))
    return sorted(found, key=AffineTube.sort_key)


def _shift_range(A: AffineTube, B: AffineTube, n: int) -> range:
    """Shifts k for which A and B + k*n can share an element."""
    lo = (A.members[0] - B.members[-1]) // n - 1
    hi = (A.members[-1] - B.members[0]) // n + 1
    return range(lo, hi + 1)


def orbits_compatible(P: AffinePoset, A: AffineTube, B: AffineTube) -> bool:
    """Every copy of A is nested in or disjoint from every copy of B."""
    n = P.n
    a = frozenset(A.members)
    for k in _shift_range(A, B, n):
        b = B.shifted(k, n)
        inter = a & b
        if inter and inter != a and inter != b:
            return False
    return True


def min_precedence_shift(P: AffinePoset, A: AffineTube, B: AffineTube) -> int:
    """Least k with A and B + k*n disjoint and A preceding B + k*n.

    The set of such k contains every large enough k, which is what makes
    cycle detection on orbits a shortest-path question.
    """
    n = P.n
    k = min(
        P.dist[a % n][b % n] - (b // n) + (a // n) for a in A.members for b in B.members
    )
    a_set = frozenset(A.members)
    while True:
        b = B.shifted(k, n)
        if not a_set & b and P.set_precedes(a_set, b):
            return k
        k += 1


def is_affine_proper_tubing(P: AffinePoset, orbits: Iterable[AffineTube]) -> bool:
    """Check nested-or-disjoint and acyclicity across all periodic copies.

    A precedence cycle among copies is a closed walk of total shift zero in
    the digraph on orbits with arc weights ``min_precedence_shift``.  Since
    every larger shift is also available, such a walk exists iff that
    digraph has a closed walk of weight <= 0.
    """
    orbits = sorted(set(orbits), key=AffineTube.sort_key)
    n = P.n
    for A in orbits:
        if not P.is_tube(A.members) or A.size > n:
            return False
    for i, A in enumerate(orbits):
        for B in orbits[i:]:
            if not orbits_compatible(P, A, B):
                return False
    m = len(orbits)
    if m == 0:
        return True
    dist = [[min_precedence_shift(P, A, B) for B in orbits] for A in orbits]
    for k in range(m):
        for a in range(m):
            for b in range(m):
                if dist[a][k] + dist[k][b] < dist[a][b]:
                    dist[a][b] = dist[a][k] + dist[k][b]
    return all(dist[a][a] > 0 for a in range(m))


def _require_order_two(P: AffinePoset):
    if P.n < 2:
        raise NotConnectedError("the cyclohedron needs an affine poset of order at least 2")


class AffineTubingComplex:
    """Orbit data for one affine poset; tubings are sorted tuples of orbit indices."""

    def __init__(self, P: AffinePoset):
        self.poset = P
        self.orbits = enumerate_affine_tube_orbits(P)
        m = len(self.orbits)
        self.compatible = [0] * m
        for i in range(m):
            for j in range(m):
                if orbits_compatible(P, self.orbits[i], self.orbits[j]):
                    self.compatible[i] |= 1 << j

    @property
    def dimension(self) -> int:
        return self.poset.n - 1

    def is_tubing(self, idx: Sequence[int]) -> bool:
        return is_affine_proper_tubing(self.poset, [self.orbits[k] for k in idx])

    def tubings(self) -> list[tuple[int, ...]]:
        out = []
        m = len(self.orbits)

        def extend(current, candidates, start):
            out.append(tuple(current))
            for k in range(start, m):
                if not candidates >> k & 1:
                    continue
                if not self.is_tubing(current + [k]):
                    continue
                current.append(k)
                extend(current, candidates & self.compatible[k], k + 1)
                current.pop()

        extend([], (1 << m) - 1, 0)
        out.sort(key=lambda t: (len(t), t))
        return out

    def maximal_tubings(self) -> list[tuple[int, ...]]:
        _require_order_two(self.poset)
        tubings = self.tubings()
        present = set(tubings)
        d = self.dimension
        n = self.poset.n
        maximal = []
        for t in tubings:
            if any(
                tuple(sorted(t + (k,))) in present for k in range(len(self.orbits)) if k not in t
            ):
                continue
            if len(t) != d:
                raise AssertionError(f"maximal affine tubing {self.as_orbits(t)} has {len(t)} orbits, expected {d}")
            if not any(self.orbits[k].size == n for k in t):
                raise AssertionError(f"maximal affine tubing {self.as_orbits(t)} has no tube of size {n}")
            maximal.append(t)
        return maximal

    def as_orbits(self, idx: Sequence[int]) -> tuple:
        return tuple(self.orbits[k] for k in idx)


def enumerate_maximal_affine_tubings(P: AffinePoset) -> list[tuple]:
    cx = AffineTubingComplex(P)
    return [cx.as_orbits(t) for t in cx.maximal_tubings()]


def affine_alpha(P: AffinePoset, members: Iterable[int]) -> LinearFunctional:
    """Sum of x_j - x_i over covers inside ``members``, in residue coordinates.

    ``x_j`` for j outside 0..n-1 is rewritten as ``x_(j mod n) + (j div n) * c``.
    """
    n, c = P.n, P.period_constant
    members = sorted(members)
    coeffs = [0] * n
    constant = 0
    mset = set(members)
    for i in members:
        for j in P.upper_covers(i):
            if j in mset:
                coeffs[j % n] += 1
                coeffs[i % n] -= 1
                constant += (j // n - i // n) * c
    return LinearFunctional(tuple(range(n)), tuple(coeffs), constant)


def _orbit_label(tube: AffineTube) -> str:
    return repr(tube)


def build_cyclohedron(P: AffinePoset) -> HalfSpaceSystem:
    """Gauge sum zero plus alpha_tau >= n^(2|tau|) for every tube orbit."""
    _require_order_two(P)
    n = P.n
    variables = tuple(range(n))
    gauge = Constraint(LinearFunctional(variables, (1,) * n), Fraction(0), "sum")
    inequalities = tuple(
        Constraint(affine_alpha(P, t.members), threshold(n, t.size), _orbit_label(t))
        for t in enumerate_affine_tube_orbits(P)
    )
    return HalfSpaceSystem(variables, (gauge,), inequalities)


def affine_vertex_of_tubing(P: AffinePoset, orbits: Iterable[AffineTube]) -> tuple:
    n = P.n
    rows = [[1] * n]
    rhs = [Fraction(0)]
    for t in orbits:
        f = affine_alpha(P, t.members)
        rows.append(list(f.coefficients))
        rhs.append(threshold(n, t.size) - f.constant)
    if len(rows) != n:
        raise SingularSystemError(f"{len(rows) - 1} orbits do not give a square system for order {n}")
    return linalg.solve(rows, rhs)


def affine_tubing_vertices(P: AffinePoset, complex_: AffineTubingComplex | None = None) -> dict:
    cx = complex_ or AffineTubingComplex(P)
    return {t: affine_vertex_of_tubing(P, cx.as_orbits(t)) for t in cx.maximal_tubings()}


def extend_point(P: AffinePoset, point: Sequence, j: int) -> Fraction:
    """Value at integer j of the periodic map with residue values ``point``."""
    return Fraction(point[j % P.n]) + (j // P.n) * P.period_constant
