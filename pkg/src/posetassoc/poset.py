"""Finite posets stored as bitset closure matrices.

Elements are arbitrary hashable identifiers; internally each one gets a
dense index and subsets are plain ``int`` bitmasks over those indices.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Hashable, Iterable, Sequence

from .errors import (
    CycleError,
    DuplicateElementError,
    NotATubeError,
    UnknownElementError,
)


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Poset:
    """An immutable finite poset.

    ``up[i]`` is the bitmask of all ``j`` with ``i <= j`` (reflexive) and
    ``down[j]`` the transpose.  ``covers`` holds index pairs ``(i, j)`` of
    the Hasse diagram.
    """

    __slots__ = ("elements", "index", "n", "up", "down", "covers", "adj", "_key")

    def __init__(self, elements: Sequence[Hashable], relations: Iterable[tuple] = ()):
        elements = tuple(elements)
        index: dict = {}
        for k, e in enumerate(elements):
            if e in index:
                raise DuplicateElementError(f"duplicate element {e!r}")
            index[e] = k
        n = len(elements)
        up = [1 << i for i in range(n)]
        for rel in relations:
            a, b = rel
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise UnknownElementError(f"relation {rel!r} mentions unknown element {missing!r}")
            up[index[a]] |= 1 << index[b]
        # Warshall on bitsets
        for k in range(n):
            bit = 1 << k
            for i in range(n):
                if up[i] & bit:
                    up[i] |= up[k]
        down = [0] * n
        for i in range(n):
            for j in _bits(up[i]):
                down[j] |= 1 << i
        for i in range(n):
            both = up[i] & down[i] & ~(1 << i)
            if both:
                j = next(_bits(both))
                raise CycleError(
                    f"relations force {elements[i]!r} <= {elements[j]!r} <= {elements[i]!r}"
                )
        covers = []
        adj = [0] * n
        for i in range(n):
            for j in _bits(up[i] & ~(1 << i)):
                if up[i] & down[j] == (1 << i) | (1 << j):
                    covers.append((i, j))
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        self.elements = elements
        self.index = index
        self.n = n
        self.up = tuple(up)
        self.down = tuple(down)
        self.covers = tuple(sorted(covers))
        self.adj = tuple(adj)
        self._key = (elements, self.covers)

    def __eq__(self, other):
        return isinstance(other, Poset) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __len__(self):
        return self.n

    def __repr__(self):
        rels = ", ".join(f"{self.elements[i]!r}<{self.elements[j]!r}" for i, j in self.covers)
        return f"Poset({list(self.elements)!r}; {rels})"

    # -- conversions between ids and masks ---------------------------------

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def mask(self, subset: Iterable[Hashable]) -> int:
        m = 0
        for e in subset:
            try:
                m |= 1 << self.index[e]
            except KeyError:
                raise UnknownElementError(f"unknown element {e!r}") from None
        return m

    def members(self, mask: int) -> tuple:
        return tuple(self.elements[i] for i in _bits(mask))

    def leq(self, a: Hashable, b: Hashable) -> bool:
        return bool(self.up[self.index[a]] >> self.index[b] & 1)

    def less(self, a: Hashable, b: Hashable) -> bool:
        return a != b and self.leq(a, b)

    def cover_pairs(self) -> list[tuple]:
        return [(self.elements[i], self.elements[j]) for i, j in self.covers]

    def relation_pairs(self) -> list[tuple]:
        """All strict relations ``a < b`` (the closure without the diagonal)."""
        return [
            (self.elements[i], self.elements[j])
            for i in range(self.n)
            for j in _bits(self.up[i] & ~(1 << i))
        ]

    # -- mask predicates -----------------------------------------------------

    def connected_mask(self, mask: int) -> bool:
        if not mask:
            return False
        start = mask & -mask
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for i in _bits(frontier):
                nxt |= self.adj[i]
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        return seen == mask

    def hull_mask(self, mask: int) -> int:
        ups = 0
        downs = 0
        for i in _bits(mask):
            ups |= self.up[i]
            downs |= self.down[i]
        return ups & downs

    def convex_mask(self, mask: int) -> bool:
        return self.hull_mask(mask) == mask

    def tube_mask(self, mask: int) -> bool:
        return popcount(mask) >= 2 and self.convex_mask(mask) and self.connected_mask(mask)

    def minima_mask(self, mask: int) -> int:
        return sum(1 << i for i in _bits(mask) if self.down[i] & mask == 1 << i)

    def maxima_mask(self, mask: int) -> int:
        return sum(1 << i for i in _bits(mask) if self.up[i] & mask == 1 << i)

    def is_bounded(self) -> bool:
        return popcount(self.minima_mask(self.full)) == 1 and popcount(self.maxima_mask(self.full)) == 1

    def bottom(self) -> Hashable:
        return self.elements[next(_bits(self.minima_mask(self.full)))]

    def top(self) -> Hashable:
        return self.elements[next(_bits(self.maxima_mask(self.full)))]


def build_poset(elements: Sequence[Hashable], relations: Iterable[tuple] = ()) -> Poset:
    """Build a poset from elements and generating relations ``(a, b)`` meaning a <= b."""
    return Poset(elements, relations)


def is_connected(P: Poset, subset: Iterable[Hashable] | None = None) -> bool:
    """Connectivity of the Hasse diagram induced on ``subset`` (default: all of P).

    The empty set is not connected.
    """
    mask = P.full if subset is None else P.mask(subset)
    return P.connected_mask(mask)


def is_convex(P: Poset, subset: Iterable[Hashable]) -> bool:
    return P.convex_mask(P.mask(subset))


def convex_hull(P: Poset, subset: Iterable[Hashable]) -> frozenset:
    return frozenset(P.members(P.hull_mask(P.mask(subset))))


def is_tube(P: Poset, subset: Iterable[Hashable]) -> bool:
    return P.tube_mask(P.mask(subset))


def is_proper_tube(P: Poset, subset: Iterable[Hashable]) -> bool:
    m = P.mask(subset)
    return P.tube_mask(m) and m != P.full


def contract(P: Poset, tube: Iterable[Hashable], new_element: Hashable | None = None) -> Poset:
    """Identify the tube to a single element and take the quotient order.

    The merged element is named ``new_element``, or by default the tuple of
    the tube's members in the poset's element order.
    """
    m = P.mask(tube)
    if not P.tube_mask(m):
        raise NotATubeError(f"{sorted(map(repr, P.members(m)))} is not a tube")
    merged = P.members(m)
    if new_element is None:
        new_element = merged
    if new_element in P.index and P.index[new_element] not in _bits(m):
        raise DuplicateElementError(f"merged name {new_element!r} clashes with an element")
    rest = [e for i, e in enumerate(P.elements) if not m >> i & 1]
    pos = min(_bits(m))
    elements = [e for i, e in enumerate(P.elements) if not m >> i & 1 or i == pos]
    elements[elements.index(P.elements[pos])] = new_element

    def image(i):
        return new_element if m >> i & 1 else P.elements[i]

    relations = {(image(i), image(j)) for i, j in P.covers if image(i) != image(j)}
    try:
        Q = Poset(elements, relations)
    except CycleError as exc:  # pragma: no cover - convex tubes never create cycles
        raise AssertionError(f"contraction of a tube produced a cycle: {exc}") from exc
    assert len(rest) + 1 == Q.n
    return Q


# -- standard families ---------------------------------------------------------


def chain(n: int) -> Poset:
    """The chain 1 < 2 < ... < n."""
    return Poset(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def antichain(n: int) -> Poset:
    return Poset(range(1, n + 1))


def diamond() -> Poset:
    return Poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def bowtie() -> Poset:
    return Poset(["a", "b", "c", "d"], [("a", "b"), ("c", "d"), ("a", "d"), ("c", "b")])


def canonical_form(P: Poset) -> tuple:
    """Isomorphism-invariant key: the lexicographically least relabelled cover set."""
    n = P.n
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted((perm[i], perm[j]) for i, j in P.covers))
        if best is None or key < best:
            best = key
    return (n, best)


def connected_posets(n: int) -> list[Poset]:
    """All connected posets on ``n`` elements, one per isomorphism class.

    Elements are ``0..n-1`` and naturally labelled.  Intended for n <= 6.
    """
    pairs = list(combinations(range(n), 2))
    seen = set()
    found = []
    for r in range(2 ** len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if r >> k & 1}
        # transitivity check; natural labelling makes cycles impossible
        if any((a, c) not in rel for a, b in rel for b2, c in rel if b == b2):
            continue
        P = Poset(range(n), rel)
        if not P.connected_mask(P.full):
            continue
        key = canonical_form(P)
        if key in seen:
            continue
        seen.add(key)
        found.append(P)
    return found
