"""Tubes, tubings and their enumeration for finite posets."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .errors import NotConnectedError, NotDisjointError, NotMaximalError
from .poset import Poset, _bits, popcount


class Tube:
    """A tube of a poset, stored as a bitmask over the poset's indices."""

    __slots__ = ("poset", "mask")

    def __init__(self, poset: Poset, mask: int):
        self.poset = poset
        self.mask = mask

    @classmethod
    def of(cls, poset: Poset, members: Iterable) -> "Tube":
        return cls(poset, poset.mask(members))

    @property
    def members(self) -> tuple:
        return self.poset.members(self.mask)

    @property
    def size(self) -> int:
        return popcount(self.mask)

    @property
    def proper(self) -> bool:
        return self.mask != self.poset.full

    def sort_key(self) -> tuple:
        return (self.size, tuple(_bits(self.mask)))

    def __eq__(self, other):
        return isinstance(other, Tube) and self.mask == other.mask and self.poset == other.poset

    def __hash__(self):
        return hash(self.mask)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return "{" + ",".join(map(str, self.members)) + "}"


def tube_label(tube: Tube) -> str:
    return repr(tube)


def enumerate_proper_tubes(P: Poset) -> list[Tube]:
    """All proper tubes, ordered by size and then by member indices."""
    tubes = [Tube(P, m) for m in range(1, P.full) if P.tube_mask(m)]
    tubes.sort()
    return tubes


def tubes_compatible(sigma: Tube, tau: Tube) -> bool:
    inter = sigma.mask & tau.mask
    return inter == 0 or inter == sigma.mask or inter == tau.mask


def _precedes(P: Poset, a: int, b: int) -> bool:
    ups = 0
    for i in _bits(a):
        ups |= P.up[i]
    return bool(ups & b)


def tube_precedes(sigma: Tube, tau: Tube) -> bool:
    """``sigma < tau``: some element of sigma lies strictly below some element of tau."""
    if sigma.mask & tau.mask:
        raise NotDisjointError(f"{sigma!r} and {tau!r} are not disjoint")
    return _precedes(sigma.poset, sigma.mask, tau.mask)


def _has_cycle(succ: dict) -> bool:
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(succ, WHITE)

    def visit(u):
        colour[u] = GREY
        for v in succ[u]:
            if colour[v] == GREY:
                return True
            if colour[v] == WHITE and visit(v):
                return True
        colour[u] = BLACK
        return False

    return any(colour[u] == WHITE and visit(u) for u in succ)


def is_proper_tubing(tubes: Iterable[Tube]) -> bool:
    """Pairwise nested or disjoint, and the precedence digraph on disjoint pairs is acyclic."""
    tubes = list(set(tubes))
    if not tubes:
        return True
    P = tubes[0].poset
    if any(not t.proper or not P.tube_mask(t.mask) for t in tubes):
        return False
    for s, t in combinations(tubes, 2):
        if not tubes_compatible(s, t):
            return False
    succ = {s.mask: [] for s in tubes}
    for s in tubes:
        for t in tubes:
            if s.mask & t.mask == 0 and _precedes(P, s.mask, t.mask):
                succ[s.mask].append(t.mask)
    return not _has_cycle(succ)


class TubingComplex:
    """Precomputed tube data for one poset; tubings are sorted tuples of tube indices."""

    def __init__(self, P: Poset):
        if P.n < 2 or not P.connected_mask(P.full):
            raise NotConnectedError("tubings need a connected poset with at least 2 elements")
        self.poset = P
        self.tubes = enumerate_proper_tubes(P)
        self.position = {t.mask: k for k, t in enumerate(self.tubes)}
        masks = [t.mask for t in self.tubes]
        m = len(masks)
        self.compatible = [0] * m
        self.prec = [0] * m
        for i in range(m):
            for j in range(m):
                a, b = masks[i], masks[j]
                inter = a & b
                if inter == 0 or inter == a or inter == b:
                    self.compatible[i] |= 1 << j
                if inter == 0 and _precedes(P, a, b):
                    self.prec[i] |= 1 << j

    @property
    def dimension(self) -> int:
        return self.poset.n - 2

    def _creates_cycle(self, chosen: int, new: int) -> bool:
        # forward reachability from `new` inside chosen | new
        pool = chosen | 1 << new
        seen = 0
        frontier = self.prec[new] & pool
        while frontier:
            if frontier >> new & 1:
                return True
            seen |= frontier
            nxt = 0
            for u in _bits(frontier):
                nxt |= self.prec[u]
            frontier = nxt & pool & ~seen
        return False

    def tubings(self) -> list[tuple[int, ...]]:
        """All proper tubings (empty one included), in canonical order."""
        out: list[tuple[int, ...]] = []
        m = len(self.tubes)

        def extend(current: list[int], chosen: int, candidates: int, start: int):
            out.append(tuple(current))
            for k in range(start, m):
                if not candidates >> k & 1:
                    continue
                if self._creates_cycle(chosen, k):
                    continue
                current.append(k)
                extend(current, chosen | 1 << k, candidates & self.compatible[k], k + 1)
                current.pop()

        extend([], 0, (1 << m) - 1, 0)
        out.sort(key=lambda t: (len(t), t))
        return out

    def maximal_tubings(self) -> list[tuple[int, ...]]:
        all_tubings = self.tubings()
        d = self.dimension
        as_sets = {t for t in all_tubings}
        maximal = []
        for t in all_tubings:
            chosen = sum(1 << k for k in t)
            extendable = any(
                tuple(sorted(t + (k,))) in as_sets
                for k in range(len(self.tubes))
                if not chosen >> k & 1
            )
            if not extendable:
                if len(t) != d:
                    raise AssertionError(
                        f"library bug: inclusion-maximal tubing {self.as_tubes(t)} has "
                        f"{len(t)} tubes, expected {d}"
                    )
                maximal.append(t)
        return maximal

    def as_tubes(self, tubing: tuple[int, ...]) -> frozenset:
        return frozenset(self.tubes[k] for k in tubing)

    def indices(self, tubing: Iterable[Tube]) -> tuple[int, ...]:
        return tuple(sorted(self.position[t.mask] for t in tubing))


def enumerate_proper_tubings(P: Poset) -> list[frozenset]:
    cx = TubingComplex(P)
    return [cx.as_tubes(t) for t in cx.tubings()]


def enumerate_maximal_tubings(P: Poset) -> list[frozenset]:
    cx = TubingComplex(P)
    return [cx.as_tubes(t) for t in cx.maximal_tubings()]


def tubings_adjacent(T1: Iterable[Tube], T2: Iterable[Tube]) -> bool:
    """Maximal tubings are adjacent vertices iff they share all but one tube."""
    T1, T2 = frozenset(T1), frozenset(T2)
    tubes = T1 | T2
    if not tubes:
        return False
    P = next(iter(tubes)).poset
    d = P.n - 2
    if len(T1) != d or len(T2) != d or not is_proper_tubing(T1) or not is_proper_tubing(T2):
        raise NotMaximalError("adjacency is defined for maximal tubings only")
    return len(T1 & T2) == d - 1 and T1 != T2
