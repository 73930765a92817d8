from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from posetassoc.errors import CycleError, DuplicateElementError, NotATubeError, UnknownElementError
from posetassoc.poset import (
    Poset,
    antichain,
    bowtie,
    build_poset,
    chain,
    connected_posets,
    contract,
    convex_hull,
    diamond,
    is_connected,
    is_convex,
    is_proper_tube,
    is_tube,
)


@st.composite
def natural_posets(draw, max_n=6):
    """Random posets on 0..n-1 whose generating relations respect the integer order."""
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Poset(range(n), chosen)


def test_singleton():
    P = build_poset(["a"], [])
    assert P.n == 1 and P.covers == ()


def test_chain_closure_and_covers():
    P = build_poset([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4)])
    assert P.cover_pairs() == [(1, 2), (2, 3), (3, 4)]
    assert P.leq(1, 4)
    assert not P.leq(4, 1)


def test_cycle_rejected():
    with pytest.raises(CycleError):
        build_poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_duplicates_and_unknowns():
    with pytest.raises(DuplicateElementError):
        build_poset(["a", "a"])
    with pytest.raises(UnknownElementError):
        build_poset(["a"], [("a", "z")])


def test_redundant_relation_is_not_a_cover():
    P = build_poset([1, 2, 3], [(1, 2), (2, 3), (1, 3)])
    assert P.cover_pairs() == [(1, 2), (2, 3)]


def test_connectivity():
    assert is_connected(chain(3))
    assert not is_connected(antichain(2))
    assert is_connected(bowtie())
    assert not is_connected(chain(3), [])


def test_convexity_examples():
    C = chain(3)
    assert not is_convex(C, {1, 3})
    assert is_convex(C, {1, 2})
    assert is_convex(diamond(), {"a", "b"})


def test_convex_hull_examples():
    assert convex_hull(chain(4), {1, 4}) == {1, 2, 3, 4}
    assert convex_hull(chain(4), {2, 3}) == {2, 3}
    assert convex_hull(diamond(), {"0", "1"}) == {"0", "a", "b", "1"}


def test_tube_predicates():
    C = chain(3)
    assert is_tube(C, {2, 3}) and is_proper_tube(C, {2, 3})
    assert is_tube(C, {1, 2, 3}) and not is_proper_tube(C, {1, 2, 3})
    assert not is_tube(chain(4), {1, 3})
    assert not is_tube(C, {2})


def test_contract_chain():
    Q = contract(chain(3), {1, 2})
    assert Q.n == 2 and len(Q.covers) == 1


def test_contract_whole_poset():
    Q = contract(chain(4), {1, 2, 3, 4})
    assert Q.n == 1


def test_contract_diamond():
    Q = contract(diamond(), {"a", "1"}, "*")
    assert set(Q.relation_pairs()) == {("0", "b"), ("0", "*"), ("b", "*")}
    assert set(Q.cover_pairs()) == {("0", "b"), ("b", "*")}


def test_contract_rejects_non_tubes():
    with pytest.raises(NotATubeError):
        contract(chain(4), {1, 3})


def test_connected_poset_counts():
    # OEIS A000608 (connected posets up to isomorphism)
    assert [len(connected_posets(n)) for n in range(1, 6)] == [1, 1, 3, 10, 44]


def _brute_closure(n, rels):
    leq = {(i, i) for i in range(n)} | set(rels)
    changed = True
    while changed:
        changed = False
        for a, b in list(leq):
            for c, d in list(leq):
                if b == c and (a, d) not in leq:
                    leq.add((a, d))
                    changed = True
    return leq


@given(natural_posets())
def test_reduction_then_closure_recovers_order(P):
    leq = {(a, b) for a in P.elements for b in P.elements if P.leq(a, b)}
    assert _brute_closure(P.n, P.cover_pairs()) == leq


@given(natural_posets(), st.data())
def test_hull_monotone_and_idempotent(P, data):
    T = data.draw(st.sets(st.sampled_from(P.elements)))
    S = data.draw(st.sets(st.sampled_from(sorted(T)))) if T else set()
    hT = convex_hull(P, T)
    assert convex_hull(P, S) <= hT
    assert convex_hull(P, hT) == hT
    assert set(T) <= hT


def _tubes(P):
    return [set(P.members(m)) for m in range(1, P.full + 1) if P.tube_mask(m)]


@settings(max_examples=50)
@given(natural_posets())
def test_contract_size_and_connectivity(P):
    for tube in _tubes(P):
        Q = contract(P, tube)
        assert Q.n == P.n - len(tube) + 1
        if is_connected(P):
            assert is_connected(Q)


def _isomorphic(P, Q):
    if P.n != Q.n or len(P.covers) != len(Q.covers):
        return False
    target = set(Q.covers)
    return any(
        {(perm[i], perm[j]) for i, j in P.covers} == target for perm in permutations(range(P.n))
    )


@settings(max_examples=40, deadline=None)
@given(natural_posets(max_n=6))
def test_quotient_associativity(P):
    tubes = _tubes(P)
    for tau in tubes:
        for sigma in tubes:
            if not sigma < tau:
                continue
            step = contract(P, sigma, "s")
            image = (tau - sigma) | {"s"}
            assert is_tube(step, image)
            twice = contract(step, image, "t")
            direct = contract(P, tau, "t")
            assert _isomorphic(twice, direct)
