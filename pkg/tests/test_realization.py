from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from posetassoc.errors import (
    BoundednessError,
    EpsilonRangeError,
    NotConnectedError,
    NotGenericError,
    SingularSystemError,
)
from posetassoc.oracle import alpha_bound_violations, brute_force_vertices, sample_order_cone
from posetassoc.poset import antichain, bowtie, chain, connected_posets, diamond
from posetassoc.realization import (
    alpha,
    build_associahedron,
    epsilon_realization,
    f_from_h,
    f_vector,
    h_from_f,
    h_vector_by_outdegree,
    order_polytope,
    stanley_normalized,
    strictly_interior,
    threshold,
    tubing_vertices,
    vertex_of_tubing,
)
from posetassoc.tubings import Tube, TubingComplex, tubes_compatible

F = Fraction


def test_alpha_chain3():
    assert alpha(chain(3), {1, 2, 3}).coefficients == (-1, 0, 1)


def test_alpha_diamond_covers():
    f = alpha(diamond(), {"0", "a", "b", "1"})
    assert dict(zip(diamond().elements, f.coefficients)) == {"0": -2, "a": 0, "b": 0, "1": 2}


def test_alpha_variants_on_chain():
    P = chain(3)
    assert alpha(P, {1, 2, 3}, "all_pairs").coefficients == (-2, 0, 2)
    assert alpha(P, {1, 2, 3}, "minmax").coefficients == (-1, 0, 1)
    with pytest.raises(ValueError):
        alpha(P, {1, 2}, "spanning_tree")


def test_thresholds():
    assert threshold(3, 2) == 81
    assert threshold(3, 3) == 729
    assert threshold(4, 4) == 65536


def test_build_counts():
    S = build_associahedron(chain(4))
    assert len(S.inequalities) == 5 and len(S.equalities) == 2
    assert build_associahedron(chain(4)).inequality("{1,2}").rhs == 256


def test_build_rejects_disconnected():
    with pytest.raises(NotConnectedError):
        build_associahedron(antichain(2))


def test_chain2_single_vertex():
    assert vertex_of_tubing(chain(2), []) == (-8, 8)


def test_chain3_vertices():
    P = chain(3)
    assert vertex_of_tubing(P, [{1, 2}]) == (-270, -189, 459)
    assert vertex_of_tubing(P, [{2, 3}]) == (-459, 189, 270)


def test_vertex_requires_maximal_tubing():
    with pytest.raises(SingularSystemError):
        vertex_of_tubing(chain(4), [{1, 2}])


def test_vertex_satisfies_system():
    P = chain(3)
    v = vertex_of_tubing(P, [{1, 2}])
    assert sum(v) == 0
    assert alpha(P, {1, 2, 3})(v) == 729
    assert alpha(P, {1, 2})(v) == 81
    assert alpha(P, {2, 3})(v) == 648
    assert strictly_interior(P, v, {2, 3})
    assert not strictly_interior(P, v, {1, 2})


def test_incompatible_tube_strictly_interior_chain4():
    P = chain(4)
    v = vertex_of_tubing(P, [{1, 2}, {3, 4}])
    assert strictly_interior(P, v, {2, 3})


@pytest.mark.parametrize("P", [chain(4), chain(5), diamond(), bowtie()] + connected_posets(5)[::5], ids=repr)
def test_non_members_strictly_interior(P):
    cx = TubingComplex(P)
    for t, v in tubing_vertices(P, complex_=cx).items():
        for k, tube in enumerate(cx.tubes):
            if k not in t:
                assert strictly_interior(P, v, tube)


@pytest.mark.parametrize("n", range(2, 7))
def test_vertex_count_catalan(n):
    assert len(tubing_vertices(chain(n))) == [1, 2, 5, 14, 42][n - 2]


@pytest.mark.parametrize("P", [chain(5), diamond(), bowtie()] + connected_posets(4), ids=repr)
def test_vertex_map_injective(P):
    verts = tubing_vertices(P)
    assert len(set(verts.values())) == len(verts)


def test_order_polytope_chain3():
    vs = {v.point for v in brute_force_vertices(order_polytope(chain(3)))}
    assert vs == {(F(-2, 3), F(1, 3), F(1, 3)), (F(-1, 3), F(-1, 3), F(2, 3))}


def test_stanley_diamond_is_square():
    P = diamond()
    vs = {v.point for v in brute_force_vertices(stanley_normalized(P))}
    assert vs == {(0, a, b, 1) for a in (0, 1) for b in (0, 1)}


def test_stanley_needs_bounds():
    with pytest.raises(BoundednessError):
        stanley_normalized(bowtie())


def test_epsilon_range():
    P = diamond()
    with pytest.raises(EpsilonRangeError):
        epsilon_realization(P, F(1, 9))
    with pytest.raises(EpsilonRangeError):
        epsilon_realization(P, 0, strict=False)
    with pytest.raises(EpsilonRangeError):
        epsilon_realization(P, 1, strict=False)
    epsilon_realization(P, F(1, 9), strict=False)
    with pytest.raises(BoundednessError):
        epsilon_realization(bowtie(), F(1, 100))


def test_epsilon_realization_inside_order_polytope():
    P = chain(4)
    eps = F(1, 17)
    system = epsilon_realization(P, eps)
    vs = brute_force_vertices(system)
    assert len(vs) == 5
    stanley = stanley_normalized(P)
    assert all(stanley.contains(v.point) for v in vs)


def test_h_from_f_examples():
    assert h_from_f([5, 5, 1]) == (1, 3, 1)
    assert h_from_f([14, 21, 9, 1]) == (1, 6, 6, 1)
    assert f_from_h((1, 6, 6, 1)) == (14, 21, 9, 1)


@given(st.lists(st.integers(0, 50), min_size=1, max_size=6))
def test_f_h_inverse(h):
    assert h_from_f(f_from_h(h)) == tuple(h)


def test_f_vectors():
    assert f_vector(chain(4)).f == (5, 5, 1)
    assert f_vector(chain(5)).f == (14, 21, 9, 1)
    assert f_vector(diamond()).f == (6, 6, 1)
    assert f_vector(bowtie()).f == (8, 8, 1)


FAMILY = [P for n in range(2, 6) for P in connected_posets(n)]


@pytest.mark.parametrize("P", FAMILY, ids=repr)
def test_dehn_sommerville_and_outdegree(P):
    fh = f_vector(P)
    assert fh.h == fh.h[::-1]
    assert fh.h[0] == fh.h[-1] == 1
    direction = [7 ** k + 3 * k for k in range(P.n)]
    assert h_vector_by_outdegree(P, direction) == fh.h


def test_zero_direction_not_generic():
    with pytest.raises(NotGenericError):
        h_vector_by_outdegree(chain(4), [0, 0, 0, 0])
    with pytest.raises(NotGenericError):
        h_vector_by_outdegree(chain(2), [0, 0])


@pytest.mark.parametrize("P", [chain(4), diamond(), bowtie()] + connected_posets(4), ids=repr)
def test_alpha_bounds_on_samples(P):
    assert alpha_bound_violations(P, sample_order_cone(P, 200, seed=11)) == []


@settings(max_examples=60)
@given(st.lists(st.integers(0, 20), min_size=5, max_size=5))
def test_alpha_between_diameter_and_scaled_diameter(gaps):
    P = connected_posets(5)[17]
    # order-preserving by construction: accumulate gaps along a linear extension
    order = sorted(range(P.n), key=lambda i: bin(P.down[i]).count("1"))
    vals = [0] * P.n
    for i, g in zip(order, gaps):
        below = [vals[j] for j in range(P.n) if P.down[i] >> j & 1 and j != i]
        vals[i] = (max(below) if below else 0) + g
    assert alpha_bound_violations(P, [tuple(F(v) for v in vals)]) == []


def test_vertices_satisfy_system():
    P = chain(5)
    S = build_associahedron(P)
    for v in tubing_vertices(P).values():
        assert S.contains(v)


def test_tube_objects_accepted():
    P = chain(4)
    tubes = [Tube.of(P, s) for s in ({1, 2}, {1, 2, 3})]
    assert vertex_of_tubing(P, tubes) == vertex_of_tubing(P, [{1, 2}, {1, 2, 3}])


def test_pairs_of_incompatible_tubes_not_both_tight():
    P = chain(5)
    cx = TubingComplex(P)
    verts = tubing_vertices(P, complex_=cx)
    S = build_associahedron(P)
    for v in verts.values():
        tight = S.tight(v)
        for a, b in combinations(tight, 2):
            if a in ("sum", "{1,2,3,4,5}") or b in ("sum", "{1,2,3,4,5}"):
                continue
            A = Tube.of(P, set(int(x) for x in a.strip("{}").split(",")))
            B = Tube.of(P, set(int(x) for x in b.strip("{}").split(",")))
            assert tubes_compatible(A, B)
