from fractions import Fraction

import pytest

from posetassoc.affine import affine_chain
from posetassoc.errors import UnboundedError
from posetassoc.oracle import (
    affine_rank,
    ambient_dimension,
    brute_force_vertices,
    face_counts,
    feasible_with_equalities,
    prec_cycles,
    rank,
    sample_order_cone,
    tight_set_family,
    verify_affine_realization,
    verify_realization,
)
from posetassoc.poset import bowtie, chain, diamond
from posetassoc.realization import (
    Constraint,
    HalfSpaceSystem,
    LinearFunctional,
    build_associahedron,
)
from posetassoc.tubings import TubingComplex

F = Fraction


def box(lows, highs):
    """Axis box lows <= x <= highs as an H-system."""
    names = tuple(f"x{k}" for k in range(len(lows)))
    ineq = []
    for k, (lo, hi) in enumerate(zip(lows, highs)):
        e = [0] * len(lows)
        e[k] = 1
        ineq.append(Constraint(LinearFunctional(names, tuple(e)), F(lo), f"lo{k}"))
        ineq.append(Constraint(LinearFunctional(names, tuple(-x for x in e)), F(-hi), f"hi{k}"))
    return HalfSpaceSystem(names, (), tuple(ineq))


def test_rank_helpers():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([]) == 0
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 1
    assert affine_rank([(0, 0), (1, 0), (0, 1)]) == 2


def test_square_vertices_and_faces():
    vs = brute_force_vertices(box([0, 0], [1, 2]))
    assert [v.point for v in vs] == [(0, 0), (0, 2), (1, 0), (1, 2)]
    assert face_counts(vs, 2) == (4, 4, 1)


def test_cube_faces():
    vs = brute_force_vertices(box([0, 0, 0], [1, 1, 1]))
    assert face_counts(vs, 3) == (8, 12, 6, 1)


def test_unbounded_detected():
    names = ("x", "y")
    wedge = HalfSpaceSystem(
        names,
        (),
        (
            Constraint(LinearFunctional(names, (1, 0)), F(0), "x"),
            Constraint(LinearFunctional(names, (0, 1)), F(0), "y"),
        ),
    )
    with pytest.raises(UnboundedError):
        brute_force_vertices(wedge)


def test_line_detected():
    names = ("x", "y")
    strip = HalfSpaceSystem(
        names,
        (),
        (
            Constraint(LinearFunctional(names, (1, 0)), F(0), "lo"),
            Constraint(LinearFunctional(names, (-1, 0)), F(-1), "hi"),
        ),
    )
    with pytest.raises(UnboundedError):
        brute_force_vertices(strip)


def test_empty_system_has_no_vertices():
    S = box([0], [1])
    names = S.variables
    S = HalfSpaceSystem(names, (Constraint(LinearFunctional(names, (1,)), F(5), "at5"),), S.inequalities)
    assert brute_force_vertices(S) == []


def test_inconsistent_equalities():
    names = ("x",)
    S = HalfSpaceSystem(
        names,
        (
            Constraint(LinearFunctional(names, (1,)), F(0), "a"),
            Constraint(LinearFunctional(names, (2,)), F(1), "b"),
        ),
        (),
    )
    assert ambient_dimension(S) == -1
    assert brute_force_vertices(S) == []


def test_chain2_point():
    vs = brute_force_vertices(build_associahedron(chain(2)))
    assert [v.point for v in vs] == [(-8, 8)]


def test_chain3_segment():
    vs = brute_force_vertices(build_associahedron(chain(3)))
    assert {v.point for v in vs} == {(-270, -189, 459), (-459, 189, 270)}


def test_pentagon():
    S = build_associahedron(chain(4))
    vs = brute_force_vertices(S)
    assert len(vs) == 5
    assert face_counts(vs, 2) == (5, 5, 1)
    assert all(len(v.tight) == 2 for v in vs)


def test_feasibility_examples():
    S = build_associahedron(chain(4))
    assert not feasible_with_equalities(S, ["{1,2}", "{2,3}"])
    assert feasible_with_equalities(S, ["{1,2}"])
    assert feasible_with_equalities(S, ["{1,2}", "{3,4}"])
    B = build_associahedron(bowtie())
    assert not feasible_with_equalities(B, ["{a,b}", "{c,d}"])
    with pytest.raises(KeyError):
        feasible_with_equalities(S, ["{1,3}"])


def test_prec_cycles_bowtie():
    cx = TubingComplex(bowtie())
    cycles = prec_cycles(cx)
    names = {frozenset(frozenset(cx.tubes[k].members) for k in c) for c in cycles}
    assert frozenset({frozenset("ab"), frozenset("cd")}) in names
    assert prec_cycles(TubingComplex(chain(5))) == []


def test_sample_order_cone_is_seeded_and_order_preserving():
    P = diamond()
    a = sample_order_cone(P, 50, seed=3)
    assert a == sample_order_cone(P, 50, seed=3)
    assert a != sample_order_cone(P, 50, seed=4)
    for p in a:
        assert sum(p) == 0
        for i, j in P.cover_pairs():
            assert p[P.index[i]] <= p[P.index[j]]


def test_tight_set_family_restriction():
    S = build_associahedron(chain(3))
    assert tight_set_family(S) == {frozenset({"{1,2}"}), frozenset({"{2,3}"})}
    assert tight_set_family(S, ["{1,2}"]) == {frozenset({"{1,2}"}), frozenset()}


@pytest.mark.parametrize("P", [chain(2), chain(3), chain(4), chain(5), diamond(), bowtie()], ids=repr)
def test_verify_passes(P):
    report = verify_realization(P)
    assert report.passed, report.to_text()


def test_verify_summary():
    s = verify_realization(chain(5)).summary
    assert s["f_vector"] == [14, 21, 9, 1]
    assert s["h_vector"] == [1, 6, 6, 1]
    assert s["euler"] == 2


@pytest.mark.parametrize("n", [2, 3])
def test_verify_affine_passes(n):
    report = verify_affine_realization(affine_chain(n))
    assert report.passed, report.to_text()


def test_report_json_is_deterministic():
    a = verify_realization(diamond()).to_json()
    b = verify_realization(diamond()).to_json()
    assert a == b
