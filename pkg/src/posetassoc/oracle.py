"""Brute-force verification machinery.

Vertices are found by trying every square subsystem of tight inequalities
and keeping the feasible solutions.  This deliberately uses its own
Gauss-Jordan routine rather than :mod:`posetassoc.linalg`, so that the
realization and its check do not share a solver.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import UnboundedError
from .poset import Poset, _bits, popcount
from .realization import (
    Constraint,
    HalfSpaceSystem,
    LinearFunctional,
    alpha,
    build_associahedron,
    diameter,
    f_vector,
    h_from_f,
    threshold,
    tubing_vertices,
)
from .tubings import TubingComplex


# -- plain Gauss-Jordan over Fractions ----------------------------------------


def _rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(_rref(rows)[1]) if rows else 0


def _unique_solution(rows, rhs, nvars) -> tuple | None:
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    M, pivots = _rref(aug)
    if nvars in pivots or len(pivots) < nvars:
        return None
    return tuple(M[i][nvars] for i in range(nvars))


def _kernel_basis(rows, nvars) -> list[tuple]:
    if not rows:
        rows = [[0] * nvars]
    M, pivots = _rref(rows)
    basis = []
    for f in (c for c in range(nvars) if c not in pivots):
        v = [Fraction(0)] * nvars
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -M[i][f]
        basis.append(tuple(v))
    return basis


def _null_vector(rows, nvars) -> tuple | None:
    """A basis vector of the kernel if it is exactly one-dimensional."""
    basis = _kernel_basis(rows, nvars)
    return basis[0] if len(basis) == 1 else None


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull (-1 for no points)."""
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


# -- vertex enumeration ---------------------------------------------------------


@dataclass(frozen=True)
class VertexCertificate:
    point: tuple
    tight: frozenset
    basis: tuple


def _independent_equalities(system: HalfSpaceSystem):
    """Rows of a maximal independent subset of the equalities; None if inconsistent."""
    rows, rhs = [], []
    for c in system.equalities:
        coeffs, b = c.row()
        if rank(rows + [coeffs]) > len(rows):
            rows.append(list(coeffs))
            rhs.append(b)
        else:
            aug_before = rank([r + [x] for r, x in zip(rows, rhs)])
            if rank([r + [x] for r, x in zip(rows + [list(coeffs)], rhs + [b])]) > aug_before:
                return None
    return rows, rhs


def ambient_dimension(system: HalfSpaceSystem) -> int:
    eq = _independent_equalities(system)
    if eq is None:
        return -1
    return len(system.variables) - len(eq[0])


def _enumerate(system: HalfSpaceSystem, first_only: bool = False) -> list[VertexCertificate]:
    nvars = len(system.variables)
    eq = _independent_equalities(system)
    if eq is None:
        return []
    eq_rows, eq_rhs = eq
    d = nvars - len(eq_rows)
    ineq = [c.row() for c in system.inequalities]
    labels = [c.label for c in system.inequalities]
    found: dict = {}
    for subset in combinations(range(len(ineq)), d):
        rows = eq_rows + [list(ineq[k][0]) for k in subset]
        rhs = eq_rhs + [ineq[k][1] for k in subset]
        x = _unique_solution(rows, rhs, nvars)
        if x is None or x in found:
            continue
        if all(sum(a * v for a, v in zip(coeffs, x)) >= b for coeffs, b in ineq):
            tight = frozenset(
                labels[k]
                for k, (coeffs, b) in enumerate(ineq)
                if sum(a * v for a, v in zip(coeffs, x)) == b
            )
            found[x] = VertexCertificate(x, tight, tuple(labels[k] for k in subset))
            if first_only:
                break
    return [found[x] for x in sorted(found)]


def _check_bounded(system: HalfSpaceSystem):
    nvars = len(system.variables)
    eq_rows, _ = _independent_equalities(system)
    ineq = [list(c.row()[0]) for c in system.inequalities]
    if rank(eq_rows + ineq) < nvars:
        raise UnboundedError("the system contains a line")
    d = nvars - len(eq_rows)
    if d == 0:
        return
    for subset in combinations(range(len(ineq)), d - 1):
        u = _null_vector(eq_rows + [ineq[k] for k in subset], nvars)
        if u is None:
            continue
        for sign in (1, -1):
            if all(sign * sum(a * b for a, b in zip(row, u)) >= 0 for row in ineq):
                raise UnboundedError(
                    f"recession direction {[str(sign * x) for x in u]} "
                    f"(tight on {[system.inequalities[k].label for k in subset]})"
                )


def _contains_line(system: HalfSpaceSystem) -> bool:
    """Nonempty with a nonzero lineality space; such systems have no vertices."""
    nvars = len(system.variables)
    rows = [list(c.row()[0]) for c in system.equalities + system.inequalities]
    lines = _kernel_basis(rows, nvars)
    if not lines:
        return False
    # cutting orthogonally to the lines keeps feasibility and makes the system pointed
    cuts = tuple(
        Constraint(LinearFunctional(system.variables, u), Fraction(0), f"line {k}")
        for k, u in enumerate(lines)
    )
    sliced = HalfSpaceSystem(system.variables, system.equalities + cuts, system.inequalities)
    return bool(_enumerate(sliced, first_only=True))


def brute_force_vertices(system: HalfSpaceSystem, check_bounded: bool = True) -> list[VertexCertificate]:
    """All vertices of a bounded H-polytope by exhaustive basis enumeration."""
    vertices = _enumerate(system)
    if check_bounded:
        if vertices:
            _check_bounded(system)
        elif _contains_line(system):
            raise UnboundedError("the system contains a line")
    return vertices


def with_equalities(system: HalfSpaceSystem, labels: Iterable[str]) -> HalfSpaceSystem:
    labels = set(labels)
    unknown = labels - set(system.labels)
    if unknown:
        raise KeyError(f"unknown inequality labels {sorted(unknown)}")
    moved = tuple(c for c in system.inequalities if c.label in labels)
    kept = tuple(c for c in system.inequalities if c.label not in labels)
    return HalfSpaceSystem(system.variables, system.equalities + moved, kept)


def feasible_with_equalities(system: HalfSpaceSystem, labels: Iterable[str]) -> bool:
    """Whether the polytope meets all hyperplanes of the named inequalities.

    For a bounded system a nonempty face has a vertex, so one feasible
    basis settles the question.
    """
    return bool(_enumerate(with_equalities(system, labels), first_only=True))


def face_counts(vertices: Sequence[VertexCertificate], d: int) -> tuple[int, ...]:
    """f-vector computed from the vertices' tight sets alone (simple polytopes)."""
    faces: dict[int, set] = {k: set() for k in range(d + 1)}
    seen = set()
    for v in vertices:
        tight = sorted(v.tight)
        for k in range(d + 1):
            for S in combinations(tight, d - k):
                S = frozenset(S)
                if S in seen:
                    continue
                seen.add(S)
                members = [w for w in vertices if S <= w.tight]
                dim = affine_rank([w.point for w in members])
                faces.setdefault(dim, set()).add(frozenset(w.point for w in members))
    return tuple(len(faces[k]) for k in range(d + 1))


# -- reports ----------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    witnesses: list = field(default_factory=list)

    def fail(self, witness: str):
        self.passed = False
        if len(self.witnesses) < 20:
            self.witnesses.append(witness)


@dataclass
class VerificationReport:
    subject: str
    checks: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        c = CheckResult(name, True)
        self.checks.append(c)
        return c

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "summary": self.summary,
            "checks": [
                {"name": c.name, "passed": c.passed, "checked": c.checked, "witnesses": c.witnesses}
                for c in sorted(self.checks, key=lambda c: c.name)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"subject: {self.subject}"]
        for key in sorted(self.summary):
            lines.append(f"{key}: {self.summary[key]}")
        for c in sorted(self.checks, key=lambda c: c.name):
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"[{status}] {c.name} ({c.checked} checked)")
            lines.extend(f"    witness: {w}" for w in c.witnesses)
        lines.append("result: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


# -- finite posets -------------------------------------------------------------------


def prec_cycles(cx: TubingComplex, max_length: int = 4) -> list[tuple[int, ...]]:
    """Cycles of pairwise disjoint tubes t1 < t2 < ... < tk < t1, listed from their least index."""
    masks = [t.mask for t in cx.tubes]
    cycles = []

    def walk(path, used):
        last = path[-1]
        if len(path) >= 2 and cx.prec[last] >> path[0] & 1:
            cycles.append(tuple(path))
        if len(path) == max_length:
            return
        for k in _bits(cx.prec[last]):
            if k > path[0] and not masks[k] & used:
                path.append(k)
                walk(path, used | masks[k])
                path.pop()

    for s in range(len(masks)):
        walk([s], masks[s])
    return cycles


def incompatible_pairs(cx: TubingComplex) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i in range(len(cx.tubes))
        for j in range(i + 1, len(cx.tubes))
        if not cx.compatible[i] >> j & 1
    ]


def _label(cx, k) -> str:
    return repr(cx.tubes[k])


def _check_vertex_sets(report, name, realized: dict, oracle, fmt):
    c = report.check(name)
    rset = set(realized.values())
    oset = {v.point for v in oracle}
    c.checked = len(oset | rset)
    if len(rset) != len(realized):
        c.fail("two maximal tubings share a vertex")
    for p in sorted(oset - rset):
        c.fail(f"oracle vertex {fmt(p)} has no tubing")
    for p in sorted(rset - oset):
        c.fail(f"tubing vertex {fmt(p)} missing from oracle")


def _fmt(p) -> str:
    return "(" + ", ".join(str(x) for x in p) + ")"


def _common_checks(report, system, oracle, d, tubings, maximal_vertices, tubing_labels):
    """Simplicity, facet and face-lattice checks shared by the finite and affine cases."""
    c = report.check("simple")
    for v in oracle:
        c.checked += 1
        if len(v.tight) != d:
            c.fail(f"vertex {_fmt(v.point)} lies on {len(v.tight)} facets, expected {d}")

    c = report.check("facets")
    facet_labels = {lab for t in tubings if len(t) == 1 for lab in tubing_labels(t)}
    for ineq in system.inequalities:
        if ineq.label not in facet_labels:
            continue
        c.checked += 1
        pts = [v.point for v in oracle if ineq.label in v.tight]
        if affine_rank(pts) != d - 1:
            c.fail(f"{ineq.label} spans dimension {affine_rank(pts)}, expected {d - 1}")

    c = report.check("face_lattice")
    tight_of = {v.point: v.tight for v in oracle}
    for t in tubings:
        c.checked += 1
        labels = frozenset(tubing_labels(t))
        pts = [p for m, p in maximal_vertices.items() if set(t) <= set(m)]
        if not pts or any(p not in tight_of for p in pts):
            c.fail(f"tubing {sorted(labels)} has no oracle vertices")
            continue
        common = frozenset.intersection(*(tight_of[p] for p in pts))
        if common != labels:
            c.fail(f"tubing {sorted(labels)} has face labels {sorted(common)}")
        if affine_rank(pts) != d - len(t):
            c.fail(f"tubing {sorted(labels)} spans dimension {affine_rank(pts)}, expected {d - len(t)}")


def verify_realization(P: Poset, variant: str = "covers", max_cycle: int = 4) -> VerificationReport:
    """Run every structural check on the realization of a finite connected poset."""
    cx = TubingComplex(P)
    n, d = P.n, cx.dimension
    system = build_associahedron(P, variant)
    report = VerificationReport(f"poset {P!r} (alpha variant {variant})")
    verts = tubing_vertices(P, variant, cx)
    oracle = brute_force_vertices(system)
    _check_vertex_sets(report, "vertex_sets", verts, oracle, _fmt)

    c = report.check("membership")
    for t, p in verts.items():
        c.checked += 1
        labels = frozenset(_label(cx, k) for k in t)
        if not system.contains(p):
            c.fail(f"v^T for {sorted(labels)} violates the system")
        elif system.tight(p) != labels:
            c.fail(f"v^T for {sorted(labels)} is tight on {sorted(system.tight(p))}")

    c = report.check("strict_interior")
    for t, p in verts.items():
        inside = set(t)
        for k, tube in enumerate(cx.tubes):
            if k in inside:
                continue
            c.checked += 1
            value = alpha(P, tube.members, variant)(p)
            if not value > threshold(n, tube.size):
                c.fail(f"alpha_{tube!r}(v^T) = {value} for T = {cx.as_tubes(t)}")

    c = report.check("incompatible_infeasible")
    families = [("overlap", pair) for pair in incompatible_pairs(cx)]
    families += [("cycle", cyc) for cyc in prec_cycles(cx, max_cycle)]
    for kind, fam in families:
        c.checked += 1
        labels = [_label(cx, k) for k in fam]
        if feasible_with_equalities(system, labels):
            c.fail(f"{kind} {labels} is feasible")

    tubings = cx.tubings()
    _common_checks(
        report, system, oracle, d, tubings, verts, lambda t: [_label(cx, k) for k in t]
    )

    c = report.check("f_vector")
    c.checked = 1
    fh = f_vector(P)
    from_oracle = face_counts(oracle, d)
    if fh.f != from_oracle:
        c.fail(f"tubing f-vector {fh.f} differs from oracle {from_oracle}")
    report.summary = {
        "dimension": d,
        "vertices": len(oracle),
        "facets": len(cx.tubes),
        "f_vector": list(fh.f),
        "h_vector": list(fh.h),
    }
    if d == 3:
        report.summary["euler"] = fh.f[0] - fh.f[1] + fh.f[2]
    return report


# -- order cone sampling / alpha bounds ------------------------------------------------


def sample_order_cone(P: Poset, count: int, seed: int = 0) -> list[tuple]:
    """Seeded order-preserving integer maps, shifted to sum to zero."""
    rng = random.Random(seed)
    order = sorted(range(P.n), key=lambda i: popcount(P.down[i]))
    samples = []
    for _ in range(count):
        vals = [0] * P.n
        for i in order:
            below = [vals[j] for j in _bits(P.down[i] & ~(1 << i))]
            base = max(below) if below else rng.randint(-20, 20)
            vals[i] = base + rng.choice((0, 0, 1, 2, 3, 5, 8, 13))
        mean = Fraction(sum(vals), P.n)
        samples.append(tuple(v - mean for v in vals))
    return samples


def alpha_bound_violations(P: Poset, points: Iterable[Sequence]) -> list[str]:
    """Witnesses where diam <= alpha <= (n^2/4) diam fails, over every tube (P included)."""
    n = P.n
    tubes = [m for m in range(1, P.full + 1) if P.tube_mask(m)]
    funcs = {m: alpha(P, P.members(m)) for m in tubes}
    bad = []
    for p in points:
        for m in tubes:
            diam = diameter(p, _bits(m))
            a = funcs[m](p)
            if not diam <= a <= Fraction(n * n, 4) * diam:
                bad.append(f"tube {P.members(m)} at {_fmt(p)}: diam {diam}, alpha {a}")
    return bad


# -- affine posets ------------------------------------------------------------------------


def verify_affine_realization(P, max_family: int = 3) -> VerificationReport:
    """Same checks for an affine poset cyclohedron."""
    from .affine import (
        AffineTubingComplex,
        affine_alpha,
        affine_tubing_vertices,
        build_cyclohedron,
    )

    cx = AffineTubingComplex(P)
    n, d = P.n, cx.dimension
    system = build_cyclohedron(P)
    report = VerificationReport(f"affine poset {P!r}")
    verts = affine_tubing_vertices(P, cx)
    oracle = brute_force_vertices(system)
    _check_vertex_sets(report, "vertex_sets", verts, oracle, _fmt)

    def labels_of(t):
        return [repr(cx.orbits[k]) for k in t]

    c = report.check("membership")
    for t, p in verts.items():
        c.checked += 1
        labels = frozenset(labels_of(t))
        if not system.contains(p) or system.tight(p) != labels:
            c.fail(f"v^T for {sorted(labels)} is tight on {sorted(system.tight(p))}")

    c = report.check("strict_interior")
    for t, p in verts.items():
        for k, orbit in enumerate(cx.orbits):
            if k in t:
                continue
            c.checked += 1
            value = affine_alpha(P, orbit.members)(p)
            if not value > threshold(n, orbit.size):
                c.fail(f"alpha_{orbit!r}(v^T) = {value} for T = {labels_of(t)}")

    c = report.check("incompatible_infeasible")
    m = len(cx.orbits)
    for size in range(1, max_family + 1):
        for fam in combinations(range(m), size):
            if cx.is_tubing(fam):
                continue
            if any(not cx.is_tubing(sub) for sub in combinations(fam, size - 1) if sub):
                continue
            c.checked += 1
            if feasible_with_equalities(system, labels_of(fam)):
                c.fail(f"non-tubing {labels_of(fam)} is feasible")

    c = report.check("period_obstruction")
    c.checked = 1
    if not P.period_constant > 2 * n ** (2 * n):
        c.fail(f"c = {P.period_constant} does not exceed 2 n^(2n)")

    tubings = cx.tubings()
    _common_checks(report, system, oracle, d, tubings, verts, labels_of)

    f = [0] * (d + 1)
    for t in tubings:
        f[d - len(t)] += 1
    c = report.check("f_vector")
    c.checked = 1
    from_oracle = face_counts(oracle, d)
    if tuple(f) != from_oracle:
        c.fail(f"tubing f-vector {tuple(f)} differs from oracle {from_oracle}")
    report.summary = {
        "dimension": d,
        "vertices": len(oracle),
        "facets": sum(1 for t in tubings if len(t) == 1),
        "f_vector": f,
        "h_vector": list(h_from_f(f)),
    }
    if d == 3:
        report.summary["euler"] = f[0] - f[1] + f[2]
    return report


def tight_set_family(system: HalfSpaceSystem, labels: Iterable[str] | None = None) -> frozenset:
    """The tight sets of all oracle vertices, optionally restricted to ``labels``."""
    keep = None if labels is None else set(labels)
    return frozenset(
        v.tight if keep is None else v.tight & keep for v in brute_force_vertices(system)
    )
