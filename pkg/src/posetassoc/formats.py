"""Reading poset files and writing DOT, OFF and H-representation text.

Poset files are YAML (JSON works too)::

    elements: [1, 2, 3, 4]
    relations: [[1, 2], [2, 3], [3, 4]]

Affine posets are recognised by an ``order`` key::

    order: 3
    generators: [[0, 1], [1, 2], [2, 3]]
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

import yaml

from .affine import AffinePoset
from .errors import FormatError
from .poset import Poset
from .realization import Constraint, HalfSpaceSystem, LinearFunctional
from .tubings import TubingComplex


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational number: {text!r}") from exc


def _element(x):
    if isinstance(x, (int, str)):
        return x
    raise FormatError(f"element identifiers must be integers or strings, got {x!r}")


def parse_poset_document(doc) -> Poset | AffinePoset:
    if not isinstance(doc, dict):
        raise FormatError("a poset document must be a mapping")
    if "order" in doc:
        extra = set(doc) - {"order", "generators"}
        if extra:
            raise FormatError(f"unexpected keys in affine poset: {sorted(extra)}")
        n = doc["order"]
        if not isinstance(n, int) or n < 1:
            raise FormatError("order must be a positive integer")
        gens = doc.get("generators") or []
        pairs = []
        for g in gens:
            if not (isinstance(g, list) and len(g) == 2 and all(isinstance(v, int) for v in g)):
                raise FormatError(f"generator must be a pair of integers, got {g!r}")
            pairs.append(tuple(g))
        return AffinePoset(n, pairs)
    extra = set(doc) - {"elements", "relations"}
    if extra:
        raise FormatError(f"unexpected keys in poset: {sorted(extra)}")
    if "elements" not in doc:
        raise FormatError("missing 'elements'")
    elements = [_element(e) for e in doc["elements"] or []]
    rels = []
    for r in doc.get("relations") or []:
        if not (isinstance(r, list) and len(r) == 2):
            raise FormatError(f"relation must be a pair, got {r!r}")
        rels.append((_element(r[0]), _element(r[1])))
    return Poset(elements, rels)


def loads_poset(text: str) -> Poset | AffinePoset:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise FormatError(f"cannot parse poset file: {exc}") from exc
    return parse_poset_document(doc)


def load_poset(path) -> Poset | AffinePoset:
    return loads_poset(Path(path).read_text(encoding="utf-8"))


def _plain(x):
    return list(x) if isinstance(x, tuple) else x


def dump_poset(P: Poset) -> str:
    doc = {
        "elements": [_plain(e) for e in P.elements],
        "relations": [[_plain(a), _plain(b)] for a, b in P.cover_pairs()],
    }
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)


# -- DOT ------------------------------------------------------------------------------


def _dot_id(x) -> str:
    return json.dumps(str(x))


def hasse_dot(P: Poset) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for e in P.elements:
        lines.append(f"  {_dot_id(e)};")
    for a, b in P.cover_pairs():
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tubing_name(tubes) -> str:
    return "{" + ",".join(repr(t) for t in tubes) + "}"


def tubing_lattice_dot(cx: TubingComplex) -> str:
    """Proper tubings under reverse inclusion: arrows go from T to T minus one tube."""
    tubings = cx.tubings()
    name = {t: tubing_name(cx.tubes[k] for k in t) for t in tubings}
    present = set(tubings)
    lines = ["digraph tubings {", "  rankdir=BT;"]
    for t in tubings:
        lines.append(f"  {_dot_id(name[t])};")
    for t in tubings:
        for k in range(len(t)):
            smaller = t[:k] + t[k + 1:]
            if smaller in present:
                lines.append(f"  {_dot_id(name[t])} -> {_dot_id(name[smaller])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- H-representation ------------------------------------------------------------------


def system_to_ine(system: HalfSpaceSystem) -> str:
    """cdd-style text; labels, variables and constants travel in ``*`` comments.

    Each row ``b a_1 ... a_d`` means ``b + a.x >= 0`` (``= 0`` for rows in
    the linearity set), with ``b = constant - rhs``.
    """
    rows = list(system.equalities) + list(system.inequalities)
    lines = ["* posetassoc H-representation"]
    lines.append("* variables " + json.dumps([_plain(v) for v in system.variables]))
    for k, c in enumerate(rows, 1):
        meta = {"label": c.label, "constant": format_rational(c.functional.constant)}
        lines.append(f"* row {k} " + json.dumps(meta, sort_keys=True))
    lines.append("H-representation")
    m_eq = len(system.equalities)
    if m_eq:
        lines.append("linearity " + " ".join(str(k) for k in [m_eq] + list(range(1, m_eq + 1))))
    lines.append("begin")
    lines.append(f" {len(rows)} {len(system.variables) + 1} rational")
    for c in rows:
        b = c.functional.constant - c.rhs
        entries = [b] + list(c.functional.coefficients)
        lines.append(" " + " ".join(format_rational(x) for x in entries))
    lines.append("end")
    return "\n".join(lines) + "\n"


def ine_to_system(text: str) -> HalfSpaceSystem:
    variables = None
    meta: dict[int, dict] = {}
    linearity: set[int] = set()
    body: list[list[Fraction]] = []
    state = "head"
    size = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("*"):
            rest = line[1:].strip()
            if rest.startswith("variables "):
                variables = json.loads(rest[len("variables "):])
            elif rest.startswith("row "):
                _, k, payload = rest.split(" ", 2)
                meta[int(k)] = json.loads(payload)
            continue
        if state == "head":
            if line.startswith("linearity"):
                parts = line.split()[1:]
                linearity = {int(x) for x in parts[1:]}
                if len(linearity) != int(parts[0]):
                    raise FormatError("linearity count does not match its index list")
            elif line == "begin":
                state = "size"
            elif line in ("H-representation",):
                pass
            else:
                raise FormatError(f"unexpected line before 'begin': {line!r}")
        elif state == "size":
            parts = line.split()
            if len(parts) != 3 or parts[2] not in ("rational", "integer"):
                raise FormatError(f"bad size line {line!r}")
            size = (int(parts[0]), int(parts[1]))
            state = "rows"
        elif state == "rows":
            if line == "end":
                state = "done"
                continue
            body.append([parse_rational(x) for x in line.split()])
    if state != "done" or size is None:
        raise FormatError("missing 'begin' / 'end' block")
    if len(body) != size[0] or any(len(r) != size[1] for r in body):
        raise FormatError("row count or width does not match the size line")
    nvars = size[1] - 1
    if variables is None:
        variables = [f"x{k}" for k in range(1, nvars + 1)]
    variables = tuple(variables)
    equalities, inequalities = [], []
    for k, row in enumerate(body, 1):
        info = meta.get(k, {})
        constant = parse_rational(info.get("constant", "0"))
        label = info.get("label", f"row{k}")
        f = LinearFunctional(variables, tuple(row[1:]), constant)
        c = Constraint(f, constant - row[0], label)
        (equalities if k in linearity else inequalities).append(c)
    return HalfSpaceSystem(variables, tuple(equalities), tuple(inequalities))


# -- structured text for realize -------------------------------------------------------------


def system_document(system: HalfSpaceSystem, vertices: Sequence = ()) -> dict:
    def constraint(c: Constraint) -> dict:
        out = {
            "label": c.label,
            "coefficients": {str(v): format_rational(x) for v, x in c.functional.as_dict().items()},
        }
        if c.functional.constant:
            out["constant"] = format_rational(c.functional.constant)
        out["rhs"] = format_rational(c.rhs)
        return out

    doc = {
        "variables": [str(v) for v in system.variables],
        "equalities": [constraint(c) for c in system.equalities],
        "inequalities": [constraint(c) for c in system.inequalities],
    }
    if vertices:
        doc["vertices"] = [
            {"tubing": name, "point": [format_rational(x) for x in p]} for name, p in vertices
        ]
    return doc


def dump_document(doc) -> str:
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None, width=100)


# -- OFF --------------------------------------------------------------------------------------


def _orthogonal_chart(system: HalfSpaceSystem) -> list[list[Fraction]]:
    from .oracle import _rref

    nvars = len(system.variables)
    rows = [list(c.functional.coefficients) for c in system.equalities]
    M, pivots = _rref(rows) if rows else ([], [])
    basis = []
    for f in (c for c in range(nvars) if c not in pivots):
        v = [Fraction(0)] * nvars
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -M[i][f]
        basis.append(v)
    ortho: list[list[Fraction]] = []
    for v in basis:
        w = list(v)
        for u in ortho:
            coef = sum(a * b for a, b in zip(v, u)) / sum(a * a for a in u)
            w = [a - coef * b for a, b in zip(w, u)]
        ortho.append(w)
    return ortho


def off_document(system: HalfSpaceSystem, vertices: Sequence) -> str:
    """OFF mesh of a 3-dimensional polytope from oracle vertex certificates.

    Coordinates come from an orthonormal chart of the affine hull, so they
    are the only decimal numbers this package writes.
    """
    chart = _orthogonal_chart(system)
    if len(chart) != 3:
        raise FormatError(f"OFF export needs a 3-dimensional polytope, this one has dimension {len(chart)}")
    points = [v.point for v in vertices]
    origin = [sum(col) / len(points) for col in zip(*points)]

    def scaled(p):
        # orientation-preserving rescaling of the orthonormal coordinates
        return [sum((a - o) * b for a, o, b in zip(p, origin, u)) / sum(b * b for b in u) for u in chart]

    exact = [scaled(p) for p in points]
    norms = [math.sqrt(sum(b * b for b in u)) for u in chart]
    faces = []
    labels = sorted({lab for v in vertices for lab in v.tight})
    for lab in labels:
        idx = [i for i, v in enumerate(vertices) if lab in v.tight]
        if len(idx) < 3:
            continue
        nbrs = {
            i: [j for j in idx if j != i and len(vertices[i].tight & vertices[j].tight) >= 2]
            for i in idx
        }
        cycle = [idx[0]]
        prev = None
        while True:
            cur = cycle[-1]
            nxt = [j for j in nbrs[cur] if j != prev and j not in cycle[1:]]
            if not nxt or nxt[0] == cycle[0]:
                break
            prev = cur
            cycle.append(nxt[0])
        centre = [sum(exact[i][k] for i in idx) / len(idx) for k in range(3)]
        a, b, c = (exact[i] for i in cycle[:3])
        u = [b[k] - a[k] for k in range(3)]
        w = [c[k] - a[k] for k in range(3)]
        cross = [u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]]
        if sum(cross[k] * centre[k] for k in range(3)) < 0:
            cycle.reverse()
        faces.append(cycle)
    edges = {
        (i, j)
        for i, j in combinations(range(len(vertices)), 2)
        if len(vertices[i].tight & vertices[j].tight) >= 2
    }
    lines = ["OFF", f"{len(points)} {len(faces)} {len(edges)}"]
    for p in exact:
        lines.append(" ".join(f"{float(x) * nrm:.9g}" for x, nrm in zip(p, norms)))
    for f in faces:
        lines.append(" ".join(str(x) for x in [len(f)] + f))
    return "\n".join(lines) + "\n"
