"""Command line interface: ``posetassoc <subcommand> FILE [options]``.

Exit status 0 on success, 1 on domain errors, 2 on usage errors and 3
when ``verify`` finds a failing check.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import affine, formats, oracle, realization
from .errors import FormatError, NotGenericError, PosetAssocError
from .poset import contract
from .tubings import TubingComplex

EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="posetassoc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", help="poset file (YAML/JSON)")
        return sp

    sp = add("tubings", "list proper tubings")
    sp.add_argument("--maximal", action="store_true", help="only maximal tubings")
    sp.add_argument("--lattice", action="store_true", help="DOT of the tubing lattice")

    sp = add("realize", "half-space system and vertices")
    sp.add_argument("--variant", choices=realization.VARIANTS, default="covers")
    sp.add_argument("--epsilon", help="use the epsilon realization (bounded posets), e.g. 1/27")
    sp.add_argument("--no-strict-epsilon", action="store_true",
                    help="allow any 0 < epsilon < 1 instead of epsilon < 1/n^2")
    sp.add_argument("--format", choices=("text", "ine", "off"), default="text")

    sp = add("vertices", "vertices of the realization")
    sp.add_argument("--variant", choices=realization.VARIANTS, default="covers")
    sp.add_argument("--oracle", action="store_true", help="brute-force vertices of the H-system instead")

    sp = add("fvector", "f- and h-vectors")
    sp.add_argument("--outdegree", action="store_true", help="also the outdegree histogram")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tries", type=int, default=100)

    sp = add("verify", "check the realization against the brute-force oracle")
    sp.add_argument("--variant", choices=realization.VARIANTS, default="covers")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--max-cycle", type=int, default=4)

    sp = add("contract", "contract a tube to a single element")
    sp.add_argument("--tube", required=True, help="comma separated element ids")

    sp = add("export", "Hasse diagram (dot), H-representation (ine) or mesh (off)")
    sp.add_argument("--format", choices=("dot", "ine", "off"), required=True)
    sp.add_argument("--variant", choices=realization.VARIANTS, default="covers")
    return p


def _finite_only(args, P, what):
    if isinstance(P, affine.AffinePoset):
        raise _Usage(f"{what} is only defined for finite posets")


class _Usage(Exception):
    pass


def _parse_tube(P, text):
    wanted = [t.strip() for t in text.split(",") if t.strip()]
    lookup = {str(e): e for e in P.elements}
    try:
        return [lookup[w] for w in wanted]
    except KeyError as exc:
        raise FormatError(f"unknown element {exc.args[0]!r} in --tube") from None


def _system_and_vertices(args, P):
    if isinstance(P, affine.AffinePoset):
        if args.variant != "covers":
            raise _Usage("alpha variants apply to finite posets only")
        cx = affine.AffineTubingComplex(P)
        system = affine.build_cyclohedron(P)
        verts = affine.affine_tubing_vertices(P, cx)
        named = [(formats.tubing_name(cx.as_orbits(t)), p) for t, p in verts.items()]
        return system, named
    cx = TubingComplex(P)
    system = realization.build_associahedron(P, args.variant)
    verts = realization.tubing_vertices(P, args.variant, cx)
    named = [(formats.tubing_name(sorted(cx.as_tubes(t))), p) for t, p in verts.items()]
    return system, named


def _cmd_tubings(args, P, out):
    if isinstance(P, affine.AffinePoset):
        if args.lattice:
            raise _Usage("--lattice is only available for finite posets")
        cx = affine.AffineTubingComplex(P)
        tubings = cx.maximal_tubings() if args.maximal else cx.tubings()
        for t in tubings:
            out.write(json.dumps([list(o.members) for o in cx.as_orbits(t)]) + "\n")
        return 0
    cx = TubingComplex(P)
    if args.lattice:
        out.write(formats.tubing_lattice_dot(cx))
        return 0
    tubings = cx.maximal_tubings() if args.maximal else cx.tubings()
    for t in tubings:
        out.write(json.dumps([[formats._plain(e) for e in cx.tubes[k].members] for k in t]) + "\n")
    return 0


def _cmd_realize(args, P, out):
    if args.epsilon is not None:
        _finite_only(args, P, "--epsilon")
        eps = formats.parse_rational(args.epsilon)
        system = realization.epsilon_realization(P, eps, strict=not args.no_strict_epsilon)
        named = [(f"vertex {k}", v.point) for k, v in enumerate(oracle.brute_force_vertices(system))]
    else:
        system, named = _system_and_vertices(args, P)
    if args.format == "ine":
        out.write(formats.system_to_ine(system))
    elif args.format == "off":
        out.write(formats.off_document(system, oracle.brute_force_vertices(system)))
    else:
        out.write(formats.dump_document(formats.system_document(system, named)))
    return 0


def _cmd_vertices(args, P, out):
    if args.oracle:
        system, _ = _system_and_vertices(args, P)
        for v in oracle.brute_force_vertices(system):
            out.write(json.dumps({
                "point": [formats.format_rational(x) for x in v.point],
                "tight": sorted(v.tight),
            }) + "\n")
        return 0
    _, named = _system_and_vertices(args, P)
    for name, p in named:
        out.write(json.dumps({"tubing": name, "point": [formats.format_rational(x) for x in p]}) + "\n")
    return 0


def _cmd_fvector(args, P, out):
    _finite_only(args, P, "fvector")
    fh = realization.f_vector(P)
    doc = {"dimension": fh.dimension, "f": list(fh.f), "h": list(fh.h)}
    if args.outdegree:
        rng = random.Random(args.seed)
        for _ in range(args.tries):
            direction = [rng.randint(-1000, 1000) for _ in range(P.n)]
            try:
                hist = realization.h_vector_by_outdegree(P, direction)
            except NotGenericError:
                continue
            doc["outdegree"] = list(hist)
            doc["direction"] = direction
            break
        else:
            raise NotGenericError(f"no generic direction found in {args.tries} tries")
    out.write(formats.dump_document(doc))
    return 0


def _cmd_verify(args, P, out):
    if isinstance(P, affine.AffinePoset):
        if args.variant != "covers":
            raise _Usage("alpha variants apply to finite posets only")
        report = oracle.verify_affine_realization(P)
    else:
        report = oracle.verify_realization(P, args.variant, args.max_cycle)
    out.write((report.to_json() if args.json else report.to_text()) + "\n")
    return 0 if report.passed else EXIT_VERIFY


def _cmd_contract(args, P, out):
    _finite_only(args, P, "contract")
    tube = _parse_tube(P, args.tube)
    merged = "+".join(str(e) for e in P.elements if e in set(tube))
    Q = contract(P, tube, merged)
    out.write(formats.dump_poset(Q))
    return 0


def _cmd_export(args, P, out):
    if args.format == "dot":
        _finite_only(args, P, "DOT export of the Hasse diagram")
        out.write(formats.hasse_dot(P))
        return 0
    system, _ = _system_and_vertices(args, P)
    if args.format == "ine":
        out.write(formats.system_to_ine(system))
    else:
        out.write(formats.off_document(system, oracle.brute_force_vertices(system)))
    return 0


COMMANDS = {
    "tubings": _cmd_tubings,
    "realize": _cmd_realize,
    "vertices": _cmd_vertices,
    "fvector": _cmd_fvector,
    "verify": _cmd_verify,
    "contract": _cmd_contract,
    "export": _cmd_export,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        P = formats.load_poset(args.input)
        return COMMANDS[args.command](args, P, out)
    except _Usage as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"error[E_IO]: {exc}\n")
        return EXIT_DOMAIN
    except PosetAssocError as exc:
        err.write(f"error[{exc.code}]: {exc}\n")
        return EXIT_DOMAIN


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
