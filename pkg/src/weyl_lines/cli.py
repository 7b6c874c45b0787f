"""Command-line front end for reduction, orbits and (i)-Weyl line classification.

Exit codes: 0 on a computed result (a "No" verdict included), 1 when a
self-check fails, 2 on usage errors, 3 when a cap was hit and ``--strict``
was given.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .chow import (
    CurveClass,
    SpaceParams,
    anticanonical_curve,
    bilinear_curve,
    numerical_i_level,
    q_curve,
    vdim,
)
from .classify import (
    DEFAULT_BREADTH_CAP,
    DEFAULT_DEPTH_CAP,
    equivalence_report,
    is_weyl_line,
    spi_witness_search,
)
from .coxeter import (
    CoxGraph,
    b_positive_definite,
    check_generator_relations,
    chamber_face,
    bilinear_div_matches_b,
    commuting_square_failures,
    weyl_finite,
)
from .cremona import is_cremona_reduced, projection_inequality
from .reduction import (
    DEFAULT_ORBIT_CAP,
    CapExceeded,
    cremona_reduce,
    default_step_cap,
    orbit_enumerate,
    r_table,
    r_table_row_label,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _space(args) -> SpaceParams:
    try:
        return SpaceParams(args.r, args.s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _class(args, space: SpaceParams) -> CurveClass:
    if args.cls is None:
        raise UsageError("--class is required")
    try:
        return CurveClass.parse(space, args.cls)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot parse class: {exc}") from None


def _envelope(command: str, space: SpaceParams, **caps) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "r": space.r, "s": space.s, "caps": caps}


def cmd_invariants(args):
    space = _space(args)
    c = _class(args, space)
    level = numerical_i_level(c)
    i = args.i if args.i is not None else level
    out = _envelope("invariants", space)
    out.update(
        {
            "class": c.to_dict(),
            "linear": bilinear_curve(anticanonical_curve(space), c),
            "quadratic": q_curve(c),
            "vdim": vdim(c),
            "i_level": level,
            "cremona_reduced": is_cremona_reduced(c),
            "projection_inequality": projection_inequality(c, i) if i in (-1, 0, 1) else None,
        }
    )
    text = [
        f"class        {c}",
        f"<F,c>        {out['linear']}",
        f"<c,c>        {out['quadratic']}",
        f"vdim         {out['vdim']}",
        f"i-level      {level}",
        f"reduced      {str(out['cremona_reduced']).lower()}",
        f"proj. ineq.  {out['projection_inequality']}",
    ]
    return out, text, EXIT_OK


def cmd_reduce(args):
    space = _space(args)
    c = _class(args, space)
    outcome = cremona_reduce(c, args.step_cap)
    out = _envelope("reduce", space, step_cap=args.step_cap)
    body = outcome.to_dict()
    if not args.trace:
        body.pop("trace")
    out["input"] = c.to_dict()
    out["result"] = body
    text = [f"outcome  {outcome.kind}", f"steps    {outcome.steps}"]
    if outcome.kind == "reduced":
        text.append(f"final    {outcome.final}")
        text.append(f"face     {sorted(chamber_face(outcome.final))}")
    elif outcome.kind == "not_in_tits_cone":
        cert = outcome.certificate
        text.append(f"lemma    {cert.lemma} at {cert.cls} (M1={cert.M1}, M_s-r={cert.M_last}, t={cert.t}, N1={cert.N1})")
    else:
        text.append(f"last     {outcome.last}")
    if args.trace:
        text += [f"  {st.cls}{'  -> phi' if st.phi_applied else ''}" for st in outcome.trace]
    code = EXIT_CAP if args.strict and isinstance(outcome, CapExceeded) else EXIT_OK
    return out, text, code


def cmd_classify(args):
    space = _space(args)
    c = _class(args, space)
    if args.i is None:
        raise UsageError("--i is required")
    try:
        if args.report:
            rep = equivalence_report(c, args.i, args.depth_cap, args.breadth_cap)
            verdict = None
        else:
            verdict = is_weyl_line(c, args.i)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.report:
        out = _envelope("classify", space, depth_cap=args.depth_cap, breadth_cap=args.breadth_cap)
        if not args.trace:
            rep.pop("trace")
        rep.pop("caps")
        out["result"] = rep
        text = [
            f"verdict      {rep['verdict']} ({rep['reason']})",
            f"<c,F>        {rep['invariant_linear']['value']} (expected {rep['invariant_linear']['expected']})",
            f"<c,c>        {rep['invariant_quadratic']['value']} (expected {rep['invariant_quadratic']['expected']})",
            f"witness      {rep['spi_witness']}",
            f"consistency  {rep['consistency']}",
        ] + [f"note         {n}" for n in rep["notes"]]
        return out, text, EXIT_OK
    out = _envelope("classify", space)
    body = verdict.to_dict()
    if not args.trace:
        body.pop("trace")
    out["input"] = c.to_dict()
    out["result"] = body
    text = [f"verdict  {'yes' if verdict.is_line else 'no'}" + (f" ({verdict.reason})" if verdict.reason else "")]
    if args.trace:
        text += [f"  {st.cls}{'  -> phi' if st.phi_applied else ''}" for st in verdict.trace]
    return out, text, EXIT_OK


def cmd_orbit(args):
    space = _space(args)
    c = _class(args, space)
    orbit = orbit_enumerate(c, cap=args.cap, jobs=args.jobs)
    out = _envelope("orbit", space, cap=args.cap)
    out["input"] = c.to_dict()
    out["result"] = orbit.summary()
    out["result"]["canonical"] = len(orbit.canonical)
    if args.classes:
        with open(args.classes, "w") as fh:
            for x in orbit.raw_classes():
                fh.write(x.to_json() + "\n")
    text = [f"size      {orbit.size}", f"complete  {str(orbit.complete).lower()}", f"sorted    {len(orbit.canonical)}"]
    code = EXIT_CAP if args.strict and not orbit.complete else EXIT_OK
    return out, text, code


def cmd_rtable(args):
    space = _space(args)
    try:
        entry = r_table(space)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = _envelope("rtable", space)
    out["result"] = {"row": r_table_row_label(space), "class": entry.to_dict(), "face": sorted(chamber_face(entry))}
    return out, [str(entry)], EXIT_OK


def cmd_witness(args):
    space = _space(args)
    c = _class(args, space)
    w = spi_witness_search(c, args.i, args.depth_cap, args.breadth_cap)
    out = _envelope("witness", space, depth_cap=args.depth_cap, breadth_cap=args.breadth_cap)
    out["input"] = c.to_dict()
    out["result"] = {"spi_witness": None if w is None else w.to_dict()}
    if w is None:
        text = [f"no witness within depth {args.depth_cap}, breadth {args.breadth_cap}"]
    else:
        text = [f"witness  k={w.k} value={w.value} deg={w.degree_check} depth={w.depth}", f"word     {list(w.word)}"]
    return out, text, EXIT_OK


def cmd_coxeter_check(args):
    space = _space(args)
    try:
        graph = CoxGraph.of(space)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    relations = check_generator_relations(graph)
    square = commuting_square_failures(graph)
    forms = bilinear_div_matches_b(graph)
    finite = weyl_finite(space)
    definite = b_positive_definite(graph)
    checks = {
        "generator_relations": not relations,
        "form_preserved_by_beta": not forms,
        "commuting_square": not square,
        "finite_iff_positive_definite": finite == definite,
    }
    out = _envelope("coxeter-check", space)
    out["result"] = {"checks": checks, "weyl_finite": finite, "failures": relations + forms + square}
    text = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in checks.items()]
    text.append(f"weyl group finite: {str(finite).lower()}")
    return out, text, EXIT_OK if all(checks.values()) else EXIT_CHECK_FAILED


COMMANDS = {
    "invariants": cmd_invariants,
    "reduce": cmd_reduce,
    "classify": cmd_classify,
    "orbit": cmd_orbit,
    "rtable": cmd_rtable,
    "witness": cmd_witness,
    "coxeter-check": cmd_coxeter_check,
}


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _at_least_one(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=int, required=True, help="dimension of the projective space")
    common.add_argument("--s", type=int, required=True, help="number of blown-up points")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--output", help="write the result here instead of stdout")

    klass = argparse.ArgumentParser(add_help=False)
    klass.add_argument("--class", dest="cls", help='curve class as "d; m1,...,ms" or JSON')

    level = argparse.ArgumentParser(add_help=False)
    level.add_argument("--i", type=int, choices=(-1, 0, 1), help="line level: -1, 0 or 1")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--depth-cap", type=_nonnegative, default=DEFAULT_DEPTH_CAP,
                        help=f"witness search depth (default {DEFAULT_DEPTH_CAP})")
    search.add_argument("--breadth-cap", type=_nonnegative, default=DEFAULT_BREADTH_CAP,
                        help=f"index sets tried per node (default {DEFAULT_BREADTH_CAP})")

    flow = argparse.ArgumentParser(add_help=False)
    flow.add_argument("--trace", action="store_true", help="include the full trace")
    flow.add_argument("--strict", action="store_true", help="exit 3 when a cap is hit")

    cap = default_step_cap()
    parser = argparse.ArgumentParser(prog="weyl-lines", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("invariants", parents=[common, klass, level], help="linear/quadratic invariants of a class")
    p = sub.add_parser("reduce", parents=[common, klass, flow], help="Cremona reduction mod F")
    p.add_argument("--step-cap", type=_nonnegative, default=cap,
                   help=f"maximum phi applications (default {cap}; env WEYL_LINES_STEP_CAP)")
    p = sub.add_parser("classify", parents=[common, klass, level, flow, search], help="is the class an (i)-Weyl line?")
    p.add_argument("--report", action="store_true", help="full numerical-criterion report (r = 3)")
    p = sub.add_parser("orbit", parents=[common, klass, flow], help="enumerate the Weyl orbit")
    p.add_argument("--cap", type=_nonnegative, default=DEFAULT_ORBIT_CAP,
                   help=f"maximum number of sorted classes (default {DEFAULT_ORBIT_CAP})")
    p.add_argument("--jobs", type=_at_least_one, default=1, help="worker processes for the frontier expansion")
    p.add_argument("--classes", help="write every orbit class here as JSON lines")
    sub.add_parser("rtable", parents=[common], help="reduced representative of the line through two points")
    sub.add_parser("witness", parents=[common, klass, level, search], help="search for a strong projection inequality violation")
    sub.add_parser("coxeter-check", parents=[common], help="verify the Coxeter representation identities")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"weyl-lines {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rendered = json.dumps(out, indent=2, sort_keys=True) if args.json else "\n".join(text)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(rendered + "\n")
    else:
        print(rendered)
    return code


if __name__ == "__main__":
    sys.exit(main())
