"""Command-line front end.

Subcommands: ``check-function``, ``cuts``, ``certify``, ``face``, ``hull``,
``plot``.  Reports are byte-deterministic given (instance, flags, seed),
every emitted cut carries an oracle verdict, and a report containing any
invalid cut forces a nonzero exit.

Exit codes: 0 success / all valid; 1 invalid cut or failed certificate;
2 malformed input; 3 unsupported construct.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from conecuts import instances, plotting
from conecuts.certify import DEFAULT_BOX, NotProven, certify_empty, derive_face
from conecuts.cgf import (
    CutInequality,
    GammaFunction,
    aggregation_round_cut,
    check_cone_monotone,
    check_positive_on_cone,
    check_subadditive,
    orthant_monotone_counterexample,
    split_and_project_cut,
)
from conecuts.conic2d import ConicBlock2D, hyperbola_cuts
from conecuts.errors import (
    ConeCutsError,
    InadmissibleGammaError,
    MalformedInputError,
    NotAFaceError,
)
from conecuts.exact import Vec, as_vec, format_rational, parse_rational
from conecuts.hull import enumerate_integer_points, integer_hull_window

Box = tuple[int, int, int, int]


# ------------------------------------------------------------- report I/O


def _render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, dict):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            elif isinstance(v, list) and any(isinstance(e, (dict, list)) for e in v):
                lines.append(f"{pad}{k}:")
                for e in v:
                    if isinstance(e, (dict, list)):
                        lines.append(f"{pad}  -")
                        lines.extend(_render_text(e, indent + 2))
                    else:
                        lines.append(f"{pad}  - {e}")
            elif isinstance(v, list):
                lines.append(f"{pad}{k}: [{', '.join(str(e) for e in v)}]")
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(value, list):
        for e in value:
            if isinstance(e, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(e, indent + 1))
            else:
                lines.append(f"{pad}- {e}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def _emit(report: dict, fmt: str, out: Optional[str]) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = "\n".join(_render_text(report)) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------- arg helpers


def _parse_gamma(text: str) -> Vec:
    cleaned = text.strip().strip("()[]")
    parts = [p for p in cleaned.replace(";", ",").split(",") if p.strip()]
    if len(parts) < 2:
        raise MalformedInputError(f"gamma needs at least two entries, got {text!r}")
    return as_vec(parse_rational(p) for p in parts)


def _resolve_box(args, instance: Optional[instances.Instance]) -> Box:
    if getattr(args, "box", None):
        x0, x1, y0, y1 = args.box
        if x0 > x1 or y0 > y1:
            raise MalformedInputError("box is empty: need A <= B and C <= D")
        return x0, x1, y0, y1
    if instance is not None and instance.box is not None:
        return instance.box
    return DEFAULT_BOX


def _load_instance(path: str) -> instances.Instance:
    p = Path(path)
    if not p.exists():
        raise MalformedInputError(f"instance file not found: {path}")
    return instances.load(p)


# ------------------------------------------------------------ cut oracles


def _oracle_verdict(
    cut: CutInequality, points: Sequence[tuple[int, int]]
) -> dict:
    for p in points:
        if not cut.satisfied_by(p):
            return {
                "valid": False,
                "checked_points": len(points),
                "violated_at": list(p),
            }
    return {"valid": True, "checked_points": len(points)}


def _cut_entry(cut: CutInequality, points: Sequence[tuple[int, int]]) -> dict:
    entry = cut.as_dict()
    entry["display"] = plotting.cut_label(cut.pi, cut.rhs)
    entry["oracle"] = _oracle_verdict(cut, points)
    return entry


def _instance_cuts(instance: instances.Instance) -> list[CutInequality]:
    """All cuts an instance requests: branch cuts for every hyperbola
    block, then function-query cuts, then aggregation-query cuts."""
    cuts: list[CutInequality] = []
    for block in instance.blocks:
        if block.kind == "hyperbola":
            cuts.extend(hyperbola_cuts(block))
    for q in instance.functions:
        f = GammaFunction(q.gamma, q.j)
        targets = (
            [instance.blocks[q.block]]
            if q.block is not None
            else [b for b in instance.blocks if b.m == len(q.gamma)]
        )
        if not targets:
            raise MalformedInputError(
                f"no block matches the {len(q.gamma)}-row function query"
            )
        for block in targets:
            cuts.append(split_and_project_cut(f, block.rows, block.rhs))
    for q in instance.aggregations:
        block = instance.blocks[q.block]
        cuts.append(
            aggregation_round_cut(
                [q.weights], [(block.rows, block.rhs)], q.round
            )
        )
    return cuts


# ------------------------------------------------------------- subcommands


def _cmd_check_function(args) -> tuple[int, dict]:
    gamma = _parse_gamma(args.gamma)
    report: dict = {
        "command": "check-function",
        "gamma": [format_rational(c) for c in gamma],
        "j": args.j,
        "samples": args.samples,
        "seed": args.seed,
    }
    try:
        f = GammaFunction(gamma, args.j)
    except InadmissibleGammaError as exc:
        report["admissible"] = False
        report["reason"] = str(exc)
        return 1, report
    report["admissible"] = True
    report["domain"] = f.domain.value
    zero_ok = f.value((Fraction(0),) * len(gamma)) == 0
    checks = [
        {"property": "zero-at-origin", "checked": 1, "violations": 0 if zero_ok else 1},
        check_subadditive(f, pairs=args.samples, seed=args.seed).as_dict(),
        check_cone_monotone(f, pairs=args.samples, seed=args.seed).as_dict(),
        check_positive_on_cone(f, samples=args.samples, seed=args.seed).as_dict(),
    ]
    report["checks"] = checks
    all_pass = all(c["violations"] == 0 for c in checks)
    report["all_pass"] = all_pass
    if args.orthant_monotone:
        pair = orthant_monotone_counterexample(f, samples=2 * args.samples, seed=args.seed)
        if pair is None:
            report["orthant_monotone_counterexample"] = None
        else:
            u, v = pair
            report["orthant_monotone_counterexample"] = {
                "u": [format_rational(c) for c in u],
                "v": [format_rational(c) for c in v],
                "f_u": f.value(u),
                "f_v": f.value(v),
                "note": "u >= v componentwise yet f(u) < f(v); the function "
                "is monotone in the cone order, not the orthant order",
            }
    return (0 if all_pass else 1), report


def _cmd_cuts(args) -> tuple[int, dict]:
    instance = _load_instance(args.instance)
    box = _resolve_box(args, instance)
    cuts = _instance_cuts(instance)
    points = enumerate_integer_points(instance.blocks, box)
    entries = [_cut_entry(c, points) for c in cuts]
    all_valid = all(e["oracle"]["valid"] for e in entries)
    report = {
        "command": "cuts",
        "instance": instance.name or args.instance,
        "instance_hash": instance.hash(),
        "box": list(box),
        "cuts": entries,
        "all_valid": all_valid,
    }
    return (0 if all_valid else 1), report


def _parallel_infeasible(c1: CutInequality, c2: CutInequality) -> bool:
    """True when c1, c2 have opposite normals and incompatible sides."""
    cross = c1.pi[0] * c2.pi[1] - c1.pi[1] * c2.pi[0]
    if cross != 0 or any(a * b > 0 for a, b in zip(c1.pi, c2.pi)):
        return False
    scale = None
    for a, b in zip(c1.pi, c2.pi):
        if b != 0:
            scale = -a / b
            break
    return scale is not None and scale > 0 and c1.rhs + scale * c2.rhs > 0


def _cmd_certify(args) -> tuple[int, dict]:
    instance = _load_instance(args.instance)
    box = _resolve_box(args, instance)
    result = certify_empty(instance.blocks, box=box)
    report: dict = {"command": "certify", "instance": instance.name or args.instance}
    if isinstance(result, NotProven):
        report.update(result.as_dict())
        return 1, report
    report.update(result.as_dict())
    points = enumerate_integer_points(instance.blocks, box)
    report["cuts"] = [_cut_entry(c, points) for c in result.cuts]
    report["jointly_infeasible"] = _parallel_infeasible(*result.cuts)
    ok = (
        report["jointly_infeasible"]
        and all(e["oracle"]["valid"] for e in report["cuts"])
        and not points
    )
    return (0 if ok else 1), report


def _cmd_face(args) -> tuple[int, dict]:
    instance = _load_instance(args.instance)
    box = _resolve_box(args, instance)
    if args.pi is not None:
        pi = as_vec(parse_rational(c) for c in args.pi)
        pi0 = parse_rational(args.pi0) if args.pi0 is not None else Fraction(0)
    elif instance.face is not None:
        pi, pi0 = instance.face.pi, instance.face.pi0
    else:
        raise MalformedInputError(
            "face query missing: pass --pi A B --pi0 C or add queries.face"
        )
    cert = derive_face(instance.blocks, pi, pi0, box=box)
    points = enumerate_integer_points(instance.blocks, box)
    report: dict = {"command": "face", "instance": instance.name or args.instance}
    report.update(cert.as_dict())
    report["cuts"] = [_cut_entry(c, points) for c in cert.cuts]
    ok = all(e["oracle"]["valid"] for e in report["cuts"])
    return (0 if ok else 1), report


def _cmd_hull(args) -> tuple[int, dict]:
    instance = _load_instance(args.instance)
    box = _resolve_box(args, instance)
    hw = integer_hull_window(instance.blocks, box)
    report = {
        "command": "hull",
        "instance": instance.name or args.instance,
        "instance_hash": instance.hash(),
    }
    report.update(hw.as_dict())
    return 0, report


def _cmd_plot(args) -> tuple[int, dict]:
    base = Path(args.out or "plot")
    svg_path = base.with_suffix(".svg")
    csv_path = base.with_suffix(".csv")
    if args.gamma_slice is not None:
        svg = plotting.gamma_slice_svg(args.gamma_slice)
        csv = plotting.gamma_slice_csv(args.gamma_slice)
        title = f"gamma-slice-{args.gamma_slice}"
    else:
        if args.instance is None:
            raise MalformedInputError(
                "plot needs an instance file or --gamma-slice J"
            )
        instance = _load_instance(args.instance)
        if getattr(args, "box", None):
            window = tuple(args.box)
        elif instance.box is not None:
            window = instance.box
        else:
            window = (-10, 10, -10, 10)
        x0, x1, y0, y1 = window
        if x0 >= x1 or y0 >= y1:
            raise MalformedInputError("window degenerate: need A < B and C < D")
        cuts = _instance_cuts(instance)
        # a block-free instance still renders: an empty frame, no points
        points = (
            enumerate_integer_points(instance.blocks, window)
            if instance.blocks
            else ()
        )
        pairs = [(c.pi, c.rhs) for c in cuts]
        title = instance.name or Path(args.instance).stem
        svg = plotting.render_svg(instance.blocks, pairs, points, window, title=title)
        csv = plotting.render_csv(instance.blocks, pairs, points, window)
    svg_path.write_text(svg, encoding="utf-8")
    csv_path.write_text(csv, encoding="utf-8")
    report = {
        "command": "plot",
        "title": title,
        "files": [str(svg_path), str(csv_path)],
        "bytes": [len(svg.encode()), len(csv.encode())],
        "note": plotting.PRESENTATION_NOTE,
    }
    return 0, report


# ------------------------------------------------------------------ parser


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--box",
        nargs=4,
        type=int,
        metavar=("A", "B", "C", "D"),
        help="enumeration window [A,B] x [C,D] (default: instance bounds, "
        "else [-100,100]^2)",
    )
    common.add_argument("--samples", type=int, default=10000, metavar="N")
    common.add_argument("--seed", type=int, default=0, metavar="S")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="PATH", help="write the report here")

    parser = argparse.ArgumentParser(
        prog="conecuts",
        description="Exact cutting planes and certificates for conic "
        "integer sets in the plane.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "check-function",
        parents=[common],
        help="sampled property suite for one step function",
    )
    p.add_argument("--gamma", required=True, help='weights, e.g. "0,1/2,1/2"')
    p.add_argument("--j", type=int, required=True, help="tracked coordinate (1-based)")
    p.add_argument(
        "--orthant-monotone",
        action="store_true",
        help="also search for an orthant-order monotonicity counterexample",
    )
    p.set_defaults(func=_cmd_check_function)

    p = sub.add_parser("cuts", parents=[common], help="emit all requested cuts")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_cuts)

    p = sub.add_parser(
        "certify", parents=[common], help="certify integer emptiness"
    )
    p.add_argument("instance")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser(
        "face", parents=[common], help="re-derive a claimed face inequality"
    )
    p.add_argument("instance")
    p.add_argument("--pi", nargs=2, metavar=("A", "B"), help="face normal")
    p.add_argument("--pi0", metavar="C", help="face right-hand side")
    p.set_defaults(func=_cmd_face)

    p = sub.add_parser(
        "hull", parents=[common], help="integer hull inside the window"
    )
    p.add_argument("instance")
    p.set_defaults(func=_cmd_hull)

    p = sub.add_parser(
        "plot", parents=[common], help="render SVG/CSV plot data"
    )
    p.add_argument("instance", nargs="?")
    p.add_argument(
        "--gamma-slice",
        type=int,
        metavar="J",
        help="render the admissible-weight slice for tracked coordinate J "
        "instead of an instance",
    )
    p.set_defaults(func=_cmd_plot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "text")
    out = getattr(args, "out", None)
    if args.command == "plot":
        out = None  # --out names the plot files; the report goes to stdout
    try:
        code, report = args.func(args)
    except NotAFaceError as exc:
        report = {
            "status": "error",
            "error": type(exc).__name__,
            "message": str(exc),
        }
        if exc.true_rhs is not None:
            report["true_rhs"] = format_rational(exc.true_rhs)
        _emit(report, fmt, out)
        return exc.exit_code
    except ConeCutsError as exc:
        _emit(
            {"status": "error", "error": type(exc).__name__, "message": str(exc)},
            fmt,
            out,
        )
        return exc.exit_code
    _emit(report, fmt, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
