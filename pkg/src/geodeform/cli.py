"""Command-line front end.

Four subcommands:

    geodeform verify <claim ...|all>   run built-in claims over deformations
    geodeform run <script.geo>         evaluate a script's assertions
    geodeform shapes                   list the decorated base shapes
    geodeform render <shape|script>    write an SVG figure

Human-readable results go to standard output, diagnostics to standard
error, machine-readable reports only where --json is given.  Exit code 0
means every selected claim or assertion held, 1 means at least one did
not, 2 means the invocation itself was unusable (bad flags, unknown
claim, unreadable or malformed script).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .catalog import CLAIMS, claim_names
from .configurations import ShapeKind, base_shape
from .core import ToleranceBudget
from .deform import sample, scaling_probe, verify
from .render import render
from .script import ParseError, UnknownParam, evaluate, parse

__all__ = ["main"]


def _tool_tag() -> str:
    return f"geodeform {__version__}"


def _tolerance(args: argparse.Namespace) -> ToleranceBudget:
    return ToleranceBudget(rel_tol=args.tol)


def _write_json(path: str, document: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(document, handle, indent=2)
        handle.write("\n")


def _parse_eps_grid(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--eps-grid wants comma-separated numbers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("--eps-grid is empty")
    return values


# ---------------------------------------------------------------------------
# verify

def _report_entry(name: str, built_in, report, wall_time: float,
                  convention: str | None) -> dict:
    entry = {
        "name": name,
        "family": report.family,
        "kind": report.kind,
        "labels": list(built_in.claim.labels),
        "description": built_in.claim.description,
        "verdict": report.verdict,
        "max_residual": report.max_residual,
        "mean_residual": report.mean_residual,
        "median_residuals": list(report.median_residuals),
        "epsilons": list(report.epsilons),
        "samples": report.samples,
        "seed": report.seed,
        "rel_tol": report.rel_tol,
        "refute_tol": report.refute_tol,
        "scaling_exponent": report.scaling_exponent,
        "exponent_note": report.exponent_note,
        "flags": list(report.flags),
        "convention": convention,
        "wall_time_s": round(wall_time, 6),
    }
    return entry


def cmd_verify(args: argparse.Namespace) -> int:
    selected = list(claim_names()) if "all" in args.claims else args.claims
    unknown = [name for name in selected if name not in CLAIMS]
    if unknown:
        print(f"unknown claim(s): {', '.join(unknown)}", file=sys.stderr)
        print(f"valid claims: all, {', '.join(claim_names())}", file=sys.stderr)
        return 2
    tol = _tolerance(args)
    grid = args.eps_grid
    entries = []
    all_theorem = True
    try:
        for name in selected:
            built_in = CLAIMS[name]
            start = time.perf_counter()
            if grid is not None:
                report = scaling_probe(built_in.family, built_in.claim,
                                       grid, args.samples, args.seed, tol)
            else:
                report = verify(built_in.family, built_in.claim,
                                args.samples, args.eps, args.seed, tol)
            wall = time.perf_counter() - start
            convention = None
            if built_in.annotate is not None:
                probe_eps = grid[-1] if grid is not None else args.eps
                notes = built_in.annotate(
                    sample(built_in.family, probe_eps, args.seed, tol))
                convention = notes.get("convention")
            entries.append(_report_entry(name, built_in, report, wall,
                                         convention))
            all_theorem = all_theorem and report.verdict == "theorem"
            line = (f"{name}: {report.verdict}"
                    f" max_residual={report.max_residual:.3e}"
                    f" mean_residual={report.mean_residual:.3e}")
            if report.scaling_exponent is not None and grid is not None:
                line += f" exponent={report.scaling_exponent}"
            if convention:
                line += f" [{convention}]"
            print(line)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.json:
        document = {
            "tool": _tool_tag(),
            "command": "verify",
            "claims_requested": args.claims,
            "samples": args.samples,
            "seed": args.seed,
            "tolerance": {"rel_tol": tol.rel_tol, "abs_floor": tol.abs_floor},
            "epsilon": args.eps if grid is None else None,
            "epsilon_grid": grid,
            "claims": entries,
        }
        _write_json(args.json, document)
    if args.svg:
        first = CLAIMS[selected[0]]
        eps = grid[-1] if grid is not None else args.eps
        render(sample(first.family, eps, args.seed, tol), args.svg)
    return 0 if all_theorem else 1


# ---------------------------------------------------------------------------
# run

def _parse_overrides(pairs: list[str]) -> dict[str, float]:
    overrides: dict[str, float] = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or not name:
            raise ValueError(f"--param wants name=value, got {pair!r}")
        overrides[name] = float(value)
    return overrides


def cmd_run(args: argparse.Namespace) -> int:
    try:
        with open(args.path, "r", encoding="utf-8") as handle:
            source = handle.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        program = parse(source)
    except ParseError as exc:
        print(f"{args.path}:{exc.line}:{exc.col}: {exc.message}",
              file=sys.stderr)
        return 2
    try:
        overrides = _parse_overrides(args.param)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    tol = _tolerance(args)
    start = time.perf_counter()
    try:
        config, verdicts = evaluate(program, overrides, tol)
    except UnknownParam as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    wall = time.perf_counter() - start

    entries = []
    all_passed = True
    for stmt, verdict in zip(program.asserts(), verdicts):
        status = "PASS" if verdict.passed else "FAIL"
        all_passed = all_passed and verdict.passed
        labels = ",".join(stmt.labels)
        line = f"{status} {verdict.kind}({labels}) residual={verdict.residual:.2e}"
        if verdict.error:
            line += f" [{verdict.error}]"
        print(line)
        entries.append({
            "kind": verdict.kind,
            "labels": list(stmt.labels),
            "passed": verdict.passed,
            "residual": verdict.residual,
            "flags": list(verdict.flags),
            "error": verdict.error,
        })

    if args.json:
        document = {
            "tool": _tool_tag(),
            "command": "run",
            "path": args.path,
            "params": {k: v for k, v in sorted(config.params.items())},
            "tolerance": {"rel_tol": tol.rel_tol, "abs_floor": tol.abs_floor},
            "asserts": entries,
            "wall_time_s": round(wall, 6),
        }
        _write_json(args.json, document)
    if args.svg:
        render(config, args.svg)
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# shapes and render

def cmd_shapes(_args: argparse.Namespace) -> int:
    for kind in ShapeKind:
        print(kind.name.lower())
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    name = args.source
    kind = None
    for candidate in ShapeKind:
        if candidate.name.lower() == name.lower():
            kind = candidate
            break
    if kind is not None:
        config = base_shape(kind)
    else:
        code = cmd_run_config(args, name)
        if isinstance(code, int):
            return code
        config = code
    try:
        render(config, args.out)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_run_config(args: argparse.Namespace, path: str):
    """Evaluate a script only for its configuration (render path)."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            source = handle.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("(give a shape name from `geodeform shapes` or a .geo file)",
              file=sys.stderr)
        return 2
    try:
        program = parse(source)
    except ParseError as exc:
        print(f"{path}:{exc.line}:{exc.col}: {exc.message}", file=sys.stderr)
        return 2
    try:
        config, _ = evaluate(program, _parse_overrides(args.param))
    except (UnknownParam, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return config


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geodeform",
        description="Verify geometric coincidences under random deformation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser(
        "verify", help="run built-in claims over sampled deformations")
    p_verify.add_argument("claims", nargs="+", metavar="CLAIM",
                          help="claim names, or 'all'")
    p_verify.add_argument("--samples", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--eps", type=float, default=0.5,
                          help="deformation magnitude relative to base size")
    p_verify.add_argument("--eps-grid", type=_parse_eps_grid, default=None,
                          metavar="A,B,C",
                          help="epsilon grid; runs the scaling probe instead")
    p_verify.add_argument("--tol", type=float, default=1e-9,
                          help="relative tolerance for the theorem verdict")
    p_verify.add_argument("--json", metavar="PATH",
                          help="write the machine-readable report here")
    p_verify.add_argument("--svg", metavar="PATH",
                          help="render one sampled configuration here")
    p_verify.set_defaults(func=cmd_verify)

    p_run = sub.add_parser("run", help="evaluate a .geo script")
    p_run.add_argument("path", metavar="SCRIPT.geo")
    p_run.add_argument("--param", action="append", default=[],
                       metavar="NAME=VALUE", help="override a script param")
    p_run.add_argument("--tol", type=float, default=1e-9)
    p_run.add_argument("--json", metavar="PATH")
    p_run.add_argument("--svg", metavar="PATH")
    p_run.set_defaults(func=cmd_run)

    p_shapes = sub.add_parser("shapes", help="list decorated base shapes")
    p_shapes.set_defaults(func=cmd_shapes)

    p_render = sub.add_parser("render", help="write an SVG figure")
    p_render.add_argument("source", metavar="SHAPE|SCRIPT.geo")
    p_render.add_argument("--out", required=True, metavar="PATH")
    p_render.add_argument("--param", action="append", default=[],
                          metavar="NAME=VALUE")
    p_render.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
