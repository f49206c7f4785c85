"""Command-line front end.

Reads one point per line (coordinates separated by whitespace or commas,
``#`` comments allowed), runs the chosen pipeline, and prints a text table or
a JSON report.  With ``--server`` the work is delegated to a running latfit
HTTP service instead of being computed in-process.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import report as report_mod
from . import runner
from .errors import DimensionMismatch, LatfitError, ParseError
from .lattice import PointSet, point_set

USAGE_EXIT = 2
FAILURE_EXIT = 1


def ingest(source, digits: int = 16) -> PointSet:
    """Parse a point set from a file path, '-' (stdin), or an open stream."""
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    elif source == "-":
        lines = sys.stdin.read().splitlines()
    else:
        try:
            with open(source, "r", encoding="utf-8") as handle:
                lines = handle.read().splitlines()
        except OSError as exc:
            raise ParseError(str(exc)) from exc
    rows = []
    width = None
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        fields = text.replace(",", " ").split()
        for field in fields:
            try:
                float(field)
            except ValueError as exc:
                raise ParseError(f"not a number: {field!r}", line=lineno) from exc
        row = tuple(fields)  # keep strings so extended precision sees every digit
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise DimensionMismatch(
                f"line {lineno}: expected {width} coordinates, got {len(row)}"
            )
        rows.append(row)
    if not rows:
        raise ParseError("no data lines found")
    # Strings go straight to the scalar layer so extended precision keeps
    # every input digit.
    return point_set(rows, digits)


def parse_sweep(text: str):
    """'start:end' exponents (inclusive), each eps = 10^exponent."""
    try:
        start_txt, end_txt = text.split(":", 1)
        start, end = int(start_txt), int(end_txt)
    except ValueError:
        raise ValueError(f"sweep must look like '-2:-10', got {text!r}")
    step = 1 if end >= start else -1
    exponents = range(start, end + step, step)
    eps_values = [10.0 ** e for e in exponents]
    if not all(0 < e < 1 for e in eps_values):
        raise ValueError("sweep exponents must yield eps in (0, 1); use negative exponents")
    return eps_values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latfit",
        description="Fit an affine lattice near every point of a finite set.",
    )
    parser.add_argument("input", help="input file (one point per line) or '-' for stdin")
    parser.add_argument("--mode", choices=runner.MODES, default="general")
    parser.add_argument("--eps", type=float, default=None, help="embedding epsilon (default 1e-3)")
    parser.add_argument(
        "--eps-sweep",
        default=None,
        metavar="START:END",
        help="sweep eps over powers of ten, e.g. -2:-10",
    )
    parser.add_argument("--norm", choices=("max", "l2"), default="max")
    parser.add_argument("--digits", type=int, default=16, help="working precision (>= 10)")
    parser.add_argument("--refine", action="store_true", help="least-squares fine-tuning pass")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--output", default=None, help="write the report here instead of stdout")
    parser.add_argument("--server", default=None, help="base URL of a latfit service to call")
    return parser


def _resolve_eps(args, parser) -> list:
    if args.eps is not None and args.eps_sweep is not None:
        parser.error("--eps and --eps-sweep are mutually exclusive")
    if args.eps_sweep is not None:
        try:
            values = parse_sweep(args.eps_sweep)
        except ValueError as exc:
            parser.error(str(exc))
        if not values:
            parser.error("empty eps sweep")
        return values
    eps = args.eps if args.eps is not None else 1e-3
    if not 0 < eps < 1:
        parser.error(f"eps must lie in (0, 1), got {eps}")
    return [eps]


def _call_server(base_url: str, ps: PointSet, args, eps_values) -> dict:
    import httpx

    body = {
        "points": [[float(x) for x in p] for p in ps.points],
        "mode": args.mode,
        "eps_sweep": [float(e) for e in eps_values],
        "norm": args.norm,
        "digits": args.digits,
        "refine": args.refine,
    }
    response = httpx.post(base_url.rstrip("/") + "/fit", json=body, timeout=300.0)
    response.raise_for_status()
    return response.json()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.digits < 10:
        parser.error(f"--digits must be at least 10, got {args.digits}")
    eps_values = _resolve_eps(args, parser)

    try:
        ps = ingest(args.input, args.digits)
        if args.server:
            payload = _call_server(args.server, ps, args, eps_values)
        else:
            payload = runner.run(ps, args.mode, eps_values, args.norm, args.digits, args.refine)
    except LatfitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE_EXIT
    except Exception as exc:  # server/IO failures
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE_EXIT

    text = (
        json.dumps(payload, indent=2) + "\n"
        if args.format == "json"
        else report_mod.render_text(payload)
    )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0 if runner.succeeded(payload) else FAILURE_EXIT


if __name__ == "__main__":
    raise SystemExit(main())
