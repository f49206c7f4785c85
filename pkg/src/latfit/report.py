"""Report serialization shared by the CLI and the HTTP service."""

from __future__ import annotations

from .lattice import FitReport

SCHEMA_VERSION = 1


def report_payload(report: FitReport) -> dict:
    return {
        "origin": [float(x) for x in report.lattice.origin],
        "basis": [[float(x) for x in v] for v in report.lattice.basis],
        "coeffs": [list(row) for row in report.coeffs],
        "distances": [float(d) for d in report.distances],
        "delta": float(report.delta),
        "diameter": float(report.diameter),
        "norm_max": float(report.norm_max),
        "norm_l2": float(report.norm_l2),
    }


def run_payload(mode: str, norm_choice: str, digits: int, points, entries) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "mode": mode,
        "norm": norm_choice,
        "digits": digits,
        "points": [[float(x) for x in p] for p in points],
        "results": entries,
    }


def _fmt(x) -> str:
    return f"{x:12.4f}"


def render_text(payload: dict) -> str:
    lines = [f"mode={payload['mode']}  norm={payload['norm']}  digits={payload['digits']}"]
    for entry in payload["results"]:
        lines.append("")
        lines.append(f"eps = {entry['eps']:g}")
        if entry.get("error"):
            lines.append(f"  failed: {entry['error']}")
            continue
        n = len(entry["origin"])
        lines.append("  origin: " + "  ".join(_fmt(x) for x in entry["origin"]))
        for i, vec in enumerate(entry["basis"]):
            lines.append(f"  basis[{i}]: " + "  ".join(_fmt(x) for x in vec))
        lines.append("  point" + " " * (12 * n - 5) + "  coords" + "  distance")
        for point, coeff, dist in zip(payload["points"], entry["coeffs"], entry["distances"]):
            coord_txt = "(" + ", ".join(str(c) for c in coeff) + ")"
            lines.append(
                "  " + " ".join(_fmt(x) for x in point) + f"  {coord_txt:>12}" + _fmt(dist)
            )
        lines.append(
            f"  delta={entry['delta']:.4f}  diameter={entry['diameter']:.4f}"
            f"  norm_max={entry['norm_max']:.4f}  norm_l2={entry['norm_l2']:.4f}"
        )
        refined = entry.get("refined")
        if refined:
            lines.append(
                f"  refined: norm_max={refined['norm_max']:.4f}"
                f"  norm_l2={refined['norm_l2']:.4f}"
                f"  (was {entry['norm_max']:.4f}/{entry['norm_l2']:.4f})"
            )
    return "\n".join(lines) + "\n"
