"""Orchestration: run a configured pipeline over a point set, one entry per eps."""

from __future__ import annotations

from . import report as report_mod
from .approx1d import approximate_1d, quality_floor, rational_approx_certificate
from .approxaxis import approximate_axis
from .approxnd import approximate_general
from .errors import DegenerateInput, DimensionMismatch, LatfitError
from .lattice import AffineLattice, PointSet, score_with_coeffs
from .linalg import Vector
from .refine import CoefficientAssignment, refine_fit

MODES = ("1d", "axis", "general")


def _error_entry(eps, exc: Exception) -> dict:
    return {"eps": float(eps), "error": f"{type(exc).__name__}: {exc}"}


def _refined_payload(ps: PointSet, entry: dict, digits: int) -> dict:
    assign = CoefficientAssignment(rows=entry["coeffs"])
    refined = refine_fit(ps, assign, digits)
    payload = report_mod.report_payload(refined.report)
    payload["frozen_norm_max"] = float(refined.frozen_report.norm_max)
    payload["frozen_norm_l2"] = float(refined.frozen_report.norm_l2)
    payload["frozen_residual"] = float(refined.frozen_residual)
    return payload


def _run_1d(ps: PointSet, eps, norm_choice: str, digits: int) -> dict:
    values = [p[0] for p in ps.points]
    result = approximate_1d(values, eps, norm_choice, digits)
    best = result.best
    nz = result.normalized
    lattice = AffineLattice(Vector((nz.origin,)), (Vector((best.spacing,)),))
    coeffs = [None] * ps.size
    for pos, idx in enumerate(nz.order):
        coeffs[idx] = (best.numerators[pos],)
    fit = score_with_coeffs(ps, lattice, coeffs)
    entry = {"eps": float(eps), "error": None}
    entry.update(report_mod.report_payload(fit))
    entry["candidates"] = [
        {
            "denominator": c.denominator,
            "spacing": float(c.spacing),
            "norm_max": float(c.norm_max),
            "norm_l2": float(c.norm_l2),
            "numerators": list(c.numerators),
        }
        for c in result.candidates
    ]
    cert = rational_approx_certificate(values, best.spacing, nz.origin, digits)
    floor = quality_floor(
        result.reduction.shortest_norm,
        result.eps,
        ps.size,
        denominators=[c.denominator for c in result.candidates],
        pipeline_denominator=best.denominator,
    )
    entry["certificates"] = {
        "achievable_bound": float(result.guaranteed_bound),
        "best_within_bound": result.within_bound,
        "rational_approx": {
            "denominator": cert.denominator,
            "max_frac_distance": float(cert.max_frac_distance),
            "denominator_gap": float(cert.denominator_gap),
            "frac_bound": float(cert.frac_bound),
            "gap_bound": float(cert.gap_bound),
            "quality": float(cert.quality),
            "bound_ok": cert.bound_ok,
        },
        "error_floor": {
            "spacing_threshold": float(floor.spacing_threshold),
            "floors": [[q, float(f)] for q, f in floor.floors],
            "first_row_norm": float(floor.first_row_norm),
            "achieved_bound": float(floor.achieved_bound),
        },
    }
    return entry


def _run_axis(ps: PointSet, eps, norm_choice: str, digits: int) -> dict:
    result = approximate_axis(ps, eps, norm_choice, digits)
    entry = {"eps": float(eps), "error": None}
    entry.update(report_mod.report_payload(result.report))
    entry["per_axis"] = [
        {"denominator": c.denominator, "spacing": float(c.spacing)} for c in result.per_axis
    ]
    return entry


def _run_general(ps: PointSet, eps, norm_choice: str, digits: int) -> dict:
    candidate = approximate_general(ps, eps, digits)
    entry = {"eps": float(eps), "error": None}
    entry.update(report_mod.report_payload(candidate.report))
    entry["denom_block"] = [list(row) for row in candidate.denom_block.entries]
    return entry


def run(
    ps: PointSet,
    mode: str,
    eps_values,
    norm_choice: str = "max",
    digits: int = 16,
    refine: bool = False,
) -> dict:
    """Run ``mode`` once per eps and assemble the serializable report."""
    if mode not in MODES:
        raise DegenerateInput(f"unknown mode {mode!r}")
    if mode == "1d" and ps.dim != 1:
        raise DimensionMismatch(f"mode '1d' needs one-dimensional input, got {ps.dim}-D")
    if not eps_values:
        raise DegenerateInput("need at least one eps value")
    runners = {"1d": _run_1d, "axis": _run_axis, "general": _run_general}
    entries = []
    for eps in eps_values:
        try:
            entry = runners[mode](ps, eps, norm_choice, digits)
            if refine:
                entry["refined"] = _refined_payload(ps, entry, digits)
        except LatfitError as exc:
            entry = _error_entry(eps, exc)
        entries.append(entry)
    return report_mod.run_payload(mode, norm_choice, digits, ps.points, entries)


def succeeded(payload: dict) -> bool:
    return any(not entry.get("error") for entry in payload["results"])
