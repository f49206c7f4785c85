"""One-dimensional pipeline.

Scale the sorted values into [0,1], embed the interior values into a square
matrix with a single epsilon column, LLL-reduce, and read integer candidates
(numerators plus a common denominator) off the transform rows.  Each
candidate yields a lattice spacing ``scale / denominator`` scored with the
quality norms.  Certificate helpers quantify how good an approximation is
forced to be (or cannot be) given the reduction output.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from . import numeric
from .errors import DegenerateInput, NoCandidate
from .lattice import AffineLattice, point_set, score
from .linalg import Matrix, Vector
from .lll import ReductionParams, ReductionResult, lll_reduce

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Normalized1D:
    """Sorted values mapped onto [0, 1]."""

    origin: object  # smallest value
    scale: object  # largest minus smallest
    normalized: tuple  # ascending, first 0, last 1
    order: tuple  # normalized[i] corresponds to input index order[i]


@dataclass(frozen=True)
class Candidate1D:
    """Integer approximation p_i ~ denominator * normalized_i."""

    numerators: tuple  # k integers, first 0, last = denominator
    denominator: int
    spacing: object  # scale / denominator
    norm_max: object
    norm_l2: object


@dataclass(frozen=True)
class Result1D:
    best: Candidate1D
    candidates: tuple
    normalized: Normalized1D
    reduction: ReductionResult
    eps: object
    guaranteed_bound: float
    within_bound: bool


def normalize_1d(values, digits: int = 16) -> Normalized1D:
    vals = [numeric.to_scalar(v, digits) for v in values]
    k = len(vals)
    if k < 3:
        raise DegenerateInput(f"need at least 3 values, got {k}")
    order = tuple(sorted(range(k), key=lambda i: vals[i]))
    sorted_vals = [vals[i] for i in order]
    origin = sorted_vals[0]
    scale = sorted_vals[-1] - origin
    if scale == 0:
        raise DegenerateInput("all values are equal")
    normalized = tuple((v - origin) / scale for v in sorted_vals)
    return Normalized1D(origin=origin, scale=scale, normalized=normalized, order=order)


def build_embedding_1d(nz: Normalized1D, eps) -> Matrix:
    """Identity block over a row of interior normalized values plus eps."""
    if not 0 < eps < 1:
        raise DegenerateInput(f"eps must lie in (0, 1), got {eps}")
    k = len(nz.normalized)
    size = k - 1
    rows = []
    for i in range(size - 1):
        rows.append(tuple(1.0 if j == i else 0.0 for j in range(size)))
    rows.append(tuple(nz.normalized[1:-1]) + (eps,))
    return Matrix(tuple(rows))


def _sorted_values(nz: Normalized1D) -> tuple:
    return tuple(nz.origin + nz.scale * a for a in nz.normalized)


def _score_candidate(nz: Normalized1D, numerators, denominator, digits: int) -> Candidate1D:
    spacing = nz.scale / denominator
    lat = AffineLattice(Vector((nz.origin,)), (Vector((spacing,)),))
    ps = point_set([(v,) for v in _sorted_values(nz)], digits)
    report = score(ps, lat, digits)
    return Candidate1D(
        numerators=tuple(numerators),
        denominator=denominator,
        spacing=spacing,
        norm_max=report.norm_max,
        norm_l2=report.norm_l2,
    )


def extract_candidates_1d(
    rr: ReductionResult, nz: Normalized1D, norm_choice: str = "max", digits: int = 16
) -> list:
    """One candidate per transform row with a nonzero last entry.

    The last entry (up to sign) is the denominator; the leading entries are
    the interior numerators.  Candidates are scored against the raw values
    and sorted ascending by the chosen norm, ties preferring the smaller
    denominator.
    """
    k = len(nz.normalized)
    candidates = {}
    for row in rr.transform.entries:
        last = int(row[-1])
        if last == 0:
            continue
        denominator = abs(last)
        if denominator in candidates:
            continue
        sign = 1 if last < 0 else -1
        interior = tuple(sign * int(x) for x in row[:-1])
        numerators = (0,) + interior + (denominator,)
        candidates[denominator] = _score_candidate(nz, numerators, denominator, digits)
    if not candidates:
        raise NoCandidate("every transform row has a zero last entry")
    key = (lambda c: (c.norm_max, c.denominator)) if norm_choice == "max" else (
        lambda c: (c.norm_l2, c.denominator)
    )
    return sorted(candidates.values(), key=key)


def approximate_1d(
    values,
    eps,
    norm_choice: str = "max",
    digits: int = 16,
    delta: float = 0.75,
) -> Result1D:
    """Full 1-D pipeline: normalize, embed, reduce, extract, score."""
    with numeric.working_precision(digits):
        nz = normalize_1d(values, digits)
        eps_s = numeric.to_scalar(eps, digits)
        embedding = build_embedding_1d(nz, eps_s)
        rr = lll_reduce(embedding, ReductionParams(delta=delta, precision_digits=digits))
        candidates = extract_candidates_1d(rr, nz, norm_choice, digits)
        best = candidates[0]
        bound = guaranteed_norm_bound(len(nz.normalized))
        within = bool(best.norm_max < bound)
        if not within:
            log.warning(
                "best candidate norm %.4f exceeds the guaranteed bound %.4f",
                float(best.norm_max),
                bound,
            )
        return Result1D(
            best=best,
            candidates=tuple(candidates),
            normalized=nz,
            reduction=rr,
            eps=eps_s,
            guaranteed_bound=bound,
            within_bound=within,
        )


def guaranteed_norm_bound(k: int) -> float:
    """Norm achievable in polynomial time for any k values: 2^((k-1)/4)."""
    if k < 3:
        raise DegenerateInput(f"need at least 3 values, got {k}")
    return 2.0 ** ((k - 1) / 4.0)


def _dist_to_int(x):
    return abs(x - numeric.nearest_int(x))


@dataclass(frozen=True)
class RationalApproxCertificate:
    """A good lattice fit forces good simultaneous rational approximation;
    this certifies the forced bounds for a concrete spacing/origin."""

    denominator: int
    max_frac_distance: object  # max over interior values of ||q * normalized||
    denominator_gap: object  # |scale/spacing - q|
    frac_bound: object  # 6 * quality * q^(-1/(k-2))
    gap_bound: object  # 3 * quality * q^(-1/(k-2))
    quality: object  # norm_max of the (spacing, origin) fit
    bound_ok: bool


def rational_approx_certificate(
    values, spacing, origin, digits: int = 16
) -> RationalApproxCertificate:
    with numeric.working_precision(digits):
        nz = normalize_1d(values, digits)
        spacing = numeric.to_scalar(spacing, digits)
        origin = numeric.to_scalar(origin, digits)
        if spacing <= 0:
            raise DegenerateInput("spacing must be positive")
        k = len(nz.normalized)
        lat = AffineLattice(Vector((origin,)), (Vector((spacing,)),))
        ps = point_set([(v,) for v in _sorted_values(nz)], digits)
        quality = score(ps, lat, digits).norm_max
        t = nz.scale / spacing
        q = numeric.nearest_int(t)
        if q == 0:
            raise DegenerateInput("spacing larger than the value range")
        max_frac = max(_dist_to_int(q * a) for a in nz.normalized[1:-1])
        gap = abs(t - q)
        shrink = float(q) ** (-1.0 / (k - 2))
        frac_bound = 6.0 * quality * shrink
        gap_bound = 3.0 * quality * shrink
        return RationalApproxCertificate(
            denominator=q,
            max_frac_distance=max_frac,
            denominator_gap=gap,
            frac_bound=frac_bound,
            gap_bound=gap_bound,
            quality=quality,
            bound_ok=bool(max_frac < frac_bound and gap < gap_bound),
        )


@dataclass(frozen=True)
class QualityFloor:
    """Below-threshold spacings cannot beat these per-denominator error floors."""

    spacing_threshold: object
    floors: tuple  # (denominator, floor) pairs
    first_row_norm: object
    achieved_bound: object | None  # |b1| / q for the pipeline's own denominator


def quality_floor(
    first_row_norm, eps, k: int, denominators=(), pipeline_denominator: int | None = None
) -> QualityFloor:
    """Error floor max_i |a_i - p_i d'| >= 2^(1-k/2) |b1| / (q' sqrt(k)) valid
    for every spacing d' above sqrt(k) 2^(k/2-1) eps / |b1|."""
    root_k = numeric.sqrt(float(k))
    threshold = root_k * (2.0 ** (k / 2.0 - 1.0)) * eps / first_row_norm
    factor = (2.0 ** (1.0 - k / 2.0)) * first_row_norm / root_k
    floors = tuple((int(q), factor / q) for q in denominators)
    achieved = None
    if pipeline_denominator is not None:
        achieved = first_row_norm / pipeline_denominator
    return QualityFloor(
        spacing_threshold=threshold,
        floors=floors,
        first_row_norm=first_row_norm,
        achieved_bound=achieved,
    )
