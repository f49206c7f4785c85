"""General affine pipeline.

Pick n+1 anchor points (diameter pair, then greedy farthest-from-hull), map
them affinely to the origin and unit vectors, embed the remaining normalized
points into a square matrix with one epsilon column per dimension, reduce,
select an invertible integer block from the transform's trailing columns, and
invert it (together with the normalization) to recover a candidate lattice.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

from . import numeric
from .errors import DegenerateInput, LatfitError, NoInvertibleBlock
from .lattice import AffineLattice, FitReport, PointSet, score_with_coeffs
from .linalg import Matrix, Vector, dot, invert, norm, vec_scale, vec_sub
from .lll import ReductionParams, lll_reduce

log = logging.getLogger(__name__)

# Anchors whose hull distance falls below this (relative to the diameter)
# would make the normalization singular.
ANCHOR_TOL = 1e-9


@dataclass(frozen=True)
class AnchorSet:
    """n+1 point indices; the first maps to the origin, the rest to unit vectors."""

    indices: tuple


@dataclass(frozen=True)
class NormalizedND:
    unit_map: Matrix  # sends (point - origin) to normalized coordinates
    origin: Vector
    normalized: tuple  # all k points in normalized coordinates
    anchors: AnchorSet
    free_indices: tuple  # non-anchor indices in input order


@dataclass(frozen=True)
class CandidateND:
    denom_block: Matrix  # n x n integers, invertible
    denom_rows: tuple  # transform row indices the block came from
    coeff_block: tuple  # n rows of integer coefficients for the free points
    lattice: AffineLattice
    report: FitReport


@dataclass(frozen=True)
class SweepEntry:
    eps: object
    candidate: CandidateND | None
    error: str | None


def select_anchors(ps: PointSet) -> AnchorSet:
    """Diameter pair first (origin = smaller index), then repeatedly the point
    farthest from the affine hull of the anchors chosen so far.  Ties break
    to the lowest index for determinism."""
    pts = ps.points
    k, n = ps.size, ps.dim
    best = None
    pair = (0, 1)
    for i in range(k):
        for j in range(i + 1, k):
            d = norm(vec_sub(pts[i].entries, pts[j].entries))
            if best is None or d > best:
                best = d
                pair = (i, j)
    diam = best
    origin_idx = min(pair)
    chosen = [origin_idx, max(pair)]
    ortho = []  # orthonormal directions spanning the current hull

    def residual(idx):
        v = list(vec_sub(pts[idx].entries, pts[origin_idx].entries))
        for u in ortho:
            c = dot(v, u)
            for l in range(n):
                v[l] -= c * u[l]
        return v

    def extend_hull(idx):
        v = residual(idx)
        length = norm(v)
        ortho.append(vec_scale(v, 1.0 / length))

    extend_hull(chosen[1])
    while len(chosen) < n + 1:
        best_idx = None
        best_dist = None
        for idx in range(k):
            if idx in chosen:
                continue
            d = norm(residual(idx))
            if best_dist is None or d > best_dist:
                best_dist = d
                best_idx = idx
        if best_idx is None or best_dist <= ANCHOR_TOL * diam:
            raise DegenerateInput("points lie in a hyperplane; cannot pick anchors")
        chosen.append(best_idx)
        extend_hull(best_idx)
    return AnchorSet(indices=tuple(chosen))


def normalize_affine(ps: PointSet, anchors: AnchorSet) -> NormalizedND:
    """Affine map taking anchor 0 to the origin and anchor j to unit vector j."""
    pts = ps.points
    n = ps.dim
    origin = pts[anchors.indices[0]]
    columns = [vec_sub(pts[i].entries, origin.entries) for i in anchors.indices[1:]]
    anchor_matrix = Matrix(tuple(zip(*columns)))  # columns are anchor differences
    unit_map = invert(anchor_matrix)
    normalized = tuple(
        Vector(tuple(dot(row, vec_sub(p.entries, origin.entries)) for row in unit_map.entries))
        for p in pts
    )
    free = tuple(i for i in range(ps.size) if i not in anchors.indices)
    return NormalizedND(
        unit_map=unit_map,
        origin=origin,
        normalized=normalized,
        anchors=anchors,
        free_indices=free,
    )


def build_embedding_nd(nz: NormalizedND, eps) -> Matrix:
    """Identity block over the free points' coordinates, with eps*I alongside."""
    if not 0 < eps < 1:
        raise DegenerateInput(f"eps must lie in (0, 1), got {eps}")
    n = nz.origin.dim
    free = nz.free_indices
    f = len(free)
    size = f + n
    rows = []
    for i in range(f):
        rows.append(tuple(1.0 if j == i else 0.0 for j in range(size)))
    for r in range(n):
        coords = tuple(nz.normalized[idx][r] for idx in free)
        eps_part = tuple(eps if j == r else 0.0 for j in range(n))
        rows.append(coords + eps_part)
    return Matrix(tuple(rows))


def select_denominator_block(transform: Matrix, n: int):
    """Scan transform rows top-down, keeping rows whose trailing n integer
    entries extend the rank, until n independent rows are found."""
    total = transform.ncols
    lead = total - n
    basis = []  # row-echelon basis over the rationals
    rows = []
    for idx in range(transform.nrows):
        tail = [Fraction(int(x)) for x in transform[idx][lead:]]
        work = tail[:]
        for pivot_col, pivot_row in basis:
            if work[pivot_col]:
                factor = work[pivot_col] / pivot_row[pivot_col]
                work = [w - factor * p for w, p in zip(work, pivot_row)]
        pivot_col = next((c for c, w in enumerate(work) if w), None)
        if pivot_col is None:
            continue
        basis.append((pivot_col, work))
        rows.append(idx)
        if len(rows) == n:
            break
    if len(rows) < n:
        raise NoInvertibleBlock("transform has no invertible trailing block")
    denom_block = Matrix(tuple(tuple(int(x) for x in transform[i][lead:]) for i in rows))
    coeff_block = tuple(tuple(int(x) for x in transform[i][:lead]) for i in rows)
    return denom_block, tuple(rows), coeff_block


def recover_lattice(
    ps: PointSet,
    nz: NormalizedND,
    denom_block: Matrix,
    denom_rows,
    coeff_block,
    digits: int = 16,
) -> CandidateND:
    """Invert the integer block and the normalization to get the lattice.

    Anchor points land exactly on the lattice (their coordinates are the
    negated block columns); free points carry the transform coefficients.
    """
    n = ps.dim
    with numeric.working_precision(digits):
        block_scalar = Matrix(
            tuple(tuple(numeric.to_scalar(x, digits) for x in row) for row in denom_block.entries)
        )
        unit_map_inv = invert(nz.unit_map)
        block_inv = invert(block_scalar)
        product = unit_map_inv @ block_inv
        basis = tuple(
            Vector(tuple(-product[r][i] for r in range(n))) for i in range(n)
        )
        lattice = AffineLattice(nz.origin, basis)

        coeffs = [None] * ps.size
        anchor_indices = nz.anchors.indices
        coeffs[anchor_indices[0]] = (0,) * n
        for j, idx in enumerate(anchor_indices[1:]):
            coeffs[idx] = tuple(-int(denom_block[l][j]) for l in range(n))
        for c, idx in enumerate(nz.free_indices):
            coeffs[idx] = tuple(int(coeff_block[l][c]) for l in range(n))
        report = score_with_coeffs(ps, lattice, coeffs)
    return CandidateND(
        denom_block=denom_block,
        denom_rows=tuple(denom_rows),
        coeff_block=tuple(tuple(row) for row in coeff_block),
        lattice=lattice,
        report=report,
    )


def approximate_general(
    ps: PointSet,
    eps,
    digits: int = 16,
    delta: float = 0.75,
) -> CandidateND:
    """Full chain: anchors, normalization, embedding, reduction, recovery."""
    with numeric.working_precision(digits):
        anchors = select_anchors(ps)
        nz = normalize_affine(ps, anchors)
        eps_s = numeric.to_scalar(eps, digits)
        embedding = build_embedding_nd(nz, eps_s)
        rr = lll_reduce(embedding, ReductionParams(delta=delta, precision_digits=digits))
        denom_block, denom_rows, coeff_block = select_denominator_block(rr.transform, ps.dim)
        return recover_lattice(ps, nz, denom_block, denom_rows, coeff_block, digits)


def epsilon_sweep(ps: PointSet, eps_values, digits: int = 16, delta: float = 0.75):
    """Run the pipeline once per eps; failures are recorded, not raised."""
    if any(eps <= 1e-8 for eps in eps_values) and not numeric.uses_mpmath(digits):
        log.warning(
            "eps <= 1e-8 at %d digits is likely to lose precision; "
            "prefer digits >= 20 for such sweeps",
            digits,
        )
    entries = []
    for eps in eps_values:
        try:
            candidate = approximate_general(ps, eps, digits, delta)
            entries.append(SweepEntry(eps=eps, candidate=candidate, error=None))
        except LatfitError as exc:
            entries.append(
                SweepEntry(eps=eps, candidate=None, error=f"{type(exc).__name__}: {exc}")
            )
    return tuple(entries)


def enumerate_candidates(
    ps: PointSet,
    eps,
    digits: int = 16,
    delta: float = 0.75,
    limit: int = 10,
) -> tuple:
    """Diagnostic variant of approximate_general: one candidate per invertible
    row subset of the transform (top-down, at most ``limit``), so alternative
    block choices can be compared."""
    with numeric.working_precision(digits):
        anchors = select_anchors(ps)
        nz = normalize_affine(ps, anchors)
        eps_s = numeric.to_scalar(eps, digits)
        rr = lll_reduce(
            build_embedding_nd(nz, eps_s), ReductionParams(delta=delta, precision_digits=digits)
        )
        n = ps.dim
        total = rr.transform.ncols
        lead = total - n
        candidates = []
        for rows in itertools.combinations(range(rr.transform.nrows), n):
            block = Matrix(tuple(tuple(int(x) for x in rr.transform[i][lead:]) for i in rows))
            if _integer_det(block.entries) == 0:
                continue
            coeff = tuple(tuple(int(x) for x in rr.transform[i][:lead]) for i in rows)
            candidates.append(recover_lattice(ps, nz, block, rows, coeff, digits))
            if len(candidates) >= limit:
                break
        if not candidates:
            raise NoInvertibleBlock("transform has no invertible trailing block")
        return tuple(candidates)


def _integer_det(rows) -> int:
    """Exact determinant of a small integer matrix (Bareiss)."""
    a = [[int(x) for x in row] for row in rows]
    n = len(a)
    sign = 1
    prev = 1
    for j in range(n):
        pivot = next((i for i in range(j, n) if a[i][j] != 0), None)
        if pivot is None:
            return 0
        if pivot != j:
            a[j], a[pivot] = a[pivot], a[j]
            sign = -sign
        for i in range(j + 1, n):
            for l in range(j + 1, n):
                a[i][l] = (a[i][l] * a[j][j] - a[i][j] * a[j][l]) // prev
            a[i][j] = 0
        prev = a[j][j]
    return sign * a[n - 1][n - 1]
