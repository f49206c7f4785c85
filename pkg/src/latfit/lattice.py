"""Affine lattice model: nearest points, scale factor, diameter, quality norms.

The two quality norms compare the worst (or root-sum-square) point-to-lattice
distance against the lattice scale ``delta`` (n-th root of the determinant),
with a correction factor ``(diam/delta)^(n/(k-n-1))`` that penalizes trivially
fine lattices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import numeric
from .errors import DegenerateInput, DimensionMismatch, SingularMatrix
from .lll import ReductionParams, lll_reduce
from .linalg import (
    Matrix,
    Vector,
    determinant,
    invert,
    mat_vec,
    norm,
    singular_values,
    singularity_threshold,
    vec_sub,
)

# Relative smallest-singular-value threshold for the hyperplane check.
FLATNESS_TOL = 1e-9
# Babai rounding is refined by enumerating these offsets per coordinate.
REFINE_OFFSETS = (-1, 0, 1)
REFINE_MAX_DIM = 3


@dataclass(frozen=True)
class AffineLattice:
    """Origin plus an independent set of basis vectors (one per dimension)."""

    origin: Vector
    basis: tuple

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        n = self.origin.dim
        if len(self.basis) != n or any(v.dim != n for v in self.basis):
            raise DimensionMismatch("basis must hold n vectors of dimension n")
        m = self.basis_matrix()
        if abs(determinant(m)) <= singularity_threshold(m):
            raise SingularMatrix("basis vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return self.origin.dim

    def basis_matrix(self) -> Matrix:
        """Rows are the basis vectors."""
        return Matrix(tuple(v.entries for v in self.basis))


@dataclass(frozen=True)
class PointSet:
    """Finite point set with more points than dimensions-plus-one, not flat."""

    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise DegenerateInput("empty point set")
        n = self.points[0].dim
        if any(p.dim != n for p in self.points):
            raise DimensionMismatch("points have mixed dimensions")
        k = len(self.points)
        if k <= n + 1:
            raise DegenerateInput(f"need more than n+1 = {n + 1} points, got {k}")
        centroid = tuple(sum(p[j] for p in self.points) / k for j in range(n))
        centered = Matrix(tuple(vec_sub(p.entries, centroid) for p in self.points))
        sigmas = singular_values(centered)
        if sigmas[-1] <= FLATNESS_TOL * sigmas[0]:
            raise DegenerateInput("points lie in a hyperplane (rank-deficient)")

    @property
    def dim(self) -> int:
        return self.points[0].dim

    @property
    def size(self) -> int:
        return len(self.points)


def point_set(rows, digits: int = 16) -> PointSet:
    """Build a PointSet from raw coordinate rows (numbers or decimal strings)."""
    pts = tuple(
        Vector(tuple(numeric.to_scalar(x, digits) for x in row)) for row in rows
    )
    return PointSet(pts)


@dataclass(frozen=True)
class FitReport:
    """Scored fit of a lattice against a point set."""

    lattice: AffineLattice
    coeffs: tuple  # k integer rows: lattice coordinates per point
    distances: tuple
    delta: object
    diameter: object
    norm_max: object
    norm_l2: object


def lattice_delta(lat: AffineLattice):
    """n-th root of |det| of the basis: the scale-normalizing length."""
    n = lat.dim
    return abs(determinant(lat.basis_matrix())) ** (1.0 / n)


def diameter(ps: PointSet):
    """Largest pairwise Euclidean distance."""
    best = 0.0
    for i in range(ps.size):
        for j in range(i + 1, ps.size):
            d = norm(vec_sub(ps.points[i].entries, ps.points[j].entries))
            if d > best:
                best = d
    return best


class _NearestSolver:
    """Babai rounding in an LLL-reduced copy of the basis, with a small
    offset enumeration in low dimensions where that makes the answer exact
    for the near-orthogonal bases the pipelines produce."""

    def __init__(self, lat: AffineLattice, digits: int = 16):
        self.lat = lat
        self.n = lat.dim
        result = lll_reduce(lat.basis_matrix(), ReductionParams(precision_digits=digits))
        self.reduced = result.reduced
        self.transform = result.transform  # reduced = transform @ basis
        self.reduced_inv = invert(self.reduced)
        if self.n <= REFINE_MAX_DIM:
            self.offsets = tuple(itertools.product(REFINE_OFFSETS, repeat=self.n))
        else:
            self.offsets = ((0,) * self.n,)

    def query(self, p: Vector):
        x = vec_sub(p.entries, self.lat.origin.entries)
        # Coordinates of x in the reduced row basis: y @ reduced = x.
        y = mat_vec(self.reduced_inv.transposed(), x)
        base = tuple(numeric.nearest_int(c) for c in y)
        best_dist = None
        best = base
        for off in self.offsets:
            cand = tuple(b + o for b, o in zip(base, off))
            residual = list(x)
            for ci, row in zip(cand, self.reduced.entries):
                if ci == 0:
                    continue
                for l in range(self.n):
                    residual[l] -= ci * row[l]
            d = norm(residual)
            if best_dist is None or d < best_dist:
                best_dist = d
                best = cand
        # Map reduced-basis coefficients back to the original basis.
        coeffs = tuple(
            sum(c * self.transform[i][j] for i, c in enumerate(best))
            for j in range(self.n)
        )
        return coeffs, best_dist


def nearest_point(lat: AffineLattice, p: Vector, digits: int = 16):
    """Integer coefficients of (approximately) the nearest lattice point.

    Exact in one dimension; exact in practice for near-orthogonal bases in
    low dimensions thanks to the offset enumeration.
    """
    if p.dim != lat.dim:
        raise DimensionMismatch("point and lattice dimensions differ")
    return _NearestSolver(lat, digits).query(p)


def _assigned_distance(lat: AffineLattice, p: Vector, coeffs):
    residual = list(vec_sub(p.entries, lat.origin.entries))
    for c, basis_vec in zip(coeffs, lat.basis):
        if c == 0:
            continue
        for l in range(lat.dim):
            residual[l] -= c * basis_vec[l]
    return norm(residual)


def _build_report(ps: PointSet, lat: AffineLattice, coeffs, distances) -> FitReport:
    n = lat.dim
    k = ps.size
    delta = lattice_delta(lat)
    diam = diameter(ps)
    exponent = n / (k - n - 1)
    correction = (diam / delta) ** exponent
    dist_max = max(distances)
    dist_l2 = numeric.sqrt(sum(d * d for d in distances))
    return FitReport(
        lattice=lat,
        coeffs=tuple(tuple(int(c) for c in row) for row in coeffs),
        distances=tuple(distances),
        delta=delta,
        diameter=diam,
        norm_max=(dist_max / delta) * correction,
        norm_l2=(dist_l2 / delta) * correction,
    )


def score(ps: PointSet, lat: AffineLattice, digits: int = 16) -> FitReport:
    """Score with per-point nearest lattice points."""
    if ps.dim != lat.dim:
        raise DimensionMismatch("point set and lattice dimensions differ")
    solver = _NearestSolver(lat, digits)
    coeffs = []
    distances = []
    for p in ps.points:
        c, d = solver.query(p)
        coeffs.append(c)
        distances.append(d)
    return _build_report(ps, lat, coeffs, distances)


def score_with_coeffs(ps: PointSet, lat: AffineLattice, coeffs) -> FitReport:
    """Score with a frozen integer assignment (replay / pipeline output)."""
    if ps.dim != lat.dim:
        raise DimensionMismatch("point set and lattice dimensions differ")
    coeffs = tuple(tuple(row) for row in coeffs)
    if len(coeffs) != ps.size or any(len(row) != lat.dim for row in coeffs):
        raise DimensionMismatch("coefficient rows must be k rows of length n")
    distances = [_assigned_distance(lat, p, row) for p, row in zip(ps.points, coeffs)]
    return _build_report(ps, lat, coeffs, distances)
