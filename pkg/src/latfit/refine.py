"""Least-squares fine-tuning.

With the integer coefficients from the reduction stage frozen, re-fit the
origin and the basis vectors to minimize the sum of squared distances between
each point and its assigned lattice point.  The refined lattice is re-scored
with freshly derived nearest points (honest norms) and the frozen-assignment
score is reported alongside.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import numeric
from .errors import DimensionMismatch
from .lattice import AffineLattice, FitReport, PointSet, score, score_with_coeffs
from .linalg import Matrix, Vector, least_squares


@dataclass(frozen=True)
class CoefficientAssignment:
    """Frozen integer lattice coordinates, one row per point.

    ``rows[i]`` belongs to ``points[point_order[i]]``; the identity order is
    the common case.
    """

    rows: tuple
    point_order: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(int(c) for c in r) for r in self.rows))
        if self.point_order is not None:
            object.__setattr__(self, "point_order", tuple(self.point_order))

    def order_for(self, k: int) -> tuple:
        if self.point_order is None:
            return tuple(range(k))
        return self.point_order


def assignment_from_report(report: FitReport) -> CoefficientAssignment:
    return CoefficientAssignment(rows=report.coeffs)


def build_design(assign: CoefficientAssignment) -> Matrix:
    """Ones column (for the origin) followed by the integer coefficients."""
    return Matrix(tuple((1.0,) + tuple(float(c) for c in row) for row in assign.rows))


@dataclass(frozen=True)
class RefineResult:
    lattice: AffineLattice
    report: FitReport  # re-derived nearest points on the refined lattice
    frozen_report: FitReport  # same lattice, frozen assignment

    @property
    def frozen_residual(self):
        return sum(d * d for d in self.frozen_report.distances)


def frozen_residual(ps: PointSet, lattice: AffineLattice, assign: CoefficientAssignment):
    """Sum of squared distances under the frozen assignment."""
    coeffs = _input_order_coeffs(ps, assign)
    report = score_with_coeffs(ps, lattice, coeffs)
    return sum(d * d for d in report.distances)


def _input_order_coeffs(ps: PointSet, assign: CoefficientAssignment):
    k = ps.size
    if len(assign.rows) != k:
        raise DimensionMismatch(f"assignment has {len(assign.rows)} rows for {k} points")
    order = assign.order_for(k)
    coeffs = [None] * k
    for row, idx in zip(assign.rows, order):
        coeffs[idx] = row
    if any(c is None for c in coeffs):
        raise DimensionMismatch("point_order is not a permutation of the points")
    return tuple(coeffs)


def refine_fit(ps: PointSet, assign: CoefficientAssignment, digits: int = 16) -> RefineResult:
    """One least-squares pass over origin and basis with frozen coefficients."""
    n = ps.dim
    if any(len(row) != n for row in assign.rows):
        raise DimensionMismatch("assignment rows must have one coefficient per dimension")
    with numeric.working_precision(digits):
        order = assign.order_for(ps.size)
        design = build_design(assign)
        targets = Matrix(tuple(ps.points[idx].entries for idx in order))
        solution = least_squares(design, targets)
        origin = Vector(solution.row(0))
        basis = tuple(Vector(solution.row(i)) for i in range(1, n + 1))
        lattice = AffineLattice(origin, basis)
        frozen = score_with_coeffs(ps, lattice, _input_order_coeffs(ps, assign))
        rederived = score(ps, lattice, digits)
    return RefineResult(lattice=lattice, report=rederived, frozen_report=frozen)
