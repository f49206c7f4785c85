"""Rectangular-lattice pipeline: run the 1-D method per coordinate axis."""

from __future__ import annotations

from dataclasses import dataclass

from . import numeric
from .approx1d import Candidate1D, approximate_1d
from .errors import DegenerateInput
from .lattice import AffineLattice, FitReport, PointSet, score
from .linalg import Vector


@dataclass(frozen=True)
class AxisResult:
    per_axis: tuple  # best Candidate1D per axis
    lattice: AffineLattice  # origin = per-axis minima, basis = spacing_i * e_i
    report: FitReport


def approximate_axis(
    ps: PointSet,
    eps,
    norm_choice: str = "max",
    digits: int = 16,
    delta: float = 0.75,
) -> AxisResult:
    """Best rectangular lattice: independent 1-D fits along each axis.

    ``eps`` may be a single value or one value per axis; axes can have very
    different scales, so per-axis control is sometimes needed.
    """
    n = ps.dim
    eps_list = list(eps) if isinstance(eps, (list, tuple)) else [eps] * n
    if len(eps_list) != n:
        raise DegenerateInput(f"need one eps per axis ({n}), got {len(eps_list)}")
    with numeric.working_precision(digits):
        per_axis = []
        origins = []
        for axis in range(n):
            coords = [p[axis] for p in ps.points]
            try:
                result = approximate_1d(coords, eps_list[axis], norm_choice, digits, delta)
            except DegenerateInput as exc:
                raise DegenerateInput(f"axis {axis}: {exc}") from exc
            per_axis.append(result.best)
            origins.append(result.normalized.origin)
        basis = tuple(
            Vector(tuple(per_axis[i].spacing if j == i else 0.0 for j in range(n)))
            for i in range(n)
        )
        lattice = AffineLattice(Vector(tuple(origins)), basis)
        report = score(ps, lattice, digits)
        return AxisResult(per_axis=tuple(per_axis), lattice=lattice, report=report)
