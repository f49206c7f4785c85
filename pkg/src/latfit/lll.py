"""Floating-point LLL reduction over real row bases.

The unimodular transform is accumulated as an exact integer matrix while the
basis itself is reduced in working precision; a final consistency check
(transform @ input == reduced) catches precision collapse, which happens when
the epsilon column of an embedding is too small for the working precision.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import numeric
from .errors import DegenerateInput, DependentRows, PrecisionLoss
from .linalg import Matrix, _dot_seq, norm

# Relative Gram-Schmidt floor below which rows count as dependent.
DEPENDENT_TOL = 1e-12
# Relative tolerance for the transform @ input == reduced consistency check.
CONSISTENCY_TOL = 1e-8


@dataclass(frozen=True)
class ReductionParams:
    delta: float = 0.75
    precision_digits: int = 16

    def __post_init__(self):
        if not 0.25 < self.delta < 1:
            raise DegenerateInput(f"delta must lie in (0.25, 1), got {self.delta}")


@dataclass(frozen=True)
class ReductionResult:
    reduced: Matrix
    transform: Matrix  # exact integers, |det| = 1
    shortest_norm: object  # Euclidean norm of the first reduced row


def lll_reduce(basis: Matrix, params: ReductionParams | None = None) -> ReductionResult:
    """Reduce the rows of ``basis``; returns the reduced rows and the transform."""
    params = params or ReductionParams()
    with numeric.working_precision(params.precision_digits):
        return _reduce(basis, params.delta)


def _reduce(basis: Matrix, delta) -> ReductionResult:
    m = basis.nrows
    rows = [list(r) for r in basis.entries]
    unimodular = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    input_scale = max(norm(r) for r in basis.entries)
    dep_floor = DEPENDENT_TOL * input_scale

    # Gram-Schmidt data, recomputed lazily: rows below `valid` are current.
    ortho = [None] * m
    sq = [None] * m
    mu = [[0.0] * m for _ in range(m)]
    valid = 0

    def extend_gs(upto):
        nonlocal valid
        while valid <= upto:
            i = valid
            v = list(rows[i])
            for j in range(i):
                mu_ij = _dot_seq(rows[i], ortho[j]) / sq[j]
                mu[i][j] = mu_ij
                if mu_ij != 0:
                    for l in range(m):
                        v[l] -= mu_ij * ortho[j][l]
            nsq = _dot_seq(v, v)
            if numeric.sqrt(nsq) < dep_floor:
                raise DependentRows(f"row {i} is numerically dependent on earlier rows")
            ortho[i] = v
            sq[i] = nsq
            valid += 1

    max_steps = 10000 * m * m
    steps = 0
    k = 1
    while k < m:
        steps += 1
        if steps > max_steps:
            raise PrecisionLoss("reduction failed to converge at this precision")
        extend_gs(k)
        for j in range(k - 1, -1, -1):
            r = numeric.nearest_int(mu[k][j])
            if r != 0:
                for l in range(m):
                    rows[k][l] -= r * rows[j][l]
                    unimodular[k][l] -= r * unimodular[j][l]
                for l in range(j):
                    mu[k][l] -= r * mu[j][l]
                mu[k][j] -= r
        if sq[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * sq[k - 1]:
            k += 1
        else:
            rows[k - 1], rows[k] = rows[k], rows[k - 1]
            unimodular[k - 1], unimodular[k] = unimodular[k], unimodular[k - 1]
            valid = k - 1
            k = max(k - 1, 1)

    _check_consistency(basis, rows, unimodular, input_scale)
    reduced = Matrix(tuple(tuple(r) for r in rows))
    transform = Matrix(tuple(tuple(r) for r in unimodular))
    return ReductionResult(reduced=reduced, transform=transform, shortest_norm=norm(rows[0]))


def _check_consistency(basis, rows, unimodular, input_scale):
    tol = CONSISTENCY_TOL * input_scale
    m = basis.nrows
    cols = list(zip(*basis.entries))
    for i in range(m):
        for j, col in enumerate(cols):
            recomputed = _dot_seq(unimodular[i], col)
            if abs(recomputed - rows[i][j]) > tol:
                raise PrecisionLoss(
                    "transform/basis mismatch: working precision too low for this epsilon"
                )
