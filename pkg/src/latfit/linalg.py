"""Dense linear algebra kernels shared by every pipeline.

All routines are written over plain Python scalars so the same code path
serves native doubles and mpmath values (extended precision mode).  Matrices
here are tiny (at most the number of input points), so clarity wins over
vectorization.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import numeric
from .errors import DimensionMismatch, RankDeficient, SingularMatrix

# Scale-aware singularity threshold: |det| <= SINGULARITY_TOL * (max row norm)^n.
SINGULARITY_TOL = 1e-12
# Column-rank threshold for least squares, relative to the largest column norm.
RANK_TOL = 1e-10


@dataclass(frozen=True)
class Vector:
    """Immutable real vector."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) < 1:
            raise DimensionMismatch("vector needs at least one entry")
        if not all(numeric.is_finite(x) for x in self.entries):
            raise DimensionMismatch("vector entries must be finite")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class Matrix:
    """Immutable rectangular matrix, row-major."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if len(rows) < 1 or len(rows[0]) < 1:
            raise DimensionMismatch("matrix needs at least one row and column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DimensionMismatch("ragged matrix rows")
        if not all(numeric.is_finite(x) for row in rows for x in row):
            raise DimensionMismatch("matrix entries must be finite")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def transposed(self) -> "Matrix":
        return Matrix(tuple(zip(*self.entries)))

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        cols = other.transposed().entries
        return Matrix(
            tuple(
                tuple(_dot_seq(row, col) for col in cols)
                for row in self.entries
            )
        )


def identity(n: int) -> Matrix:
    return Matrix(tuple(tuple(1.0 if i == j else 0.0 for j in range(n)) for i in range(n)))


def _dot_seq(a, b):
    total = 0.0
    for x, y in zip(a, b):
        total += x * y
    return total


def dot(a, b):
    return _dot_seq(a, b)


def vec_add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(a, s) -> tuple:
    return tuple(x * s for x in a)


def norm(a):
    return numeric.sqrt(_dot_seq(a, a))


def mat_vec(m: Matrix, v) -> tuple:
    if m.ncols != len(v):
        raise DimensionMismatch("matrix/vector size mismatch")
    return tuple(_dot_seq(row, v) for row in m.entries)


def max_row_norm(m: Matrix):
    return max(norm(row) for row in m.entries)


def _require_square(m: Matrix):
    if m.nrows != m.ncols:
        raise DimensionMismatch("square matrix required")


def determinant(m: Matrix):
    """Determinant; closed forms for 1x1/2x2, LU with partial pivoting otherwise."""
    _require_square(m)
    n = m.nrows
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    a = [list(row) for row in m.entries]
    det = 1.0
    for j in range(n):
        pivot_row = max(range(j, n), key=lambda i: abs(a[i][j]))
        if a[pivot_row][j] == 0:
            return 0.0 * det
        if pivot_row != j:
            a[j], a[pivot_row] = a[pivot_row], a[j]
            det = -det
        det = det * a[j][j]
        inv_pivot = 1.0 / a[j][j]
        for i in range(j + 1, n):
            factor = a[i][j] * inv_pivot
            if factor == 0:
                continue
            for l in range(j, n):
                a[i][l] -= factor * a[j][l]
    return det


def singularity_threshold(m: Matrix):
    return SINGULARITY_TOL * max_row_norm(m) ** m.nrows


def invert(m: Matrix) -> Matrix:
    """Inverse via Gauss-Jordan with partial pivoting.

    Raises SingularMatrix when |det| falls below the scale-aware threshold,
    which keeps small-magnitude (but well-conditioned) bases invertible.
    """
    _require_square(m)
    if abs(determinant(m)) <= singularity_threshold(m):
        raise SingularMatrix(f"matrix is singular within tolerance ({m.nrows}x{m.ncols})")
    n = m.nrows
    a = [list(row) + [1.0 if i == j else 0.0 for j in range(n)] for i, row in enumerate(m.entries)]
    for j in range(n):
        pivot_row = max(range(j, n), key=lambda i: abs(a[i][j]))
        if a[pivot_row][j] == 0:
            raise SingularMatrix("zero pivot")
        if pivot_row != j:
            a[j], a[pivot_row] = a[pivot_row], a[j]
        inv_pivot = 1.0 / a[j][j]
        a[j] = [x * inv_pivot for x in a[j]]
        for i in range(n):
            if i == j or a[i][j] == 0:
                continue
            factor = a[i][j]
            a[i] = [x - factor * y for x, y in zip(a[i], a[j])]
    return Matrix(tuple(tuple(row[n:]) for row in a))


def solve(m: Matrix, rhs) -> tuple:
    """Solve m x = rhs for a single right-hand side."""
    inv = invert(m)
    return mat_vec(inv, rhs)


def least_squares(design: Matrix, targets: Matrix) -> Matrix:
    """Minimize ||design @ X - targets||_F via Householder QR.

    QR keeps the conditioning of the design matrix itself, which matters for
    designs with large integer coefficients where normal equations would
    square the condition number.
    """
    k, m = design.nrows, design.ncols
    if targets.nrows != k:
        raise DimensionMismatch("design and targets row counts differ")
    if k < m:
        raise RankDeficient(f"underdetermined system: {k} rows < {m} columns")
    ncols_t = targets.ncols
    a = [list(row) for row in design.entries]
    b = [list(row) for row in targets.entries]
    col_scale = max(norm(design.col(j)) for j in range(m))
    tol = RANK_TOL * col_scale

    for j in range(m):
        sigma_sq = 0.0
        for i in range(j, k):
            sigma_sq += a[i][j] * a[i][j]
        sigma = numeric.sqrt(sigma_sq)
        if sigma <= tol:
            raise RankDeficient(f"design column {j} is dependent on earlier columns")
        alpha = -sigma if a[j][j] >= 0 else sigma
        v = [a[i][j] for i in range(j, k)]
        v[0] -= alpha
        vv = _dot_seq(v, v)
        if vv > 0:
            scale = 2.0 / vv
            for col in range(j, m):
                proj = 0.0
                for i in range(j, k):
                    proj += v[i - j] * a[i][col]
                proj *= scale
                for i in range(j, k):
                    a[i][col] -= proj * v[i - j]
            for col in range(ncols_t):
                proj = 0.0
                for i in range(j, k):
                    proj += v[i - j] * b[i][col]
                proj *= scale
                for i in range(j, k):
                    b[i][col] -= proj * v[i - j]
        a[j][j] = alpha

    x = [[0.0] * ncols_t for _ in range(m)]
    for col in range(ncols_t):
        for i in range(m - 1, -1, -1):
            acc = b[i][col]
            for l in range(i + 1, m):
                acc -= a[i][l] * x[l][col]
            x[i][col] = acc / a[i][i]
    return Matrix(tuple(tuple(row) for row in x))


def residual_sum_of_squares(design: Matrix, x: Matrix, targets: Matrix):
    fitted = design @ x
    total = 0.0
    for frow, trow in zip(fitted.entries, targets.entries):
        for f, t in zip(frow, trow):
            diff = f - t
            total += diff * diff
    return total


def singular_values(m: Matrix) -> tuple:
    """Singular values (descending) via Jacobi iteration on the Gram matrix."""
    gram = m.transposed() @ m
    eigs = _jacobi_eigenvalues([list(row) for row in gram.entries])
    vals = sorted((numeric.sqrt(e if e > 0 else 0.0 * e) for e in eigs), reverse=True)
    return tuple(vals)


def _jacobi_eigenvalues(a, max_sweeps: int = 60):
    n = len(a)
    if n == 1:
        return [a[0][0]]
    scale = max(abs(a[i][j]) for i in range(n) for j in range(n))
    if scale == 0:
        return [0.0] * n
    stop = 1e-30 * scale
    for _ in range(max_sweeps):
        off = max(abs(a[p][q]) for p in range(n) for q in range(p + 1, n))
        if off <= stop:
            break
        for p in range(n):
            for q in range(p + 1, n):
                if abs(a[p][q]) <= stop:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q])
                sign = 1.0 if theta >= 0 else -1.0
                t = sign / (abs(theta) + numeric.sqrt(theta * theta + 1.0))
                c = 1.0 / numeric.sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    aip, aiq = a[i][p], a[i][q]
                    a[i][p] = c * aip - s * aiq
                    a[i][q] = s * aip + c * aiq
                for i in range(n):
                    api, aqi = a[p][i], a[q][i]
                    a[p][i] = c * api - s * aqi
                    a[q][i] = s * api + c * aqi
    return [a[i][i] for i in range(n)]
