"""Shared oracles and checkers for the test suite."""

import numpy as np
import pytest


def integer_det(rows) -> int:
    """Exact determinant of an integer matrix (Bareiss, fraction-free)."""
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


def brute_shortest_norm(basis_rows, bound: int) -> float:
    """Shortest nonzero vector by exhaustive coefficient enumeration.

    Expands |c0*b0 + t|^2 = |t|^2 + 2*c0*(t.b0) + c0^2*|b0|^2 so the tail
    products are computed once, keeping [-20,20]^5 enumerations affordable.
    """
    basis = np.asarray(basis_rows, dtype=float)
    d = basis.shape[0]
    rng = np.arange(-bound, bound + 1, dtype=np.int16)
    if d == 1:
        return float(np.linalg.norm(basis[0]))
    tail = np.stack(np.meshgrid(*([rng] * (d - 1)), indexing="ij"), axis=-1).reshape(-1, d - 1)
    tail_vecs = tail @ basis[1:]
    tail_sq = np.einsum("ij,ij->i", tail_vecs, tail_vecs)
    cross = tail_vecs @ basis[0]
    head_sq = float(basis[0] @ basis[0])
    best_sq = np.inf
    for c0 in rng.astype(float):
        norms_sq = tail_sq + (2.0 * c0) * cross + (c0 * c0) * head_sq
        nonzero = norms_sq > 1e-24
        if nonzero.any():
            best_sq = min(best_sq, float(norms_sq[nonzero].min()))
    return float(np.sqrt(best_sq))


def gram_schmidt_mu(basis_rows):
    basis = np.asarray(basis_rows, dtype=float)
    d = basis.shape[0]
    ortho = np.zeros_like(basis)
    mu = np.zeros((d, d))
    for i in range(d):
        v = basis[i].copy()
        for j in range(i):
            denom = ortho[j] @ ortho[j]
            mu[i, j] = (basis[i] @ ortho[j]) / denom
            v -= mu[i, j] * ortho[j]
        ortho[i] = v
    return ortho, mu


def assert_size_reduced_and_lovasz(basis_rows, delta=0.75, tol=1e-9):
    ortho, mu = gram_schmidt_mu(basis_rows)
    d = len(ortho)
    for i in range(d):
        for j in range(i):
            assert abs(mu[i, j]) <= 0.5 + tol, f"mu[{i}][{j}] = {mu[i, j]}"
    for i in range(1, d):
        lhs = float(ortho[i] @ ortho[i])
        rhs = (delta - mu[i, i - 1] ** 2) * float(ortho[i - 1] @ ortho[i - 1])
        assert lhs >= rhs - tol * float(ortho[i - 1] @ ortho[i - 1])


def random_basis(rng: np.random.Generator, dim: int, min_det: float = 1e-3):
    """Random basis with entries in [-1, 1], redrawn while nearly singular."""
    while True:
        basis = rng.uniform(-1.0, 1.0, size=(dim, dim))
        if abs(np.linalg.det(basis)) > min_det:
            return basis


@pytest.fixture
def np_rng():
    return np.random.default_rng(20260809)
