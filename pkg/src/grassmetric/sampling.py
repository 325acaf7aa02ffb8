"""Seeded random inputs: tuples, SPD ambients, invertible and orthogonal matrices.

Entries are uniform on [-1, 1] unless stated otherwise. Everything takes an
explicit ``numpy.random.Generator`` so results are reproducible.
"""

from __future__ import annotations

import numpy as np

from .linalg import RANK_TOL, determinant, numerical_rank, orthonormalize

__all__ = [
    "dependent_tuple",
    "independent_tuple",
    "random_invertible",
    "random_orthogonal",
    "random_spd",
    "uniform_tuple",
]

MAX_ATTEMPTS = 1000


def uniform_tuple(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    return rng.uniform(-1.0, 1.0, size=(n, m))


def independent_tuple(
    rng: np.random.Generator, n: int, m: int, tol_ratio: float = RANK_TOL
) -> np.ndarray:
    """Uniform tuple, rejection-sampled until its numerical rank is n (needs n <= m)."""
    if n > m:
        raise ValueError(f"{n} independent vectors do not fit in dimension {m}")
    for _ in range(MAX_ATTEMPTS):
        A = uniform_tuple(rng, n, m)
        if numerical_rank(A, tol_ratio) == n:
            return A
    raise RuntimeError("could not sample an independent tuple")


def dependent_tuple(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """Tuple with one row replaced by a random combination of the others.

    For n = 1 the only dependent tuple is the zero vector.
    """
    if n == 1:
        return np.zeros((1, m))
    A = uniform_tuple(rng, n, m)
    k = int(rng.integers(n))
    others = np.delete(A, k, axis=0)
    A[k] = rng.uniform(-1.0, 1.0, size=n - 1) @ others
    return A


def random_spd(rng: np.random.Generator, m: int) -> np.ndarray:
    """Well-conditioned symmetric positive-definite matrix."""
    M = rng.uniform(-1.0, 1.0, size=(m, m))
    G = M @ M.T / m + 0.5 * np.eye(m)
    return (G + G.T) / 2.0


def random_invertible(rng: np.random.Generator, n: int, min_abs_det: float = 0.05) -> np.ndarray:
    for _ in range(MAX_ATTEMPTS):
        P = rng.uniform(-1.0, 1.0, size=(n, n))
        if abs(determinant(P)) >= min_abs_det:
            return P
    raise RuntimeError("could not sample an invertible matrix")


def random_orthogonal(rng: np.random.Generator, m: int, det_sign: int = 1) -> np.ndarray:
    """Orthonormalized Gaussian matrix, first row negated if needed to fix sign(det)."""
    Q = orthonormalize(rng.standard_normal(size=(m, m)))
    if (determinant(Q) > 0) != (det_sign > 0):
        Q[0] = -Q[0]
    return Q
