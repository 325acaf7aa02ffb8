"""Dense real linear algebra used by every other module.

Matrices are row-major ``float64`` numpy arrays; the i-th row of a tuple
matrix is the i-th argument vector. The elimination kernels run on plain
Python lists because the matrices involved are tiny (k <= 10) and the
per-call numpy overhead would dominate.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    IndexOutOfRange,
    InvalidIndexTuple,
    NonFinite,
    NonSquare,
    RankDeficient,
    ShapeMismatch,
    TooLarge,
)

__all__ = [
    "RANK_TOL",
    "as_matrix",
    "as_vector",
    "determinant",
    "determinant_oracle",
    "index_tuples",
    "nullspace",
    "numerical_rank",
    "orthonormalize",
    "permutation_sign",
    "submatrix",
]

RANK_TOL = 1e-10
ORACLE_MAX_ORDER = 6


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Validate and copy ``M`` into a finite 2-D float array with r, c >= 1."""
    a = np.array(M, dtype=float)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeMismatch(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite(f"{name} has non-finite entries")
    return a


def as_vector(x, name: str = "vector") -> np.ndarray:
    v = np.array(x, dtype=float)
    if v.ndim != 1 or v.shape[0] < 1:
        raise ShapeMismatch(f"{name} must be a non-empty 1-D array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise NonFinite(f"{name} has non-finite entries")
    return v


def _lu_det(rows: list[list[float]]) -> float:
    # rows is consumed
    k = len(rows)
    det = 1.0
    for j in range(k):
        p = j
        best = abs(rows[j][j])
        for i in range(j + 1, k):
            v = abs(rows[i][j])
            if v > best:
                p, best = i, v
        if best == 0.0:
            return 0.0
        if p != j:
            rows[j], rows[p] = rows[p], rows[j]
            det = -det
        pivot_row = rows[j]
        pivot = pivot_row[j]
        det *= pivot
        for i in range(j + 1, k):
            row = rows[i]
            f = row[j] / pivot
            if f != 0.0:
                for t in range(j + 1, k):
                    row[t] -= f * pivot_row[t]
    return det


def determinant(M) -> float:
    """Determinant by LU factorization with partial pivoting.

    The sign flips once per row swap. A 1x1 matrix returns its entry unchanged.
    """
    a = as_matrix(M)
    if a.shape[0] != a.shape[1]:
        raise NonSquare(f"determinant needs a square matrix, got {a.shape}")
    det = _lu_det(a.tolist())
    if not math.isfinite(det):
        raise NonFinite("determinant overflowed")
    return det


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign (+1/-1) of a permutation of 0..k-1 given in one-line notation."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant_oracle(M) -> float:
    """Signed permutation sum, sum over sigma of sgn(sigma) * prod M[i, sigma(i)].

    Exponential cost; refuses k > 6. Meant as an independent check on
    :func:`determinant`.
    """
    a = as_matrix(M)
    k, c = a.shape
    if k != c:
        raise NonSquare(f"determinant needs a square matrix, got {a.shape}")
    if k > ORACLE_MAX_ORDER:
        raise TooLarge(f"permutation-sum determinant limited to k <= {ORACLE_MAX_ORDER}, got {k}")
    rows = a.tolist()
    terms = []
    for perm in itertools.permutations(range(k)):
        prod = float(permutation_sign(perm))
        for i, j in enumerate(perm):
            prod *= rows[i][j]
        terms.append(prod)
    return math.fsum(terms)


def numerical_rank(M, tol_ratio: float = RANK_TOL) -> int:
    """Count echelon pivots larger than ``tol_ratio`` times the largest pivot.

    Row echelon form with partial pivoting. A column is skipped when its
    remaining entries are all below ``tol_ratio`` times the largest entry of M.
    """
    if tol_ratio <= 0:
        raise ValueError("tol_ratio must be positive")
    a = as_matrix(M)
    r, c = a.shape
    rows = a.tolist()
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return 0
    floor = tol_ratio * scale
    pivots: list[float] = []
    top = 0
    for j in range(c):
        if top == r:
            break
        p = max(range(top, r), key=lambda i: abs(rows[i][j]))
        pivot = rows[p][j]
        if abs(pivot) <= floor:
            continue
        rows[top], rows[p] = rows[p], rows[top]
        pivot_row = rows[top]
        for i in range(top + 1, r):
            row = rows[i]
            f = row[j] / pivot
            if f != 0.0:
                for t in range(j, c):
                    row[t] -= f * pivot_row[t]
        pivots.append(abs(pivot))
        top += 1
    if not pivots:
        return 0
    largest = max(pivots)
    return sum(1 for p in pivots if p > tol_ratio * largest)


def nullspace(M, tol_ratio: float = RANK_TOL) -> np.ndarray:
    """Rows spanning {x : M x = 0}, read off the reduced row echelon form.

    Returns an array of shape (c - rank, c); zero rows when M has full column rank.
    """
    a = as_matrix(M)
    r, c = a.shape
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return np.eye(c)
    floor = tol_ratio * scale
    pivot_cols: list[int] = []
    top = 0
    for j in range(c):
        if top == r:
            break
        p = top + int(np.argmax(np.abs(a[top:, j])))
        if abs(a[p, j]) <= floor:
            a[top:, j] = 0.0
            continue
        a[[top, p]] = a[[p, top]]
        a[top] /= a[top, j]
        others = np.arange(r) != top
        a[others] -= np.outer(a[others, j], a[top])
        pivot_cols.append(j)
        top += 1
    free = [j for j in range(c) if j not in pivot_cols]
    basis = np.zeros((len(free), c))
    for k, f in enumerate(free):
        basis[k, f] = 1.0
        for row, pc in enumerate(pivot_cols):
            basis[k, pc] = -a[row, f]
    return basis


def orthonormalize(rows, tol_ratio: float = RANK_TOL) -> np.ndarray:
    """Modified Gram-Schmidt on the rows of ``rows``.

    A second sweep runs whenever a projection coefficient exceeds half of the
    vector's original length. Orientation is preserved: the change of basis
    from input to output is triangular with positive diagonal.
    """
    a = as_matrix(rows, "rows")
    if numerical_rank(a, tol_ratio) < a.shape[0]:
        raise RankDeficient(f"rows have numerical rank below {a.shape[0]}")
    out: list[np.ndarray] = []
    for v in a:
        w = v.copy()
        length = float(np.linalg.norm(w))
        again = False
        for q in out:
            coef = float(q @ w)
            if abs(coef) > 0.5 * length:
                again = True
            w -= coef * q
        if again:
            for q in out:
                w -= float(q @ w) * q
        norm = float(np.linalg.norm(w))
        if norm <= tol_ratio * length:
            raise RankDeficient("row collapsed during orthonormalization")
        out.append(w / norm)
    return np.array(out)


def _check_indices(idx: Sequence[int], bound: int, what: str) -> list[int]:
    idx = [int(i) for i in idx]
    for i in idx:
        if not 0 <= i < bound:
            raise IndexOutOfRange(f"{what} index {i} outside 0..{bound - 1}")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise InvalidIndexTuple(f"{what} indices {idx} are not strictly increasing")
    return idx


def submatrix(M, row_idx: Sequence[int], col_idx: Sequence[int]) -> np.ndarray:
    """Dense submatrix on 0-based, strictly increasing row and column indices."""
    a = as_matrix(M)
    rows = _check_indices(row_idx, a.shape[0], "row")
    cols = _check_indices(col_idx, a.shape[1], "column")
    return a[np.ix_(rows, cols)]


def index_tuples(m: int, n: int) -> Iterable[tuple[int, ...]]:
    """All strictly increasing n-tuples drawn from 0..m-1, lexicographic."""
    return itertools.combinations(range(m), n)
