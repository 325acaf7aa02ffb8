"""Subspaces under an n-inner product: orthogonality, decomposition, Cauchy-Schwarz."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSubspace,
    DimensionMismatch,
    InequalityViolated,
    MathematicalFailure,
    OrderExceedsDimension,
    OrderMismatch,
    RankDeficient,
)
from .linalg import RANK_TOL, as_vector, numerical_rank
from .ninner import NInnerForm, as_tuple, check_pair, value_scale

__all__ = [
    "CauchySchwarzVerdict",
    "Decomposition",
    "Subspace",
    "cauchy_schwarz",
    "decompose",
    "is_orthogonal_to_subspace",
    "orthogonality_residuals",
]

EQUALITY_BAND = 1e-7


class Subspace:
    """n-dimensional subspace of R^m given by a basis of n rows, tied to a form.

    The basis is copied and frozen; construction fails unless its numerical
    rank is n.
    """

    def __init__(self, basis, form: NInnerForm, rank_tol: float = RANK_TOL):
        B = as_tuple(basis, form.m, "basis")
        n, m = B.shape
        if n != form.n:
            raise OrderMismatch(f"basis has {n} vectors, form has order {form.n}")
        if n > m:
            raise OrderExceedsDimension(f"{n} basis vectors in dimension {m}")
        rank = numerical_rank(B, rank_tol)
        if rank != n:
            raise RankDeficient(f"basis has numerical rank {rank} < {n}")
        B.setflags(write=False)
        self.basis = B
        self.form = form
        self.rank = rank

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def m(self) -> int:
        return self.basis.shape[1]

    def rebased(self, P) -> "Subspace":
        """Same subspace with basis P @ basis (P invertible n x n)."""
        return Subspace(np.asarray(P, dtype=float) @ self.basis, self.form)

    def __repr__(self):
        return f"Subspace(n={self.n}, m={self.m}, form={self.form!r})"


@dataclass(frozen=True)
class Decomposition:
    """x = sum_i lambdas[i] * basis[i] + residual."""

    lambdas: np.ndarray
    residual: np.ndarray
    original: np.ndarray
    projection: np.ndarray


@dataclass(frozen=True)
class CauchySchwarzVerdict:
    lhs: float
    rhs: float
    gap: float
    equality: bool
    case: str  # "A-dependent" | "B-dependent" | "same-subspace" | "strict"


def orthogonality_residuals(a, S: Subspace, reference=None) -> np.ndarray:
    """Normalized values of <a, b_1..^b_i..b_n | b_1..b_n> for i = 1..n.

    Each value is divided by a Hadamard bound of its arguments. When
    ``reference`` is given, the bound uses the longer of ``a`` and
    ``reference``; this keeps round-off in a tiny ``a`` from looking large.
    """
    a = as_vector(a, "a")
    B = S.basis
    if a.shape[0] != S.m:
        raise DimensionMismatch(f"vector has dimension {a.shape[0]}, subspace lives in {S.m}")
    ref = None if reference is None else as_vector(reference, "reference")
    out = np.empty(S.n)
    for i in range(S.n):
        rest = np.delete(B, i, axis=0)
        T = np.vstack([a, rest])
        value = S.form.inner(T, B)
        scale = value_scale(S.form, T, B)
        if ref is not None:
            scale = max(scale, value_scale(S.form, np.vstack([ref, rest]), B))
        if scale == 0.0:
            out[i] = 0.0 if value == 0.0 else np.inf
        else:
            out[i] = abs(value) / scale
    return out


def is_orthogonal_to_subspace(a, S: Subspace, tol: float = 1e-9) -> bool:
    """True when all n replacement products vanish to within ``tol`` times their scale."""
    return bool(np.all(orthogonality_residuals(a, S) <= tol))


def decompose(x, S: Subspace, tol: float = 1e-8) -> Decomposition:
    """Split x into a combination of the basis plus a part orthogonal to S.

    lambda_i = <b_1..x..b_n | B> / <B | B> with x in slot i.
    """
    x = as_vector(x, "x")
    form, B = S.form, S.basis
    if x.shape[0] != S.m:
        raise DimensionMismatch(f"vector has dimension {x.shape[0]}, subspace lives in {S.m}")
    denom = form.inner(B, B)
    if denom <= tol * value_scale(form, B, B):
        raise DegenerateSubspace(f"<B|B> = {denom!r} is too small")
    lambdas = np.empty(S.n)
    for i in range(S.n):
        T = B.copy()
        T[i] = x
        lambdas[i] = form.inner(T, B) / denom
    projection = lambdas @ B
    residual = x - projection
    worst = float(np.max(orthogonality_residuals(residual, S, reference=x)))
    if worst > tol:
        raise MathematicalFailure(f"residual is not orthogonal to the subspace (residual {worst:.3e})")
    return Decomposition(lambdas=lambdas, residual=residual, original=x, projection=projection)


def cauchy_schwarz(
    form: NInnerForm, A, B, tol: float = 1e-9, rank_tol: float = RANK_TOL
) -> CauchySchwarzVerdict:
    """Compare <A|B>^2 with <A|A><B|B> and classify equality by rank.

    Equality is declared when the two sides agree to within 1e-7 of the
    Hadamard bound of the right side; the case comes from rank tests alone.
    """
    A, B = check_pair(form, A, B)
    n = form.n
    lhs = form.inner(A, B) ** 2
    rhs = form.inner(A, A) * form.inner(B, B)
    scale = value_scale(form, A, A) * value_scale(form, B, B)
    if lhs > rhs + tol * scale:
        raise InequalityViolated(f"<A|B>^2 = {lhs!r} exceeds <A|A><B|B> = {rhs!r}")
    gap = rhs - lhs
    equality = abs(gap) <= EQUALITY_BAND * scale
    if numerical_rank(A, rank_tol) < n:
        case = "A-dependent"
    elif numerical_rank(B, rank_tol) < n:
        case = "B-dependent"
    elif numerical_rank(np.vstack([A, B]), rank_tol) == n:
        case = "same-subspace"
    else:
        case = "strict"
    return CauchySchwarzVerdict(lhs=lhs, rhs=rhs, gap=gap, equality=bool(equality), case=case)
