"""Angles and distances between n-dimensional subspaces, complements and duality.

The angle between subspaces spanned by tuples A and B is

    cos(phi) = <A|B> / (||A|| ||B||).

The cosine changes sign when one basis is replaced by a basis of opposite
orientation, so the metric on the (unoriented) Grassmannian uses
``arccos(|cos(phi)|)``. The oriented angle is still reported.

Complements are taken with respect to the ambient inner product of a
:class:`~grassmetric.ninner.GramNForm`; for a non-identity ambient the work is
done in orthonormal coordinates y = x L, where ambient = L L^T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateSubspace,
    FullSpace,
    InequalityViolated,
    InputError,
    IdentityViolated,
    MixedSpaces,
    NonSquare,
    NotOrthogonal,
    NotOrthonormal,
    OrderMismatch,
    RankDeficient,
    UnsupportedForm,
)
from .linalg import as_matrix, determinant, index_tuples, nullspace, orthonormalize, submatrix
from .ninner import GramNForm, as_tuple
from .subspace import Subspace

__all__ = [
    "AngleResult",
    "DualAngleCheck",
    "MinorIdentity",
    "complementary_minor",
    "distance_matrix",
    "dual_angle_check",
    "dual_n_inner",
    "grassmann_distance",
    "laplace_identity_check",
    "orthogonal_complement",
    "pluecker_norm",
    "subspace_angle",
]

COSINE_SLACK = 1e-9
ORTHOGONALITY_TOL = 1e-9


@dataclass(frozen=True)
class AngleResult:
    cosine: float
    angle_oriented: float
    angle_unoriented: float


@dataclass(frozen=True)
class DualAngleCheck:
    """Angles between a pair of subspaces and between their complements.

    ``orientation`` is the sign of det of the orthogonal matrix relating the two
    frames [basis; complement basis]; the oriented cosines satisfy
    ``primal_cosine == orientation * dual_cosine``.
    """

    primal: float
    dual: float
    gap: float
    primal_cosine: float
    dual_cosine: float
    orientation: int


@dataclass(frozen=True)
class MinorIdentity:
    minor: float
    cominor: float
    sign: int
    residual: float


def _same_space(left: Subspace, right: Subspace) -> None:
    if (left.m, left.n) != (right.m, right.n) or left.form != right.form:
        raise MixedSpaces(f"{left!r} and {right!r} do not share form, dimension and order")


def subspace_angle(left: Subspace, right: Subspace) -> AngleResult:
    _same_space(left, right)
    form, A, B = left.form, left.basis, right.basis
    na, nb = form.inner(A, A), form.inner(B, B)
    if na <= 0.0 or nb <= 0.0:
        raise DegenerateSubspace("a basis has non-positive n-norm")
    cosine = form.inner(A, B) / math.sqrt(na * nb)
    if abs(cosine) > 1.0 + COSINE_SLACK:
        raise InequalityViolated(f"|cos| = {abs(cosine)!r} exceeds 1")
    cosine = min(1.0, max(-1.0, cosine))
    return AngleResult(
        cosine=cosine,
        angle_oriented=math.acos(cosine),
        angle_unoriented=math.acos(abs(cosine)),
    )


def grassmann_distance(left: Subspace, right: Subspace) -> float:
    """arccos |cos(phi)|, a value in [0, pi/2]."""
    return subspace_angle(left, right).angle_unoriented


def distance_matrix(subspaces: Sequence[Subspace]) -> np.ndarray:
    """Symmetric matrix of pairwise distances with a zero diagonal."""
    if not subspaces:
        raise InputError("need at least one subspace")
    first = subspaces[0]
    for S in subspaces[1:]:
        _same_space(first, S)
    k = len(subspaces)
    D = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            D[i, j] = D[j, i] = grassmann_distance(subspaces[i], subspaces[j])
    return D


def _require_gram(S: Subspace) -> GramNForm:
    if not isinstance(S.form, GramNForm):
        raise UnsupportedForm("complements are defined for Gram forms only")
    return S.form


def orthogonal_complement(S: Subspace) -> Subspace:
    """The (m - n)-dimensional complement, with an ambient-orthonormal basis."""
    form = _require_gram(S)
    n, m = S.n, S.m
    if n == m:
        raise FullSpace("the complement of the whole space is {0}")
    if form.is_standard:
        N = nullspace(S.basis)
    else:
        L = form.cholesky()
        N = nullspace(S.basis @ L)
    if N.shape[0] != m - n:
        raise RankDeficient(f"complement has dimension {N.shape[0]}, expected {m - n}")
    Q = orthonormalize(N)
    if not form.is_standard:
        # back from y = x L
        Q = np.linalg.solve(L.T, Q.T).T
    return Subspace(Q, form.with_order(m - n))


def dual_n_inner(A, B, n: int | None = None) -> float:
    """Standard (m - n)-inner product of two tuples of m - n vectors in R^m.

    Basis tuples satisfy <e_I | e_J>* = delta^I_J. Pass ``n`` to have the
    tuple length checked against m - n.
    """
    A = as_tuple(A, name="left tuple")
    B = as_tuple(B, A.shape[1], "right tuple")
    k, m = A.shape
    if B.shape[0] != k:
        raise OrderMismatch(f"tuples of {k} and {B.shape[0]} vectors")
    if n is not None and k != m - n:
        raise OrderMismatch(f"dual tuples need {m - n} vectors, got {k}")
    return GramNForm.standard(m, k).inner(A, B)


def _orientation(S: Subspace, Sc: Subspace) -> int:
    return 1 if determinant(np.vstack([S.basis, Sc.basis])) > 0 else -1


def dual_angle_check(left: Subspace, right: Subspace) -> DualAngleCheck:
    """Compare the unoriented angle of a pair with that of their complements."""
    _same_space(left, right)
    _require_gram(left)
    primal = subspace_angle(left, right)
    left_c, right_c = orthogonal_complement(left), orthogonal_complement(right)
    dual = subspace_angle(left_c, right_c)
    return DualAngleCheck(
        primal=primal.angle_unoriented,
        dual=dual.angle_unoriented,
        gap=abs(primal.angle_unoriented - dual.angle_unoriented),
        primal_cosine=primal.cosine,
        dual_cosine=dual.cosine,
        orientation=_orientation(left, left_c) * _orientation(right, right_c),
    )


def _check_square(A) -> np.ndarray:
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise NonSquare(f"expected a square matrix, got {A.shape}")
    return A


def _complement_indices(I: Sequence[int], m: int) -> list[int]:
    chosen = set(I)
    return [j for j in range(m) if j not in chosen]


def _minor_sign(I: Sequence[int], n: int) -> int:
    # (-1)^(1+...+n) * (-1)^(i_1+...+i_n) in 1-based indices
    return -1 if (n * (n + 1) // 2 + sum(i + 1 for i in I)) % 2 else 1


def complementary_minor(A, I: Sequence[int], tol: float = 1e-8) -> MinorIdentity:
    """Minor on the first n rows and columns I against its complementary minor.

    For orthogonal A: det A[:n, I] = sgn(det A) (-1)^(n(n+1)/2 + sum I) det A[n:, I^c]
    with 1-based I. ``I`` is given 0-based here. Raises ``IdentityViolated``
    when the two sides differ by more than ``tol``.
    """
    A = _check_square(A)
    m = A.shape[0]
    I = [int(i) for i in I]
    n = len(I)
    if not 1 <= n < m:
        raise InputError(f"need 1 <= n < m, got n={n}, m={m}")
    if np.max(np.abs(A @ A.T - np.eye(m))) > ORTHOGONALITY_TOL:
        raise NotOrthogonal("matrix is not orthogonal")
    minor = determinant(submatrix(A, range(n), I))
    cominor = determinant(submatrix(A, range(n, m), _complement_indices(I, m)))
    sign = (1 if determinant(A) > 0 else -1) * _minor_sign(I, n)
    residual = abs(minor - sign * cominor)
    if residual > tol:
        raise IdentityViolated(f"minor {minor!r} vs signed complementary minor {sign * cominor!r}")
    return MinorIdentity(minor=minor, cominor=cominor, sign=sign, residual=residual)


def laplace_identity_check(A, n: int) -> float:
    """|sum_I (-1)^(n(n+1)/2 + sum I) det A[:n, I] det A[n:, I^c] - det A|.

    Laplace expansion along the first n rows; any square A.
    """
    A = _check_square(A)
    m = A.shape[0]
    if not 1 <= n < m:
        raise InputError(f"need 1 <= n < m, got n={n}, m={m}")
    rows, rest = list(range(n)), list(range(n, m))
    terms = []
    for I in index_tuples(m, n):
        top = determinant(A[np.ix_(rows, list(I))])
        bottom = determinant(A[np.ix_(rest, _complement_indices(I, m))])
        terms.append(_minor_sign(I, n) * top * bottom)
    return abs(math.fsum(terms) - determinant(A))


def pluecker_norm(A) -> float:
    """Sum of squared n x n column minors of a matrix with orthonormal rows."""
    A = as_tuple(A)
    n, m = A.shape
    if n > m or np.max(np.abs(A @ A.T - np.eye(n))) > ORTHOGONALITY_TOL:
        raise NotOrthonormal("rows are not orthonormal")
    return math.fsum(determinant(A[:, list(I)]) ** 2 for I in index_tuples(m, n))
