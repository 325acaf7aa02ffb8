"""n-inner product evaluators.

Two realizations of ``<a_1,...,a_n | b_1,...,b_n>``:

* :class:`GramNForm` -- determinant of the n x n matrix of ambient inner
  products ``<a_i|b_j> = a_i^T G b_j`` for a symmetric positive-definite G.
* :class:`DiagonalNForm` -- the form fixed on basis n-vectors by
  ``<e_I|e_J> = C_I * delta^I_J`` and extended multilinearly, evaluated as
  ``sum_I C_I pl_I(A) pl_I(B)`` over Pluecker coordinates.

Tuples are row matrices: an (n, m) array whose i-th row is the i-th argument.
Any object with ``m``, ``n`` and ``inner(A, B)`` can stand in for a form; the
axiom checkers rely on that to exercise deliberately broken forms.
"""

from __future__ import annotations

import math
from typing import Mapping

import numpy as np

from .errors import (
    DimensionMismatch,
    InputError,
    InvalidIndexTuple,
    IndexOutOfRange,
    NegativeSquare,
    NonFinite,
    OrderExceedsDimension,
    OrderMismatch,
    ShapeMismatch,
    UnsupportedForm,
)
from .linalg import _lu_det, as_matrix, as_vector, index_tuples

__all__ = [
    "DiagonalNForm",
    "GramNForm",
    "NInnerForm",
    "as_tuple",
    "check_pair",
    "misiak_reduce",
    "n_inner",
    "n_norm",
    "normalize_diagonal",
    "pluecker_coordinates",
    "value_scale",
]

SYMMETRY_TOL = 1e-12
RADICAND_FLOOR = -1e-12


def as_tuple(A, m: int | None = None, name: str = "tuple") -> np.ndarray:
    """Validate a vector tuple given as rows; a single 1-D vector becomes one row."""
    a = np.array(A, dtype=float)
    if a.ndim == 1:
        a = a[None, :]
    a = as_matrix(a, name)
    if m is not None and a.shape[1] != m:
        raise DimensionMismatch(f"{name} vectors have dimension {a.shape[1]}, expected {m}")
    return a


def _euclidean_bound(A: np.ndarray) -> float:
    return float(np.prod(np.linalg.norm(A, axis=1)))


def _pluecker_vector(A: np.ndarray, combos) -> np.ndarray:
    rows = A.tolist()
    return np.array([_lu_det([[r[i] for i in I] for r in rows]) for I in combos])


class NInnerForm:
    """Common surface of the concrete forms."""

    m: int
    n: int

    def inner(self, A: np.ndarray, B: np.ndarray) -> float:
        raise NotImplementedError

    def bound(self, A: np.ndarray) -> float:
        """Upper bound on the n-norm of A (Hadamard-type)."""
        return _euclidean_bound(A)


class GramNForm(NInnerForm):
    """Determinant of pairwise ambient inner products.

    ``ambient`` is the m x m Gram matrix of the underlying inner product on
    R^m; the identity gives the standard dot product.
    """

    def __init__(self, ambient, n: int):
        G = as_matrix(ambient, "ambient")
        m = G.shape[0]
        if G.shape[1] != m:
            raise ShapeMismatch(f"ambient matrix must be square, got {G.shape}")
        if n < 1:
            raise InputError(f"order must be >= 1, got {n}")
        if np.max(np.abs(G - G.T)) > SYMMETRY_TOL * max(1.0, float(np.max(np.abs(G)))):
            raise InputError("ambient matrix is not symmetric")
        for k in range(1, m + 1):
            if _lu_det(G[:k, :k].tolist()) <= 0.0:
                raise InputError("ambient matrix is not positive definite")
        G.setflags(write=False)
        self.ambient = G
        self.m = m
        self.n = int(n)
        self.is_standard = bool(np.array_equal(G, np.eye(m)))

    @classmethod
    def standard(cls, m: int, n: int) -> "GramNForm":
        return cls(np.eye(m), n)

    def with_order(self, n: int) -> "GramNForm":
        return GramNForm(self.ambient, n)

    def gram(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Matrix of ambient inner products between the rows of A and B."""
        if self.is_standard:
            return A @ B.T
        return A @ self.ambient @ B.T

    def ambient_inner(self, x, y) -> float:
        return float(self.gram(np.atleast_2d(x), np.atleast_2d(y))[0, 0])

    def inner(self, A: np.ndarray, B: np.ndarray) -> float:
        if A.shape[0] > self.m:
            return 0.0
        return _lu_det(self.gram(A, B).tolist())

    def bound(self, A: np.ndarray) -> float:
        sq = np.einsum("ij,ij->i", A @ self.ambient, A)
        return float(np.prod(np.sqrt(np.maximum(sq, 0.0))))

    def cholesky(self) -> np.ndarray:
        """Lower-triangular L with ambient = L L^T."""
        return np.linalg.cholesky(self.ambient)

    def __eq__(self, other):
        if not isinstance(other, GramNForm):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.ambient, other.ambient)

    __hash__ = None

    def __repr__(self):
        kind = "standard" if self.is_standard else "ambient"
        return f"GramNForm({kind}, m={self.m}, n={self.n})"


class DiagonalNForm(NInnerForm):
    """Form with ``<e_I|e_J> = C_I delta^I_J`` on the standard basis.

    ``coefficients`` maps strictly increasing 0-based n-tuples to positive
    reals; tuples not listed get coefficient 1.
    """

    def __init__(self, m: int, n: int, coefficients: Mapping[tuple[int, ...], float] | None = None):
        if n < 1:
            raise InputError(f"order must be >= 1, got {n}")
        if n > m:
            raise OrderExceedsDimension(f"order {n} exceeds dimension {m}")
        self.m = int(m)
        self.n = int(n)
        self.index_tuples = list(index_tuples(self.m, self.n))
        position = {I: k for k, I in enumerate(self.index_tuples)}
        C = np.ones(len(self.index_tuples))
        for idx, value in (coefficients or {}).items():
            I = tuple(int(i) for i in idx)
            if len(I) != n:
                raise InputError(f"coefficient index {I} does not have length {n}")
            if any(not 0 <= i < m for i in I):
                raise IndexOutOfRange(f"coefficient index {I} outside 0..{m - 1}")
            if I not in position:
                raise InvalidIndexTuple(f"coefficient index {I} is not strictly increasing")
            value = float(value)
            if not math.isfinite(value):
                raise NonFinite(f"coefficient at {I} is not finite")
            if value <= 0.0:
                raise InputError(f"coefficient at {I} must be positive, got {value}")
            C[position[I]] = value
        C.setflags(write=False)
        self.coefficients = C
        self._position = position

    def coefficient(self, I) -> float:
        return float(self.coefficients[self._position[tuple(I)]])

    @property
    def is_uniform(self) -> bool:
        return bool(np.all(self.coefficients == self.coefficients[0]))

    def inner(self, A: np.ndarray, B: np.ndarray) -> float:
        pa = _pluecker_vector(A, self.index_tuples)
        pb = _pluecker_vector(B, self.index_tuples)
        return float(pa @ (self.coefficients * pb))

    def bound(self, A: np.ndarray) -> float:
        # sum_I pl_I(A)^2 <= prod |a_i|^2 by Cauchy-Binet and Hadamard
        return math.sqrt(float(np.max(self.coefficients))) * float(np.prod(np.linalg.norm(A, axis=1)))

    @classmethod
    def from_json(cls, obj: Mapping) -> "DiagonalNForm":
        """Build from ``{"m":..., "n":..., "C":[{"idx":[...], "value":...}]}``.

        ``idx`` entries are 1-based, as in the usual notation i_1 < ... < i_n.
        """
        try:
            m, n = int(obj["m"]), int(obj["n"])
            entries = obj.get("C", [])
            coeffs = {tuple(int(i) - 1 for i in e["idx"]): float(e["value"]) for e in entries}
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed coefficient table: {exc}") from exc
        return cls(m, n, coeffs)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "C": [
                {"idx": [i + 1 for i in I], "value": float(c)}
                for I, c in zip(self.index_tuples, self.coefficients)
            ],
        }

    def __eq__(self, other):
        if not isinstance(other, DiagonalNForm):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and np.array_equal(
            self.coefficients, other.coefficients
        )

    __hash__ = None

    def __repr__(self):
        return f"DiagonalNForm(m={self.m}, n={self.n}, uniform={self.is_uniform})"


def normalize_diagonal(form: DiagonalNForm) -> tuple[DiagonalNForm, float]:
    """Rescale a uniform diagonal form to unit coefficients.

    Returns ``(unit, s)`` with ``form.inner(A, B) == unit.inner(s*A, s*B)``,
    where ``s = C**(1/(2n))``, i.e. coordinates in the basis e_alpha / s.
    """
    if not form.is_uniform:
        raise UnsupportedForm("only forms with all coefficients equal can be normalized")
    c = float(form.coefficients[0])
    return DiagonalNForm(form.m, form.n), c ** (1.0 / (2 * form.n))


def check_pair(form, A, B) -> tuple[np.ndarray, np.ndarray]:
    A = as_tuple(A, form.m, "left tuple")
    B = as_tuple(B, form.m, "right tuple")
    for name, T in (("left", A), ("right", B)):
        if T.shape[0] != form.n:
            raise OrderMismatch(f"{name} tuple has {T.shape[0]} vectors, form has order {form.n}")
    return A, B


def n_inner(form: NInnerForm, A, B) -> float:
    """Evaluate ``<A|B>`` after checking order and dimension."""
    A, B = check_pair(form, A, B)
    return float(form.inner(A, B))


def n_norm(form: NInnerForm, A) -> float:
    """sqrt(<A|A>); radicands in [-1e-12, 0) are treated as round-off and clamped."""
    A, _ = check_pair(form, A, A)
    value = float(form.inner(A, A))
    if value < RADICAND_FLOOR:
        raise NegativeSquare(f"<A|A> = {value!r} is negative")
    return math.sqrt(max(value, 0.0))


def misiak_reduce(form: NInnerForm, a, b, X=()) -> float:
    """The (n+1)-argument product (a, b | x_1, ..., x_{n-1}).

    Evaluated as ``<a, x_1, ..., x_{n-1} | b, x_1, ..., x_{n-1}>``.
    """
    a = as_vector(a, "a")
    b = as_vector(b, "b")
    X = as_tuple(X, a.shape[0], "shared vectors") if np.size(X) else np.empty((0, a.shape[0]))
    if X.shape[0] != form.n - 1:
        raise OrderMismatch(f"expected {form.n - 1} shared vectors, got {X.shape[0]}")
    return n_inner(form, np.vstack([a, X]), np.vstack([b, X]))


def pluecker_coordinates(A) -> dict[tuple[int, ...], float]:
    """All n x n column minors of the row matrix A, keyed by 0-based column tuples."""
    A = as_tuple(A)
    n, m = A.shape
    if n > m:
        raise OrderExceedsDimension(f"{n} vectors in dimension {m} have no Pluecker coordinates")
    combos = list(index_tuples(m, n))
    return dict(zip(combos, _pluecker_vector(A, combos).tolist()))


def value_scale(form, A: np.ndarray, B: np.ndarray) -> float:
    """Magnitude against which residuals of ``<A|B>`` are judged."""
    bound = getattr(form, "bound", _euclidean_bound)
    return float(bound(A) * bound(B))
