"""Sparse n-forms over the standard basis of R^m.

An :class:`NForm` stores coefficients on strictly increasing index tuples, so
``{(0, 1): 2.0}`` is ``2 e_1 ^ e_2``. Python-side indices are 0-based; the JSON
representation uses 1-based ``idx`` lists.
"""

from __future__ import annotations

import math
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import IndexOutOfRange, InputError, NegativeSquare, ShapeMismatch
from .linalg import permutation_sign
from .ninner import RADICAND_FLOOR, DiagonalNForm, NInnerForm, pluecker_coordinates

__all__ = [
    "NForm",
    "form_inner",
    "form_norm",
    "generalized_delta",
    "wedge_of_tuple",
]

ZERO_CUTOFF = 1e-14


def generalized_delta(I: Iterable[int], J: Iterable[int]) -> int:
    """delta^I_J: sign of the permutation taking I to J, 0 unless they are the same set.

    Lists with a repeated index give 0.
    """
    I, J = list(I), list(J)
    if len(I) != len(J) or len(set(I)) != len(I) or set(I) != set(J):
        return 0
    where = {j: k for k, j in enumerate(J)}
    return permutation_sign([where[i] for i in I])


def _canonical(idx: Iterable[int]) -> tuple[tuple[int, ...], int]:
    idx = tuple(int(i) for i in idx)
    if len(set(idx)) != len(idx):
        return idx, 0
    order = sorted(range(len(idx)), key=idx.__getitem__)
    return tuple(idx[k] for k in order), permutation_sign(order)


class NForm:
    """Element of the n-th exterior power of R^m, stored sparsely.

    Entries may be given on unsorted tuples; they are sorted with the sign of
    the sorting permutation, and tuples with a repeated index vanish.
    """

    __slots__ = ("m", "n", "_coeffs")

    def __init__(self, m: int, n: int, entries: Mapping | Iterable = ()):
        if not 1 <= n <= m:
            raise InputError(f"need 1 <= n <= m, got m={m}, n={n}")
        self.m = int(m)
        self.n = int(n)
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[tuple[int, ...], float] = {}
        for idx, c in items:
            key, sign = _canonical(idx)
            if len(key) != n:
                raise ShapeMismatch(f"index tuple {key} does not have length {n}")
            if any(not 0 <= i < m for i in key):
                raise IndexOutOfRange(f"index tuple {key} outside 0..{m - 1}")
            if sign:
                acc[key] = acc.get(key, 0.0) + sign * float(c)
        self._coeffs = {k: v for k, v in sorted(acc.items()) if abs(v) >= ZERO_CUTOFF}

    @classmethod
    def basis(cls, m: int, I: Iterable[int]) -> "NForm":
        I = tuple(I)
        return cls(m, len(I), {I: 1.0})

    @property
    def coefficients(self) -> Mapping[tuple[int, ...], float]:
        return MappingProxyType(self._coeffs)

    def __getitem__(self, I) -> float:
        key, sign = _canonical(I)
        return sign * self._coeffs.get(key, 0.0)

    def __len__(self) -> int:
        return len(self._coeffs)

    def _same_shape(self, other: "NForm") -> None:
        if (self.m, self.n) != (other.m, other.n):
            raise ShapeMismatch(f"forms of shape {(self.m, self.n)} and {(other.m, other.n)}")

    def __add__(self, other: "NForm") -> "NForm":
        self._same_shape(other)
        return NForm(self.m, self.n, list(self._coeffs.items()) + list(other._coeffs.items()))

    def __neg__(self) -> "NForm":
        return self * -1.0

    def __sub__(self, other: "NForm") -> "NForm":
        return self + (-other)

    def __mul__(self, scalar: float) -> "NForm":
        s = float(scalar)
        return NForm(self.m, self.n, {k: s * v for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, NForm):
            return NotImplemented
        return (self.m, self.n, self._coeffs) == (other.m, other.n, other._coeffs)

    __hash__ = None

    def __repr__(self):
        terms = ", ".join(f"{k}: {v:g}" for k, v in self._coeffs.items())
        return f"NForm(m={self.m}, n={self.n}, {{{terms}}})"

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "entries": [{"idx": [i + 1 for i in k], "c": v} for k, v in self._coeffs.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "NForm":
        try:
            m, n = int(obj["m"]), int(obj["n"])
            entries = []
            for e in obj["entries"]:
                idx = [int(i) for i in e["idx"]]
                if any(b <= a for a, b in zip(idx, idx[1:])):
                    raise InputError(f"idx {idx} is not strictly increasing")
                entries.append((tuple(i - 1 for i in idx), float(e["c"])))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed n-form: {exc}") from exc
        return cls(m, n, entries)


def wedge_of_tuple(A) -> NForm:
    """a_1 ^ ... ^ a_n as an NForm; its coefficients are the Pluecker coordinates."""
    coords = pluecker_coordinates(A)
    n = len(next(iter(coords)))
    m = np.shape(A)[-1]
    return NForm(m, n, coords)


def form_inner(form: NInnerForm, u: NForm, v: NForm) -> float:
    """Inner product on n-forms induced by an n-inner product.

    sum over stored I, J of u_I v_J <e_I | e_J>. Diagonal forms read the basis
    products off their coefficient table; other forms evaluate them.
    """
    u._same_shape(v)
    if (u.m, u.n) != (form.m, form.n):
        raise ShapeMismatch(f"forms of shape {(u.m, u.n)} under a form with m={form.m}, n={form.n}")
    if isinstance(form, DiagonalNForm):
        common = u.coefficients.keys() & v.coefficients.keys()
        return math.fsum(u.coefficients[I] * v.coefficients[I] * form.coefficient(I) for I in common)
    E = np.eye(form.m)
    basis = {I: E[list(I)] for I in set(u.coefficients) | set(v.coefficients)}
    terms = [
        cu * cv * form.inner(basis[I], basis[J])
        for I, cu in u.coefficients.items()
        for J, cv in v.coefficients.items()
    ]
    return math.fsum(terms)


def form_norm(form: NInnerForm, u: NForm) -> float:
    value = form_inner(form, u, u)
    if value < RADICAND_FLOOR:
        raise NegativeSquare(f"<u|u> = {value!r} is negative")
    return math.sqrt(max(value, 0.0))
