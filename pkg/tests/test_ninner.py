from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grassmetric import (
    DiagonalNForm,
    GramNForm,
    misiak_reduce,
    n_inner,
    n_norm,
    normalize_diagonal,
    pluecker_coordinates,
)
from grassmetric.errors import (
    DimensionMismatch,
    InputError,
    InvalidIndexTuple,
    OrderExceedsDimension,
    OrderMismatch,
    UnsupportedForm,
)
from grassmetric.linalg import determinant_oracle, index_tuples
from grassmetric.sampling import random_spd, uniform_tuple

from oracles import multilinear_oracle

E = np.eye(3)


class TestGramExamples:
    def test_identity_block(self):
        assert n_inner(GramNForm.standard(3, 2), E[:2], E[:2]) == 1.0

    def test_odd_permutation(self):
        assert n_inner(GramNForm.standard(3, 2), E[:2], E[[1, 0]]) == -1.0

    def test_hand_value(self):
        A = [[1, 0, 0], [0, 1, 0]]
        B = [[1, 0, 0], [1, 1, 0]]
        assert n_inner(GramNForm.standard(3, 2), A, B) == pytest.approx(1.0, abs=1e-15)

    def test_norms(self):
        form = GramNForm.standard(3, 2)
        assert n_norm(form, E[:2]) == 1.0
        assert n_norm(form, [[2, 0, 0], [0, 1, 0]]) == 2.0
        assert n_norm(form, [[1, 1, 0], [1, 0, 0]]) == pytest.approx(1.0, abs=1e-15)

    def test_order_above_dimension_vanishes(self):
        form = GramNForm.standard(2, 3)
        A = np.array([[1.0, 0], [0, 1], [1, 1]])
        assert n_inner(form, A, A) == 0.0

    def test_matches_determinant_oracle(self, rng):
        for m, n in [(3, 2), (4, 3), (5, 2)]:
            G = random_spd(rng, m)
            A, B = uniform_tuple(rng, n, m), uniform_tuple(rng, n, m)
            expected = determinant_oracle(A @ G @ B.T)
            assert n_inner(GramNForm(G, n), A, B) == pytest.approx(expected, rel=1e-10, abs=1e-14)


class TestGramValidation:
    def test_rejects_nonsymmetric(self):
        with pytest.raises(InputError):
            GramNForm([[1, 0.5], [0, 1]], 1)

    def test_rejects_indefinite(self):
        with pytest.raises(InputError):
            GramNForm([[1, 2], [2, 1]], 1)

    def test_rejects_bad_order(self):
        with pytest.raises(InputError):
            GramNForm.standard(3, 0)

    def test_tuple_shape_checks(self):
        form = GramNForm.standard(3, 2)
        with pytest.raises(OrderMismatch):
            n_inner(form, E[:1], E[:2])
        with pytest.raises(DimensionMismatch):
            n_inner(form, np.eye(4)[:2], E[:2])

    def test_ambient_is_frozen(self):
        form = GramNForm(np.eye(2), 1)
        with pytest.raises(ValueError):
            form.ambient[0, 0] = 5.0


class TestDiagonal:
    def test_disjoint_blocks(self):
        assert n_inner(DiagonalNForm(3, 2), E[[0, 1]], E[[0, 2]]) == 0.0

    def test_uniform_equals_standard_gram(self, rng):
        # Cauchy-Binet
        for m, n in [(3, 2), (4, 2), (5, 3)]:
            A, B = uniform_tuple(rng, n, m), uniform_tuple(rng, n, m)
            assert n_inner(DiagonalNForm(m, n), A, B) == pytest.approx(
                n_inner(GramNForm.standard(m, n), A, B), rel=1e-10, abs=1e-14
            )

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**31))
    def test_multilinear_expansion_oracle(self, m, n, seed):
        if n > m:
            m, n = n, m
        rng = np.random.default_rng(seed)
        C = {I: float(rng.uniform(0.2, 3.0)) for I in index_tuples(m, n)}
        form = DiagonalNForm(m, n, C)
        A, B = uniform_tuple(rng, n, m), uniform_tuple(rng, n, m)
        expected = multilinear_oracle(lambda I: C[I], A, B)
        assert n_inner(form, A, B) == pytest.approx(expected, rel=1e-10, abs=1e-13)

    def test_default_coefficients(self):
        form = DiagonalNForm(3, 2, {(1, 2): 2.0})
        assert form.coefficient((0, 1)) == 1.0
        assert form.coefficient((1, 2)) == 2.0
        assert not form.is_uniform

    def test_validation(self):
        with pytest.raises(OrderExceedsDimension):
            DiagonalNForm(2, 3)
        with pytest.raises(InvalidIndexTuple):
            DiagonalNForm(3, 2, {(1, 0): 1.0})
        with pytest.raises(InputError):
            DiagonalNForm(3, 2, {(0, 1): -1.0})

    def test_json_round_trip(self):
        form = DiagonalNForm(3, 2, {(1, 2): 2.0, (0, 2): 0.5})
        obj = json.loads(json.dumps(form.to_json()))
        assert DiagonalNForm.from_json(obj) == form
        assert {"idx": [2, 3], "value": 2.0} in obj["C"]

    def test_normalize_uniform(self):
        form = DiagonalNForm(3, 2, {I: 4.0 for I in index_tuples(3, 2)})
        unit, s = normalize_diagonal(form)
        assert unit.is_uniform and unit.coefficient((0, 1)) == pytest.approx(1.0)
        assert s == pytest.approx(4.0 ** (1 / 4))
        A = uniform_tuple(np.random.default_rng(0), 2, 3)
        assert n_inner(form, A, A) == pytest.approx(n_inner(unit, s * A, s * A))

    def test_normalize_rejects_unequal(self):
        with pytest.raises(UnsupportedForm):
            normalize_diagonal(DiagonalNForm(3, 2, {(0, 1): 2.0}))


class TestSharedSlotReduction:
    def test_examples(self):
        form = GramNForm.standard(3, 2)
        assert misiak_reduce(form, E[0], E[0], [E[1]]) == 1.0
        assert misiak_reduce(form, [1, 1, 0], [1, -1, 0], [E[1]]) == pytest.approx(1.0, abs=1e-15)

    def test_shared_count(self):
        with pytest.raises(OrderMismatch):
            misiak_reduce(GramNForm.standard(3, 2), E[0], E[0])

    def test_order_one_is_dot(self, rng):
        a, b = rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4)
        assert misiak_reduce(GramNForm.standard(4, 1), a, b) == float(np.dot(a, b))


class TestPluecker:
    def test_examples(self):
        assert pluecker_coordinates(E[:2]) == {(0, 1): 1.0, (0, 2): 0.0, (1, 2): 0.0}
        assert pluecker_coordinates(E[[1, 0]])[(0, 1)] == -1.0

    def test_minors_match_oracle(self, rng):
        A = uniform_tuple(rng, 2, 4)
        for I, value in pluecker_coordinates(A).items():
            assert value == pytest.approx(determinant_oracle(A[:, list(I)]), rel=1e-12, abs=1e-15)
