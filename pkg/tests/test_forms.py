from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grassmetric import DiagonalNForm, GramNForm, NForm, form_inner, form_norm, generalized_delta, n_inner
from grassmetric import wedge_of_tuple
from grassmetric.errors import IndexOutOfRange, InputError, ShapeMismatch
from grassmetric.sampling import random_spd, uniform_tuple


class TestDelta:
    def test_examples(self):
        assert generalized_delta((1, 2), (1, 2)) == 1
        assert generalized_delta((1, 2), (2, 1)) == -1
        assert generalized_delta((1, 2), (1, 3)) == 0

    def test_repeated_index(self):
        assert generalized_delta((1, 1), (1, 1)) == 0

    @given(st.permutations(range(5)), st.permutations(range(5)))
    def test_composition(self, p, q):
        # delta^P_Q * delta^Q_R = delta^P_R for R the identity order
        r = list(range(5))
        assert generalized_delta(p, q) * generalized_delta(q, r) == generalized_delta(p, r)


class TestNForm:
    def test_canonical_sign(self):
        u = NForm(3, 2, {(1, 0): 2.0})
        assert u[(0, 1)] == -2.0
        assert u[(1, 0)] == 2.0

    def test_repeated_index_vanishes(self):
        assert len(NForm(3, 2, {(1, 1): 2.0})) == 0

    def test_arithmetic(self):
        a, b = NForm.basis(3, (0, 1)), NForm.basis(3, (0, 2))
        w = a * 1.0 - b * 2.0
        assert w[(0, 1)] == 1.0 and w[(0, 2)] == -2.0
        assert (w + (-w)) == NForm(3, 2)
        with pytest.raises(ShapeMismatch):
            a + NForm.basis(4, (0, 1))

    def test_validation(self):
        with pytest.raises(IndexOutOfRange):
            NForm(3, 2, {(0, 3): 1.0})
        with pytest.raises(InputError):
            NForm(2, 3)

    def test_json_round_trip(self):
        w = NForm(4, 2, {(0, 1): 1.5, (2, 3): -0.25})
        obj = json.loads(json.dumps(w.to_json()))
        assert NForm.from_json(obj) == w
        assert {"idx": [3, 4], "c": -0.25} in obj["entries"]


class TestWedge:
    def test_examples(self):
        E = np.eye(3)
        assert wedge_of_tuple(E[:2]) == NForm(3, 2, {(0, 1): 1.0})
        assert wedge_of_tuple(E[[1, 0]]) == NForm(3, 2, {(0, 1): -1.0})
        w = wedge_of_tuple([[1, 1, 0], [0, 1, 1]])
        assert w == NForm(3, 2, {(0, 1): 1.0, (0, 2): 1.0, (1, 2): 1.0})


class TestFormInner:
    def test_basis_element(self):
        e12 = NForm.basis(3, (0, 1))
        assert form_inner(GramNForm.standard(3, 2), e12, e12) == 1.0
        assert form_norm(GramNForm.standard(3, 2), e12) == 1.0

    def test_two_term_form(self):
        p, q = 1.0, 2.0
        w = NForm.basis(3, (0, 1)) * p - NForm.basis(3, (0, 2)) * q
        assert form_inner(GramNForm.standard(3, 2), w, w) == pytest.approx(p * p + q * q)
        assert form_norm(GramNForm.standard(3, 2), w) == pytest.approx(math.sqrt(5))

    def test_zero_form(self):
        assert form_norm(GramNForm.standard(3, 2), NForm(3, 2)) == 0.0

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            form_inner(GramNForm.standard(4, 2), NForm.basis(3, (0, 1)), NForm.basis(3, (0, 1)))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(2, 5), st.integers(0, 2**31))
    def test_wedge_path_matches_tuple_path(self, m, seed):
        rng = np.random.default_rng(seed)
        n = 1 + seed % m
        form = GramNForm(random_spd(rng, m), n)
        A, B = uniform_tuple(rng, n, m), uniform_tuple(rng, n, m)
        got = form_inner(form, wedge_of_tuple(A), wedge_of_tuple(B))
        assert got == pytest.approx(n_inner(form, A, B), rel=1e-9, abs=1e-13)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**31))
    def test_positive_on_nonzero_forms(self, seed):
        # arbitrary (non-decomposable) forms still have positive square norm
        rng = np.random.default_rng(seed)
        entries = {I: float(rng.uniform(-1, 1)) for I in [(0, 1), (2, 3), (0, 2)]}
        w = NForm(4, 2, entries)
        assert form_inner(GramNForm(random_spd(rng, 4), 2), w, w) > 0
        assert form_inner(DiagonalNForm(4, 2, {(0, 1): 3.0}), w, w) > 0
