import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose

from geofreq import (
    Multivector,
    bivector_apply,
    decompose_matrix,
    embed3,
    hodge3,
    wedge,
)

W0 = 2.0 * math.pi * 50.0

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


def finite_vectors(n, lo=-1e3, hi=1e3):
    return arrays(np.float64, (n,), elements=st.floats(lo, hi, allow_nan=False))


class TestWedge:
    def test_unit_basis(self):
        m = wedge(E1, E2)
        assert m[0, 1] == 1.0
        assert m[1, 0] == -1.0
        assert np.count_nonzero(m) == 2

    def test_self_wedge_is_zero(self):
        a = np.array([3.0, -2.0, 7.5])
        assert np.all(wedge(a, a) == 0.0)

    def test_hand_computed_entries(self):
        m = wedge([1.0, 2.0, 3.0], [4.0, 5.0, 6.0])
        # componentwise a_i b_j - a_j b_i
        assert m[0, 1] == -3.0
        assert m[0, 2] == -6.0
        assert m[1, 2] == -3.0
        assert_allclose(m, -m.T)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            wedge([1.0, 2.0], [1.0, 2.0, 3.0])

    @given(a=finite_vectors(4), b=finite_vectors(4))
    def test_antisymmetry_exact(self, a, b):
        assert np.all(wedge(a, b) + wedge(b, a) == 0.0)

    @given(a=finite_vectors(3), b=finite_vectors(3))
    def test_hodge_of_wedge_is_cross(self, a, b):
        scale = max(np.linalg.norm(a) * np.linalg.norm(b), 1.0)
        assert_allclose(hodge3(wedge(a, b)), np.cross(a, b), atol=1e-12 * scale)


class TestHodge:
    def test_basis(self):
        assert_allclose(hodge3(wedge(E1, E2)), E3)

    def test_zero_bivector(self):
        assert_allclose(hodge3(np.zeros((3, 3))), np.zeros(3))

    def test_balanced_rotation_tensor_gives_vorticity(self):
        # The skew part of the balanced Jacobian encodes half the vorticity;
        # the axial vector of its transpose is the curl orientation.
        q = np.array([[0.0, -W0, 0.0], [W0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        assert_allclose(hodge3(2.0 * q.T), np.array([0.0, 0.0, 2.0 * W0]))
        assert np.linalg.norm(hodge3(2.0 * q)) == pytest.approx(2.0 * W0)

    def test_requires_3x3(self):
        with pytest.raises(ValueError):
            hodge3(np.zeros((4, 4)))

    @given(w=finite_vectors(3))
    def test_embed_round_trip(self, w):
        assert_allclose(hodge3(embed3(w)), w)
        m = embed3(w)
        assert np.all(m == -m.T)


class TestBivectorApply:
    def test_basis_action(self):
        out = bivector_apply(wedge(E1, E2), E1)
        assert_allclose(out, -E2)
        assert out @ E1 == 0.0

    def test_orthogonality_identity(self):
        v = np.array([1.0, 2.0, 3.0])
        vp = np.array([0.0, 1.0, 0.0])
        b = wedge(v, vp) / (v @ v)
        assert abs(bivector_apply(b, v) @ v) <= 1e-12 * np.linalg.norm(v) * np.linalg.norm(vp)

    def test_balanced_rotation_applied_to_alpha_axis(self):
        q = np.array([[0.0, -W0, 0.0], [W0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        v = np.array([2.5, 0.0, 0.0])
        assert_allclose(bivector_apply(q, v), np.array([0.0, W0 * 2.5, 0.0]))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            bivector_apply(np.zeros((3, 3)), np.ones(4))

    @given(v=finite_vectors(3), vp=finite_vectors(3))
    @settings(max_examples=200)
    def test_perpendicularity_random(self, v, vp):
        norm2 = v @ v
        if norm2 < 1e-6:
            return
        b = wedge(v, vp) / norm2
        bound = 1e-12 * max(np.linalg.norm(v) * np.linalg.norm(vp), 1e-30)
        assert abs(bivector_apply(b, v) @ v) <= bound


class TestDecomposeMatrix:
    def test_skew_input_is_pure_rotation(self):
        j = np.array([[0.0, -W0, 0.0], [W0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        s, r, q = decompose_matrix(j)
        assert np.all(s == 0.0)
        assert np.all(r == 0.0)
        assert_allclose(q, j)

    def test_symmetric_traceless_is_pure_shear(self):
        j = np.array([[1.0, 2.0, 0.0], [2.0, -3.0, 1.0], [0.0, 1.0, 2.0]])
        assert np.trace(j) == 0.0
        s, r, q = decompose_matrix(j)
        assert np.all(s == 0.0)
        assert np.all(q == 0.0)
        assert_allclose(r, j)

    def test_isotropic_input(self):
        j = np.diag([3.0, 3.0, 3.0])
        s, r, q = decompose_matrix(j)
        assert_allclose(s, j)
        assert np.all(r == 0.0)
        assert np.all(q == 0.0)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            decompose_matrix(np.zeros((2, 3)))

    @given(j=arrays(np.float64, (4, 4), elements=st.floats(-1e3, 1e3)))
    def test_split_properties(self, j):
        s, r, q = decompose_matrix(j)
        scale = max(np.abs(j).max(), 1.0)
        assert_allclose(s + r + q, j, atol=1e-12 * scale)
        assert abs(np.trace(r)) <= 1e-12 * scale
        assert_allclose(r, r.T, atol=1e-12 * scale)
        assert_allclose(q, -q.T, atol=1e-12 * scale)
        diag = np.diag(s)
        assert np.all(diag == diag[0])

    @given(j=arrays(np.float64, (3, 3), elements=st.floats(-1e3, 1e3)),
           v=finite_vectors(3))
    def test_quadratic_form_annihilation(self, j, v):
        _, _, q = decompose_matrix(j)
        scale = max(np.abs(q).max() * (v @ v), 1e-30)
        assert abs(v @ (q @ v)) <= 1e-12 * scale


class TestMultivector:
    def test_conjugate_flips_bivector(self):
        m = Multivector(2.0, wedge(E1, E2))
        c = m.conjugate()
        assert c.scalar == 2.0
        assert_allclose(c.bivector, -m.bivector)

    def test_conjugate_action_recovers_derivative(self):
        v = np.array([1.0, -2.0, 0.5])
        vp = np.array([0.3, 0.1, -1.0])
        norm2 = v @ v
        m = Multivector(float(v @ vp) / norm2, wedge(v, vp) / norm2)
        assert_allclose(m.conjugate().act(v), vp, rtol=1e-12, atol=1e-12)
