import math

import numpy as np
import pytest

from normal_schur.genmat import haar_orthogonal
from normal_schur.matcore import frobenius_norm
from normal_schur.nearest import (
    complex_polar,
    j_matrix,
    nearest_ortho_symplectic,
    osp_distance_bound,
)


def random_osp(rng, m):
    """Random orthogonal symplectic matrix (realified unitary)."""
    Z = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    U, _ = np.linalg.qr(Z)
    return np.block([[U.real, U.imag], [-U.imag, U.real]])


def osp_grid_distance(A, steps=20000):
    """Brute-force distance oracle for m = 1: the orthogonal symplectic
    group is the rotation circle [[cos t, sin t], [-sin t, cos t]]."""
    ts = np.linspace(0.0, 2.0 * math.pi, steps, endpoint=False)
    best = math.inf
    for t in ts:
        R = np.array([[math.cos(t), math.sin(t)], [-math.sin(t), math.cos(t)]])
        best = min(best, frobenius_norm(A - R))
    return best


class TestJMatrix:
    def test_small_cases(self):
        J = j_matrix(1)
        assert np.array_equal(J, np.array([[0.0, -1.0], [1.0, 0.0]]))
        J2 = j_matrix(2)
        assert np.allclose(J2 @ J2, -np.eye(4), atol=0)

    def test_osp_members_commute_with_j(self, rng):
        J = j_matrix(3)
        R = random_osp(rng, 3)
        assert np.allclose(R @ J, J @ R, atol=1e-14)
        assert np.allclose(R.T @ R, np.eye(6), atol=1e-14)


class TestComplexPolar:
    def test_identity(self):
        res = complex_polar(np.eye(3, dtype=complex))
        U, gap, unique = res.unitary_factor, res.hermitian_norm_gap, res.unique
        assert np.allclose(U, np.eye(3), atol=1e-14)
        assert gap <= 1e-14
        assert unique

    def test_positive_scaling(self):
        res = complex_polar(2.0 * np.eye(2, dtype=complex))
        U, gap, unique = res.unitary_factor, res.hermitian_norm_gap, res.unique
        assert np.allclose(U, np.eye(2), atol=1e-14)
        assert gap == pytest.approx(math.sqrt(2.0), rel=1e-12)
        assert unique

    def test_matches_svd_polar(self, rng):
        for _ in range(30):
            B = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            res = complex_polar(B)
            U, unique = res.unitary_factor, res.unique
            assert unique
            W, s, Vh = np.linalg.svd(B)
            expected = W @ Vh
            assert np.allclose(U, expected, atol=1e-11 * max(1.0, s[0]))
            assert np.allclose(U.conj().T @ U, np.eye(3), atol=1e-13)

    def test_rank_deficient_flagged(self):
        B = np.diag([1.0, 0.0]).astype(complex)
        res = complex_polar(B)
        U, unique = res.unitary_factor, res.unique
        assert not unique
        assert np.allclose(U.conj().T @ U, np.eye(2), atol=1e-12)


class TestNearestOrthoSymplectic:
    def test_identity_is_its_own_projection(self):
        R, dist = nearest_ortho_symplectic(np.eye(4))
        assert np.allclose(R, np.eye(4), atol=1e-13)
        assert dist <= 1e-13

    def test_scaled_identity_distance(self):
        # Nearest point to 2I is I; distance is ||2I - I||_F = sqrt(2m).
        m = 2
        R, dist = nearest_ortho_symplectic(2.0 * np.eye(2 * m))
        assert np.allclose(R, np.eye(2 * m), atol=1e-12)
        assert dist == pytest.approx(math.sqrt(2.0 * m), rel=1e-12)

    def test_m1_grid_oracle(self, rng):
        for _ in range(8):
            A = rng.standard_normal((2, 2))
            R, dist = nearest_ortho_symplectic(A)
            assert dist == pytest.approx(osp_grid_distance(A), abs=1e-5)
            assert frobenius_norm(A - R) == pytest.approx(dist, rel=1e-11)

    def test_distance_identity(self, rng):
        # Returned distance equals the direct Frobenius gap to the factor.
        for m in (1, 2, 3):
            A = rng.standard_normal((2 * m, 2 * m))
            R, dist = nearest_ortho_symplectic(A)
            direct = frobenius_norm(A - R)
            assert dist == pytest.approx(direct, rel=1e-11)

    def test_projection_lands_in_group(self, rng):
        for m in (1, 2, 4):
            A = rng.standard_normal((2 * m, 2 * m))
            R, _ = nearest_ortho_symplectic(A)
            J = j_matrix(m)
            assert np.allclose(R.T @ R, np.eye(2 * m), atol=1e-12)
            assert np.allclose(R @ J, J @ R, atol=1e-12)

    def test_group_members_project_to_themselves(self, rng):
        for m in (1, 3):
            G = random_osp(rng, m)
            R, dist = nearest_ortho_symplectic(G)
            assert np.allclose(R, G, atol=1e-12)
            assert dist <= 1e-12

    def test_invariance_under_osp_multiplication(self, rng):
        # Distance to the group is invariant under left/right multiplication
        # by group members.
        m = 2
        A = rng.standard_normal((2 * m, 2 * m))
        G = random_osp(rng, m)
        _, d0 = nearest_ortho_symplectic(A)
        _, dl = nearest_ortho_symplectic(G @ A)
        _, dr = nearest_ortho_symplectic(A @ G)
        assert dl == pytest.approx(d0, rel=1e-10)
        assert dr == pytest.approx(d0, rel=1e-10)


class TestDistanceBounds:
    def test_bounds_dominate_distance(self, rng):
        for _ in range(200):
            m = int(rng.integers(1, 4))
            A = rng.standard_normal((2 * m, 2 * m))
            _, dist = nearest_ortho_symplectic(A)
            squared, linear = osp_distance_bound(A)
            assert dist * dist <= squared * (1.0 + 1e-12) + 1e-14
            assert dist <= linear * (1.0 + 1e-12) + 1e-14

    def test_bounds_near_identity(self, rng):
        # Near the group the bounds must stay valid and become tight-ish.
        for _ in range(200):
            m = int(rng.integers(1, 4))
            G = random_osp(rng, m)
            A = G + 1e-6 * rng.standard_normal((2 * m, 2 * m))
            _, dist = nearest_ortho_symplectic(A)
            squared, linear = osp_distance_bound(A)
            assert dist * dist <= squared * (1.0 + 1e-10) + 1e-18
            assert dist <= linear * (1.0 + 1e-10) + 1e-12
            assert linear <= 1e-4  # same order as the perturbation

    def test_zero_exactly_on_group(self, rng):
        G = random_osp(rng, 2)
        squared, linear = osp_distance_bound(G)
        assert squared <= 1e-24
        assert linear <= 1e-12
