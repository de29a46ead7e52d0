import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normal_schur.genmat import EnsembleSpec, generate, haar_orthogonal
from normal_schur.matcore import EPS, frobenius_norm, offschur, skew_part
from normal_schur.skewschur import (
    RotationPair,
    paardekooper_sweep,
    paardekooper_until,
    schur_skew_3x3,
    schur_skew_4x4,
    two_by_two_svd,
)
from normal_schur.matcore import GivensRotation
from conftest import (
    golden_after_skew_stage,
    golden_matrix,
    golden_sweep_rotation,
    random_skew,
)

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


def svd_kernel_residual(a11, a12, a21, a22):
    alpha1, alpha2, d1, d2 = two_by_two_svd(a11, a12, a21, a22)
    c1, s1 = math.cos(alpha1), math.sin(alpha1)
    c2, s2 = math.cos(alpha2), math.sin(alpha2)
    L = np.array([[c1, s1], [-s1, c1]])
    R = np.array([[c2, -s2], [s2, c2]])
    P = L @ np.array([[a11, a12], [a21, a22]]) @ R
    off = math.hypot(P[0, 1], P[1, 0])
    return off, P, d1, d2


class TestTwoByTwoSvd:
    def test_diagonal_passthrough(self):
        alpha1, alpha2, d1, d2 = two_by_two_svd(2.0, 0.0, 0.0, 3.0)
        assert alpha1 == alpha2 == 0.0
        assert (d1, d2) == (2.0, 3.0)

    def test_zero_matrix(self):
        assert two_by_two_svd(0.0, 0.0, 0.0, 0.0) == (0.0, 0.0, 0.0, 0.0)

    def test_rank_deficient(self):
        off, _, d1, d2 = svd_kernel_residual(0.0, 0.0, 1.0, 1.0)
        assert off < 1e-14
        assert sorted([abs(d1), abs(d2)]) == pytest.approx(
            [0.0, math.sqrt(2.0)], abs=1e-14
        )

    @settings(max_examples=300, deadline=None)
    @given(a=finite, b=finite, e=finite, d=finite)
    def test_diagonalizes(self, a, b, e, d):
        scale = max(abs(a), abs(b), abs(e), abs(d), 1.0)
        off, P, d1, d2 = svd_kernel_residual(a, b, e, d)
        assert off <= 1e-13 * scale
        assert P[0, 0] == pytest.approx(d1, abs=1e-12 * scale)
        assert P[1, 1] == pytest.approx(d2, abs=1e-12 * scale)

    def test_singular_values_match_closed_form(self, rng):
        for _ in range(200):
            a, b, e, d = rng.standard_normal(4)
            _, _, d1, d2 = two_by_two_svd(a, b, e, d)
            t = a * a + b * b + e * e + d * d
            det = abs(a * d - b * e)
            disc = max(t * t - 4.0 * det * det, 0.0)
            s1 = math.sqrt((t + math.sqrt(disc)) / 2.0)
            s2 = math.sqrt(max((t - math.sqrt(disc)) / 2.0, 0.0))
            got = sorted([abs(d1), abs(d2)])
            assert got == pytest.approx([s2, s1], abs=1e-12)


class TestSchurSkew4x4:
    def test_zero_matrix(self):
        G, s1, s2 = schur_skew_4x4(np.zeros((4, 4)))
        np.testing.assert_array_equal(G, np.eye(4))
        assert s1 == s2 == 0.0

    def test_already_in_schur_form(self):
        W = np.zeros((4, 4))
        W[1, 0], W[0, 1] = 2.0, -2.0
        W[3, 2], W[2, 3] = 0.5, -0.5
        G, s1, s2 = schur_skew_4x4(W)
        assert (s1, s2) == pytest.approx((2.0, 0.5), abs=1e-14)
        np.testing.assert_allclose(np.abs(G), np.eye(4), atol=1e-14)

    def test_rejects_non_skew(self):
        with pytest.raises(ValueError):
            schur_skew_4x4(np.eye(4))

    def test_random_skew_oracles(self, rng):
        for _ in range(200):
            W = random_skew(rng, 4)
            G, s1, s2 = schur_skew_4x4(W)
            assert s1 >= 0.0 and s2 >= 0.0
            np.testing.assert_allclose(G.T @ G, np.eye(4), atol=1e-14)
            T = G.T @ W @ G
            assert offschur(T) < 1e-13 * max(frobenius_norm(W), 1.0)
            assert T[1, 0] == pytest.approx(s1, abs=1e-13)
            assert T[3, 2] == pytest.approx(s2, abs=1e-13)
            pfaffian = abs(
                W[1, 0] * W[3, 2] - W[2, 0] * W[3, 1] + W[3, 0] * W[2, 1]
            )
            assert s1 * s2 == pytest.approx(pfaffian, abs=1e-12)
            assert s1 * s1 + s2 * s2 == pytest.approx(
                frobenius_norm(W) ** 2 / 2.0, rel=1e-12
            )

    def test_sigma_pair_conjugation_invariant(self, rng):
        for _ in range(30):
            W = random_skew(rng, 4)
            W /= frobenius_norm(W)
            U = haar_orthogonal(4, rng.integers(2**31))
            _, a1, a2 = schur_skew_4x4(W)
            _, b1, b2 = schur_skew_4x4(U.T @ W @ U)
            assert sorted([a1, a2]) == pytest.approx(sorted([b1, b2]), abs=1e-12)


class TestSchurSkew3x3:
    def test_zero_matrix(self):
        G, sigma = schur_skew_3x3(np.zeros((3, 3)))
        np.testing.assert_array_equal(G, np.eye(3))
        assert sigma == 0.0

    def test_single_entry(self):
        W = np.zeros((3, 3))
        W[1, 0], W[0, 1] = 1.0, -1.0
        G, sigma = schur_skew_3x3(W)
        assert sigma == pytest.approx(1.0, abs=1e-15)
        np.testing.assert_allclose(np.abs(G), np.eye(3), atol=1e-14)

    def test_degenerate_first_rotation(self):
        W = np.zeros((3, 3))
        W[2, 1], W[1, 2] = 0.8, -0.8
        G, sigma = schur_skew_3x3(W)
        assert sigma == pytest.approx(0.8, abs=1e-15)
        T = G.T @ W @ G
        np.testing.assert_allclose(T[2, :], 0.0, atol=1e-14)

    def test_random_norm_identity(self, rng):
        for _ in range(100):
            W = random_skew(rng, 3)
            G, sigma = schur_skew_3x3(W)
            assert sigma == pytest.approx(
                math.sqrt(frobenius_norm(W) ** 2 / 2.0), rel=1e-12
            )
            T = G.T @ W @ G
            expected = np.zeros((3, 3))
            expected[1, 0], expected[0, 1] = sigma, -sigma
            np.testing.assert_allclose(T, expected, atol=1e-13)


class TestRotationPair:
    def test_rejects_overlapping_planes(self):
        g1 = GivensRotation(1, 3, 1.0, 0.0)
        g2 = GivensRotation(2, 3, 1.0, 0.0)
        with pytest.raises(ValueError):
            RotationPair(g1, g2)


class TestPaardekooperSweep:
    def test_already_converged_is_stable(self, rng):
        A = golden_after_skew_stage()
        Q = np.eye(4)
        paardekooper_sweep(A, Q)
        assert offschur(skew_part(A)) < 1e-14

    def test_golden_one_sweep(self):
        A = golden_matrix()
        Q = np.eye(4)
        stats = paardekooper_sweep(A, Q)
        np.testing.assert_allclose(A, golden_after_skew_stage(), atol=1e-13)
        # The accumulated rotation matches the closed-form factor up to
        # column signs (the subdiagonal sign normalization is a free choice).
        np.testing.assert_allclose(
            np.abs(Q), np.abs(golden_sweep_rotation()), atol=1e-13
        )
        assert stats.final_offschur < 1e-14

    def test_offschur_decreases_on_random_skew(self, rng):
        W = random_skew(rng, 8)
        Q = np.eye(8)
        before = offschur(W)
        stats = paardekooper_sweep(W, Q, implicit=False)
        assert stats.final_offschur < before

    def test_explicit_implicit_equivalence(self, rng):
        for trial in range(5):
            A, _ = generate(EnsembleSpec(8, "exp2", seed=100 + trial))
            W = skew_part(A)
            Qi = np.eye(8)
            Qe = np.eye(8)
            paardekooper_sweep(A.copy(), Qi, implicit=True)
            paardekooper_sweep(W, Qe, implicit=False)
            np.testing.assert_allclose(Qi, Qe, atol=1e-13)

    def test_orthogonality_and_similarity(self, rng):
        A, _ = generate(EnsembleSpec(16, "exp2", seed=5))
        A0 = A.copy()
        Q = np.eye(16)
        for _ in range(4):
            paardekooper_sweep(A, Q)
            assert frobenius_norm(Q.T @ Q - np.eye(16)) < 1e-12 * 16
            err = frobenius_norm(Q.T @ A0 @ Q - A)
            assert err < 1e-11 * frobenius_norm(A0)


class TestPaardekooperUntil:
    def test_already_converged_does_zero_sweeps(self):
        A = golden_after_skew_stage()
        stats = paardekooper_until(A, np.eye(4), rho=10.0 * EPS)
        assert stats.sweeps == 0
        assert stats.converged

    def test_golden_single_sweep(self):
        A = golden_matrix()
        stats = paardekooper_until(A, np.eye(4), rho=1e-14)
        assert stats.sweeps == 1
        assert stats.converged

    def test_random_normal_converges(self):
        A, _ = generate(EnsembleSpec(64, "exp2", seed=2))
        nrm = frobenius_norm(A)
        stats = paardekooper_until(A, np.eye(64), rho=10.0 * EPS)
        assert stats.converged
        assert offschur(skew_part(A)) <= 10.0 * EPS * nrm
