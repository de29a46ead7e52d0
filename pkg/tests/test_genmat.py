import math
from collections import Counter

import numpy as np
import pytest

from normal_schur.genmat import (
    EnsembleSpec,
    fig1_matrix,
    generate,
    haar_orthogonal,
    spectrum_matrix,
)
from normal_schur.matcore import EPS, frobenius_norm
from conftest import eig_match_distance


class TestHaarOrthogonal:
    def test_orthogonality(self):
        for n in (1, 2, 5, 16):
            Q = haar_orthogonal(n, seed_or_rng=n)
            assert np.allclose(Q.T @ Q, np.eye(n), atol=1e-13)

    def test_deterministic_per_seed(self):
        A = haar_orthogonal(6, 42)
        B = haar_orthogonal(6, 42)
        C = haar_orthogonal(6, 43)
        assert np.array_equal(A, B)
        assert not np.array_equal(A, C)

    def test_n1_sign_balance(self):
        # Haar measure on O(1) is uniform on {-1, +1}.
        signs = Counter(float(haar_orthogonal(1, s)[0, 0]) for s in range(400))
        assert 120 <= signs[1.0] <= 280
        assert signs[1.0] + signs[-1.0] == 400

    def test_first_moment_vanishes(self):
        # E[Q] = 0 under Haar measure; the empirical mean shrinks like
        # 1/sqrt(samples).
        acc = np.zeros((3, 3))
        trials = 500
        for s in range(trials):
            acc += haar_orthogonal(3, s)
        assert np.abs(acc / trials).max() <= 5.0 / math.sqrt(trials)


class TestEnsembles:
    def test_exp1_unimodular_spectrum(self):
        A, truth = generate(EnsembleSpec(12, "exp1", seed=0))
        for lam, _ in truth.spectrum.complex_pairs:
            assert lam == 1.0
        eigs = np.linalg.eigvals(A)
        assert np.allclose(np.abs(eigs), 1.0, atol=1e-12)

    def test_even_only_classes_reject_odd_n(self):
        for cls in ("exp1", "exp2", "exp4", "exp5"):
            with pytest.raises(ValueError):
                generate(EnsembleSpec(7, cls, seed=0))

    def test_exp3_has_real_eigenvalues(self):
        _, truth = generate(EnsembleSpec(20, "exp3", seed=1))
        assert len(truth.spectrum.reals) > 0

    def test_exp4_repeated_sigma_group(self):
        _, truth = generate(EnsembleSpec(12, "exp4", seed=5))
        sigmas = [lam * math.sin(t) for lam, t in truth.spectrum.complex_pairs]
        counts = Counter(round(s, 9) for s in sigmas)
        assert max(counts.values()) >= 2

    def test_exp5_phases_are_tight(self):
        _, truth = generate(EnsembleSpec(16, "exp5", seed=2))
        for _, theta in truth.spectrum.complex_pairs:
            assert theta <= 100.0 * math.pi * math.sqrt(EPS)

    def test_alpha_composition(self):
        # alpha1 = fraction of real eigenvalues, alpha2 = fraction in
        # repeated-imaginary-part pairs; n=20, 0.3/0.3 gives 6 reals and
        # at least one repeated group covering 6 indices (3 pairs).
        _, truth = generate(EnsembleSpec(20, "alpha", alpha1=0.3, alpha2=0.3,
                                         seed=3))
        spec = truth.spectrum
        assert len(spec.reals) == 6
        assert 2 * len(spec.complex_pairs) + len(spec.reals) == 20
        sigmas = [round(lam * math.sin(t), 9) for lam, t in spec.complex_pairs]
        counts = Counter(sigmas)
        assert max(counts.values()) >= 3

    def test_generated_matrices_are_normal(self):
        for cls in ("exp1", "exp2", "exp3", "exp4", "exp5"):
            A, _ = generate(EnsembleSpec(14, cls, seed=7))
            comm = A @ A.T - A.T @ A
            assert frobenius_norm(comm) <= 1e-12 * frobenius_norm(A) ** 2

    def test_truth_reconstructs_matrix(self):
        for cls in ("exp2", "exp3"):
            A, truth = generate(EnsembleSpec(10, cls, seed=4))
            S = spectrum_matrix(truth.spectrum)
            assert np.allclose(truth.Q_true @ S @ truth.Q_true.T, A,
                               atol=1e-13 * max(frobenius_norm(A), 1.0))

    def test_truth_eigenvalues_match(self):
        A, truth = generate(EnsembleSpec(12, "exp2", seed=6))
        got = np.linalg.eigvals(A)
        expected = np.array(truth.spectrum.eigenvalues())
        assert eig_match_distance(got, expected) <= 1e-12 * frobenius_norm(A)

    def test_seed_determinism(self):
        A, _ = generate(EnsembleSpec(10, "exp2", seed=9))
        B, _ = generate(EnsembleSpec(10, "exp2", seed=9))
        assert np.array_equal(A, B)


class TestFig1Matrix:
    def test_composition(self):
        A, truth = fig1_matrix(seed=0)
        assert A.shape == (26, 26)
        spec = truth.spectrum
        assert len(spec.complex_pairs) == 10
        assert len(spec.reals) == 6
        sigmas = [round(lam * math.sin(t), 6) for lam, t in spec.complex_pairs]
        counts = Counter(sigmas)
        assert max(counts.values()) >= 3  # repeated-sigma trio

    def test_normal_and_deterministic(self):
        A, _ = fig1_matrix(seed=0)
        B, _ = fig1_matrix(seed=0)
        assert np.array_equal(A, B)
        comm = A @ A.T - A.T @ A
        assert frobenius_norm(comm) <= 1e-11 * frobenius_norm(A) ** 2
