"""Shared fixtures and oracles for the test suite."""
import math

import numpy as np
import pytest

SQ2 = math.sqrt(2.0)
SQ3 = math.sqrt(3.0)
SQ6 = math.sqrt(6.0)


def golden_matrix() -> np.ndarray:
    """4x4 normal matrix with eigenvalues {2, -2, 1 +- i sqrt(3)}."""
    return np.array(
        [
            [1.0, 1.0, 1.0, -1.0],
            [1.0, 1.0, -1.0, 1.0],
            [1.0, -1.0, -1.0, -1.0],
            [1.0, -1.0, 1.0, 1.0],
        ]
    )


def golden_after_skew_stage() -> np.ndarray:
    """The golden matrix after one skew-stage sweep: two decoupled blocks."""
    return np.array(
        [
            [1.0, -SQ3, 0.0, 0.0],
            [SQ3, 1.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, SQ3],
            [0.0, 0.0, SQ3, 1.0],
        ]
    )


def golden_sweep_rotation() -> np.ndarray:
    """The orthogonal factor of the golden one-sweep reduction."""
    m1 = np.array(
        [
            [-SQ2 / 2, 0.0, SQ2 / 2, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [-SQ2 / 2, 0.0, -SQ2 / 2, 0.0],
            [0.0, -1.0, 0.0, 0.0],
        ]
    )
    m2 = np.array(
        [
            [SQ6 / 3, 0.0, 0.0, -SQ3 / 3],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [SQ3 / 3, 0.0, 0.0, SQ6 / 3],
        ]
    )
    return m1 @ m2


def golden_eigenvalues() -> np.ndarray:
    return np.array(
        [2.0, -2.0, complex(1.0, SQ3), complex(1.0, -SQ3)], dtype=complex
    )


def eig_match_distance(got, expected) -> float:
    """Greedy optimal-matching distance between two eigenvalue multisets."""
    got = sorted(np.asarray(got, dtype=complex), key=lambda z: (z.real, z.imag))
    expected = sorted(
        np.asarray(expected, dtype=complex), key=lambda z: (z.real, z.imag)
    )
    assert len(got) == len(expected)
    remaining = list(expected)
    worst = 0.0
    for z in got:
        k = min(range(len(remaining)), key=lambda i: abs(remaining[i] - z))
        worst = max(worst, abs(remaining.pop(k) - z))
    return worst


def random_skew(rng: np.random.Generator, n: int) -> np.ndarray:
    Z = rng.standard_normal((n, n))
    return 0.5 * (Z - Z.T)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
