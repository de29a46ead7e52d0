"""Nearest-structured-matrix computations for the ortho-symplectic group.

OSp(2m) — orthogonal matrices commuting with J = J_2 (x) I_m — is identified
with U(m). The nearest ortho-symplectic matrix to A is the realification of
the polar factor of B = (A11+A22)/2 + i(A21-A12)/2, and the distance obeys
a closed-form identity plus two computable upper bounds.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import as_square_matrix, frobenius_norm

__all__ = [
    "PolarResult",
    "j_matrix",
    "complex_polar",
    "nearest_ortho_symplectic",
    "osp_distance_bound",
]


@dataclass
class PolarResult:
    unitary_factor: np.ndarray
    hermitian_norm_gap: float  # ||Sigma - I||_F
    unique: bool


def j_matrix(m: int) -> np.ndarray:
    """J = J_2 (x) I_m, the complex structure in grouped block convention."""
    J2 = np.array([[0.0, -1.0], [1.0, 0.0]])
    return np.kron(J2, np.eye(m))


def complex_polar(B: np.ndarray) -> PolarResult:
    """Unitary polar factor of a complex square matrix.

    Uses the scaled Newton iteration X <- (X + X^{-*})/2, falling back to an
    SVD when B is (nearly) singular. The reported gap ||Sigma - I||_F is
    recovered from H = (UV*)^* B, whose eigenvalues are the singular values.
    """
    B = np.asarray(B, dtype=complex)
    m = B.shape[0]
    if B.ndim != 2 or B.shape[1] != m:
        raise ValueError("expected a square matrix")
    if not np.isfinite(B).all():
        raise ValueError("non-finite entries")
    smin = np.linalg.svd(B, compute_uv=False)[-1] if m else 0.0
    nrm = np.linalg.norm(B)
    unique = bool(smin > 1e-13 * max(nrm, 1.0))
    if not unique or smin < 1e-8 * max(nrm, 1.0):
        U, _, Vh = np.linalg.svd(B)
        W = U @ Vh
    else:
        X = B.copy()
        for _ in range(40):
            Xinv = np.linalg.inv(X)
            # Frobenius scaling accelerates the initial phase.
            gamma = np.sqrt(np.linalg.norm(Xinv) / np.linalg.norm(X))
            Xn = 0.5 * (gamma * X + Xinv.conj().T / gamma)
            delta = np.linalg.norm(Xn - X)
            X = Xn
            if delta <= 1e-14 * np.linalg.norm(X):
                break
        W = X
    H = W.conj().T @ B
    gap = float(np.linalg.norm(0.5 * (H + H.conj().T) - np.eye(m)))
    return PolarResult(W, gap, unique)


def nearest_ortho_symplectic(A: np.ndarray):
    """Nearest matrix in OSp(2m) and the distance to it.

    Returns (R_star, distance) with distance^2 = 2||Sigma - I||_F^2
    + (1/4) ||AJ - JA||_F^2.
    """
    A = as_square_matrix(A)
    n = A.shape[0]
    if n % 2:
        raise ValueError("OSp projection needs even dimension")
    m = n // 2
    A11, A12 = A[:m, :m], A[:m, m:]
    A21, A22 = A[m:, :m], A[m:, m:]
    B = 0.5 * (A11 + A22) + 0.5j * (A21 - A12)
    polar = complex_polar(B)
    Ur, Ui = polar.unitary_factor.real, polar.unitary_factor.imag
    R_star = np.block([[Ur, -Ui], [Ui, Ur]])
    J = j_matrix(m)
    comm = frobenius_norm(A @ J - J @ A)
    dist_sq = 2.0 * polar.hermitian_norm_gap**2 + 0.25 * comm**2
    return R_star, float(np.sqrt(max(dist_sq, 0.0)))


def osp_distance_bound(A: np.ndarray):
    """Computable upper bounds on the distance from A to OSp(2m).

    Returns (squared_bound, linear_bound):
      squared_bound >= distance^2 = (1/4)(||A^T A - I|| + ||A^T J A - J||)^2
                        + (1/4)||AJ - JA||^2,
      linear_bound  >= distance  = (1/2)(||A^T A - I|| + ||A^T J A - J||
                        + ||AJ - JA||).
    """
    A = as_square_matrix(A)
    n = A.shape[0]
    if n % 2:
        raise ValueError("OSp bound needs even dimension")
    J = j_matrix(n // 2)
    I = np.eye(n)
    g1 = frobenius_norm(A.T @ A - I)
    g2 = frobenius_norm(A.T @ J @ A - J)
    g3 = frobenius_norm(A @ J - J @ A)
    squared = 0.25 * (g1 + g2) ** 2 + 0.25 * g3**2
    linear = 0.5 * (g1 + g2 + g3)
    return float(squared), float(linear)
