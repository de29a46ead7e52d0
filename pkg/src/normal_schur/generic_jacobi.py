"""Comparator and refinement solvers built on a 4x4 real Schur kernel.

``zhou_brent`` is the classical Jacobi-like iteration for normal matrices:
cyclic 4x4 pivots are conjugated by the Schur vectors of the pivot block.
``randdiag_jacobi`` is an implicit Hermitian Jacobi on a random complex
combination of the symmetric and skew parts of A.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .matcore import EPS, as_square_matrix, frobenius_norm, offdiag, offschur
from .skewschur import SweepStats

__all__ = ["Schur4Result", "real_schur_4x4", "zhou_brent", "randdiag_jacobi"]


@dataclass
class Schur4Result:
    R: np.ndarray
    T: np.ndarray


def real_schur_4x4(M: np.ndarray) -> Schur4Result:
    """Real Schur form R^T M R = T of an arbitrary 4x4 real matrix.

    Complex-conjugate eigenvalue pairs are ordered before real eigenvalues,
    which guarantees T[3,2] = 0 (1-based): 2x2 blocks are always anchored at
    odd positions. 2x2 blocks of normal inputs are rotated to the normal
    form [[a,-b],[b,a]] with b >= 0.
    """
    M = as_square_matrix(M, "M")
    if M.shape[0] != 4:
        raise ValueError("expected a 4x4 matrix")
    T, Z, _ = scipy.linalg.schur(
        M, output="real", sort=lambda re, im: im != 0.0
    )
    T = T.copy()
    nrm = max(frobenius_norm(M), 1.0)
    tol = 1e-12 * nrm
    k = 0
    while k < 3:
        if abs(T[k + 1, k]) > tol:
            # Rotate the 2x2 block toward the normal form [[a,-b],[b,a]]:
            # diagonalize the symmetric part of the block.
            h11, h22 = T[k, k], T[k + 1, k + 1]
            h12 = 0.5 * (T[k, k + 1] + T[k + 1, k])
            if abs(h12) > 1e-15 * nrm or abs(h11 - h22) > 1e-15 * nrm:
                theta = 0.5 * math.atan2(2.0 * h12, h11 - h22)
                # Rotate by theta so the symmetric part becomes scalar;
                # only valid when the block is normal, otherwise it merely
                # symmetrizes without breaking triangularity elsewhere.
                c, s = math.cos(theta), math.sin(theta)
                G = np.array([[c, -s], [s, c]])
                sym = np.array([[h11, h12], [h12, h22]])
                D = G.T @ sym @ G
                if abs(D[0, 1]) < abs(h12):
                    idx = [k, k + 1]
                    T[idx, :] = G.T @ T[idx, :]
                    T[:, idx] = T[:, idx] @ G
                    Z[:, idx] = Z[:, idx] @ G
            if T[k + 1, k] < 0.0:
                T[k + 1, :] *= -1.0
                T[:, k + 1] *= -1.0
                Z[:, k + 1] *= -1.0
            k += 2
        else:
            T[k + 1, k] = 0.0
            k += 1
    _sort_trailing_reals(T, Z, tol)
    return Schur4Result(Z, T)


def _swap_adjacent_reals(T: np.ndarray, Z: np.ndarray, k: int) -> None:
    """Exchange the 1x1 Schur blocks at positions k and k+1 in place."""
    a, b, c = T[k, k], T[k + 1, k + 1], T[k, k + 1]
    # Rotate the eigenvector of [[a,c],[0,b]] for eigenvalue b into e1.
    r = math.hypot(c, b - a)
    if r == 0.0:
        return
    cs, sn = c / r, (b - a) / r
    G = np.array([[cs, -sn], [sn, cs]])
    idx = [k, k + 1]
    T[idx, :] = G.T @ T[idx, :]
    T[:, idx] = T[:, idx] @ G
    Z[:, idx] = Z[:, idx] @ G
    T[k + 1, k] = 0.0


def _sort_trailing_reals(T: np.ndarray, Z: np.ndarray, tol: float) -> None:
    """Bubble-sort the trailing real (1x1) Schur blocks ascending.

    A deterministic eigenvalue order keeps repeated pivot visits from
    shuffling eigenvalues between slots, which would reintroduce coupling
    elsewhere and stall the surrounding Jacobi iteration.
    """
    start = 0
    while start < 3 and abs(T[start + 1, start]) > tol:
        start += 2
    reals = list(range(start, 4))
    for _ in range(len(reals) - 1):
        for k in reals[:-1]:
            if T[k, k] > T[k + 1, k + 1]:
                _swap_adjacent_reals(T, Z, k)


def _pivot_offschur(M4: np.ndarray) -> float:
    """Frobenius mass of the 8 entries outside the two 2x2 anchor blocks."""
    return math.sqrt(
        float(np.sum(M4[2:, :2] ** 2)) + float(np.sum(M4[:2, 2:] ** 2))
    )


def zhou_brent(
    A: np.ndarray,
    Q: np.ndarray,
    l: list,
    rho: float,
    max_sweeps: int = 30,
    norm_a: float | None = None,
    break_on_increase: bool = False,
    break_on_stall: bool = False,
) -> SweepStats:
    """Cyclic 4x4 real-Schur conjugations on the cluster ``l`` (in place).

    Stops when offschur(A_ll) <= rho * ||A||_F, on sweep exhaustion, or on
    the optional early-break conditions: ``break_on_increase`` aborts when a
    sweep increases offschur(A); ``break_on_stall`` aborts when a sweep
    fails to decrease it.
    """
    l = list(l)
    if len(l) < 4 or len(l) % 2:
        raise ValueError("cluster must contain at least two index pairs")
    if norm_a is None:
        norm_a = frobenius_norm(A)
    target = rho * norm_a
    r = len(l)
    npiv = max((r // 2) * (r // 2 - 1) // 2, 1)
    skip_tol = target / (2.0 * math.sqrt(npiv))
    sub = np.ix_(l, l)
    initial = offschur(A[sub])
    current = initial
    sweeps = 0
    while current > target and sweeps < max_sweeps:
        previous_full = offschur(A) if break_on_increase else None
        previous = current
        for i in range(0, r - 3, 2):
            for j in range(i + 2, r - 1, 2):
                ll = [l[i], l[i + 1], l[j], l[j + 1]]
                M4 = A[np.ix_(ll, ll)]
                # A pivot whose off-block mass is already at the rounding
                # floor of its own entries cannot be improved; skipping it
                # keeps polish sweeps cheap once the matrix is converged.
                floor = 4.0 * EPS * math.sqrt(float(np.sum(M4 * M4)))
                if _pivot_offschur(M4) <= max(skip_tol, floor):
                    continue
                res = real_schur_4x4(M4)
                R, T = res.R, res.T
                # Keep eigenvalues close to their incoming diagonal slots:
                # relocating them churns overlapping pivots and destroys
                # the quadratic phase on matrices with eigenvalue clusters.
                d1 = 0.5 * (M4[0, 0] + M4[1, 1])
                d2 = 0.5 * (M4[2, 2] + M4[3, 3])
                t1 = 0.5 * (T[0, 0] + T[1, 1])
                t2 = 0.5 * (T[2, 2] + T[3, 3])
                if abs(t1 - d1) + abs(t2 - d2) > abs(t2 - d1) + abs(t1 - d2):
                    R = R[:, [2, 3, 0, 1]]
                A[ll, :] = R.T @ A[ll, :]
                A[:, ll] = A[:, ll] @ R
                Q[:, ll] = Q[:, ll] @ R
        current = offschur(A[sub])
        sweeps += 1
        if break_on_increase and offschur(A) > previous_full:
            break
        if break_on_stall and (
            current >= previous
            or (current >= 0.95 * previous and current <= 1e-12 * norm_a)
        ):
            break
    return SweepStats(sweeps, initial, current, current <= target)


def _hermitian_combination(Ac: np.ndarray, mu1: float, mu2: float) -> np.ndarray:
    return 0.5 * mu1 * (Ac + Ac.conj().T) + 0.5j * mu2 * (Ac - Ac.conj().T)


def randdiag_jacobi(
    A: np.ndarray,
    Q: np.ndarray,
    rho: float,
    seed: int = 0,
    max_sweeps: int = 30,
) -> tuple[SweepStats, np.ndarray, np.ndarray]:
    """Implicit Jacobi diagonalization through a random Hermitian combination.

    Draws mu1, mu2 ~ N(0,1) and runs Hermitian Jacobi on
    H = (mu1/2)(A + A*) + i(mu2/2)(A - A*), applying the complex rotations
    to a complex working copy of A. A and Q themselves are not modified;
    the transformed complex matrix and accumulator are returned so callers
    can measure how well the random combination diagonalized A.
    """
    A = as_square_matrix(A)
    n = A.shape[0]
    rng = np.random.default_rng(seed)
    mu1, mu2 = rng.standard_normal(2)
    norm_a = frobenius_norm(A)
    target = rho * norm_a
    Ac = A.astype(complex)
    Qc = Q.astype(complex).copy()
    H = _hermitian_combination(Ac, mu1, mu2)
    initial = offdiag(H)
    current = initial
    sweeps = 0
    while current > target and sweeps < max_sweeps:
        previous = current
        for i in range(n - 1):
            for j in range(i + 1, n):
                h11 = mu1 * Ac[i, i].real - mu2 * Ac[i, i].imag
                h22 = mu1 * Ac[j, j].real - mu2 * Ac[j, j].imag
                h12 = 0.5 * mu1 * (Ac[i, j] + np.conj(Ac[j, i])) + 0.5j * mu2 * (
                    Ac[i, j] - np.conj(Ac[j, i])
                )
                r = abs(h12)
                if r <= 1e-18 * norm_a:
                    continue
                phi = np.angle(h12)
                theta = 0.5 * math.atan2(2.0 * r, h11 - h22)
                c, s = math.cos(theta), math.sin(theta)
                G = np.array(
                    [
                        [c, -s * np.exp(1j * phi)],
                        [s * np.exp(-1j * phi), c],
                    ]
                )
                ll = [i, j]
                Ac[ll, :] = G.conj().T @ Ac[ll, :]
                Ac[:, ll] = Ac[:, ll] @ G
                Qc[:, ll] = Qc[:, ll] @ G
        current = offdiag(_hermitian_combination(Ac, mu1, mu2))
        sweeps += 1
        if current >= previous:
            break
    stats = SweepStats(sweeps, initial, current, current <= target)
    return stats, Ac, Qc
