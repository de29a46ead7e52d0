"""End-to-end pipeline for the real Schur decomposition of normal matrices.

The decomposition runs in three stages: an implicit skew-symmetric Jacobi
stage that block-diagonalizes the skew part, a clustered structured stage
dispatching each unresolved diagonal block to a symmetric skew-Hamiltonian,
symmetric, or general 4x4-Schur sub-solver, and a final refinement stage
that polishes offschur(A) down to the requested tolerance.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .clustering import build_adjacency, connected_components
from .generic_jacobi import zhou_brent
from .matcore import (
    EPS,
    as_square_matrix,
    frobenius_norm,
    offschur,
    skew_part,
    sym_part,
)
from .skewschur import paardekooper_until
from .structured import sskh_jacobi, sskh_noise, symmetric_jacobi

__all__ = [
    "Config",
    "StepRecord",
    "Spectrum",
    "SchurResult",
    "PerturbationReport",
    "decompose",
    "extract_spectrum",
    "perturbation_factors",
]


@dataclass
class Config:
    rho: float = 10.0 * EPS
    max_sweeps: int = 30
    seed: int = 0
    normality_check_tolerance: float = 1e-8

    def __post_init__(self):
        if self.rho <= 0:
            raise ValueError("rho must be positive")


@dataclass
class StepRecord:
    step: str  # "I.1" | "II.1" | "II.2" | "II.3" | "III"
    cluster: tuple | None
    sweeps: int
    initial: float
    final: float
    converged: bool
    structure_gap: float | None = None


@dataclass
class Spectrum:
    """Complex pairs as (radius, phase) for lambda * e^{+-i theta}, plus the
    real eigenvalues. ``sigma_groups`` lists index sets of complex pairs
    whose imaginary parts are numerically repeated."""

    complex_pairs: list  # [(lam, theta)], theta in (0, pi)
    reals: list
    sigma_groups: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return 2 * len(self.complex_pairs) + len(self.reals)

    def eigenvalues(self) -> np.ndarray:
        vals = []
        for lam, theta in self.complex_pairs:
            z = lam * complex(math.cos(theta), math.sin(theta))
            vals.extend([z, z.conjugate()])
        vals.extend(complex(x, 0.0) for x in self.reals)
        return np.array(vals)


@dataclass
class SchurResult:
    S: np.ndarray
    Q: np.ndarray
    spectrum: Spectrum
    step_log: list
    residuals: dict
    converged: bool


@dataclass
class PerturbationReport:
    amplification_distinct: float | None
    amplification_repeated: float | None
    amplification_real: float | None
    measured_structure_gaps: list = field(default_factory=list)


def _pad_odd(A: np.ndarray):
    n = A.shape[0]
    if n % 2 == 0:
        return A.copy(), False
    P = np.zeros((n + 1, n + 1))
    P[:n, :n] = A
    return P, True


def _strip_padding(S: np.ndarray, Q: np.ndarray, rho: float):
    """Remove the synthetic zero eigenvalue introduced by odd-n padding.

    The padded coordinate is the last row of Q; the corresponding Schur
    column is the 1x1 block whose Q-weight on that coordinate is largest.
    """
    n_pad = S.shape[0]
    nrm = max(frobenius_norm(S), 1.0)
    tol = max(rho * nrm, 1e-12 * nrm)
    candidates = [
        kk
        for k in range(0, n_pad, 2)
        if abs(S[k + 1, k]) <= tol
        for kk in (k, k + 1)
    ]
    k = max(candidates, key=lambda c: abs(Q[n_pad - 1, c]))
    pair = k - 1 if k % 2 else k + 1
    if k % 2 == 0:
        # Move the synthetic eigenvalue to the odd slot of its pair.
        S[[k, pair], :] = S[[pair, k], :]
        S[:, [k, pair]] = S[:, [pair, k]]
        Q[:, [k, pair]] = Q[:, [pair, k]]
        k = pair
    last = n_pad - 1
    if k != last:
        # Swap whole anchor pairs to keep 2x2 blocks aligned.
        p = k - 1
        q = last - 1
        order = list(range(n_pad))
        order[p], order[p + 1], order[q], order[q + 1] = q, q + 1, p, p + 1
        S[:, :] = S[np.ix_(order, order)]
        Q[:, :] = Q[:, order]
    return S[: n_pad - 1, : n_pad - 1].copy(), Q[: n_pad - 1, : n_pad - 1].copy()


def _sign_pass(S: np.ndarray, Q: np.ndarray) -> None:
    """Enforce a nonnegative first subdiagonal on the Schur form."""
    n = S.shape[0]
    for k in range(0, n - 1, 2):
        if S[k + 1, k] < 0.0:
            S[k + 1, :] *= -1.0
            S[:, k + 1] *= -1.0
            Q[:, k + 1] *= -1.0


def decompose(A: np.ndarray, cfg: Config | None = None) -> SchurResult:
    """Compute A = Q S Q^T with offschur(S) <= rho * ||A||_F."""
    cfg = cfg or Config()
    A = as_square_matrix(A)
    n_orig = A.shape[0]
    norm_orig = frobenius_norm(A)
    if norm_orig > 0:
        comm = frobenius_norm(A.T @ A - A @ A.T)
        if comm > cfg.normality_check_tolerance * norm_orig**2:
            warnings.warn(
                "input is not normal within tolerance "
                f"({comm / norm_orig**2:.2e}); results may not converge",
                stacklevel=2,
            )
    A_in = A.copy()
    S, padded = _pad_odd(A)
    n = S.shape[0]
    Q = np.eye(n)
    rho = cfg.rho
    norm_a = frobenius_norm(S)
    step_log: list = []

    if norm_a == 0.0:
        spectrum = extract_spectrum(np.zeros((n_orig, n_orig)), rho)
        return SchurResult(
            np.zeros((n_orig, n_orig)),
            np.eye(n_orig),
            spectrum,
            step_log,
            {
                "offschur_ratio": 0.0,
                "ortho_residual": 0.0,
                "reconstruction_residual": 0.0,
            },
            True,
        )

    # Stage one: implicit skew-symmetric sweeps.
    if n >= 4:
        stats = paardekooper_until(
            S, Q, rho, max_sweeps=cfg.max_sweeps, norm_a=norm_a
        )
        step_log.append(
            StepRecord(
                "I.1",
                None,
                stats.sweeps,
                stats.initial_offschur,
                stats.final_offschur,
                stats.converged,
            )
        )

    # Stage two: cluster detection and structured sub-solvers.
    if n >= 4:
        adj = build_adjacency(S, rho)
        clusters = connected_components(adj).clusters
    else:
        clusters = [tuple(range(n))]
    gate = math.sqrt(rho * norm_a)
    for l in clusters:
        ll = list(l)
        sub = np.ix_(ll, ll)
        block = S[sub]
        if len(ll) >= 4:
            structure_gap = sskh_noise(block)
            if structure_gap < gate:
                stats = sskh_jacobi(
                    S, Q, ll, rho, max_sweeps=cfg.max_sweeps, norm_a=norm_a
                )
                step_log.append(
                    StepRecord(
                        "II.1",
                        l,
                        stats.sweeps,
                        stats.initial_offschur,
                        stats.final_offschur,
                        stats.converged,
                        structure_gap,
                    )
                )
                continue
        skew_gap = frobenius_norm(skew_part(block))
        if skew_gap < gate:
            stats = symmetric_jacobi(
                S, Q, ll, rho, max_sweeps=cfg.max_sweeps, norm_a=norm_a
            )
            step_log.append(
                StepRecord(
                    "II.2",
                    l,
                    stats.sweeps,
                    stats.initial_offschur,
                    stats.final_offschur,
                    stats.converged,
                    skew_gap,
                )
            )
        elif len(ll) >= 4:
            stats = zhou_brent(
                S,
                Q,
                ll,
                math.sqrt(rho),
                max_sweeps=5 * len(ll),
                norm_a=norm_a,
                break_on_increase=True,
            )
            step_log.append(
                StepRecord(
                    "II.3",
                    l,
                    stats.sweeps,
                    stats.initial_offschur,
                    stats.final_offschur,
                    stats.converged,
                )
            )
        # A lone pair failing both gates is an already-resolved complex
        # 2x2 block; nothing to do.

    # Stage three: refinement on the full index set.
    converged = True
    if offschur(S) > rho * norm_a:
        if n >= 4:
            stats = zhou_brent(
                S,
                Q,
                list(range(n)),
                rho,
                max_sweeps=cfg.max_sweeps,
                norm_a=norm_a,
                break_on_stall=True,
            )
            step_log.append(
                StepRecord(
                    "III",
                    None,
                    stats.sweeps,
                    stats.initial_offschur,
                    stats.final_offschur,
                    stats.converged,
                )
            )
            converged = stats.converged
        else:
            converged = False

    _sign_pass(S, Q)
    if padded:
        S, Q = _strip_padding(S, Q, rho)
        _sign_pass(S, Q)

    spectrum = extract_spectrum(S, rho)
    residuals = {
        "offschur_ratio": offschur(S) / norm_orig if norm_orig else 0.0,
        "ortho_residual": frobenius_norm(Q.T @ Q - np.eye(n_orig)),
        "reconstruction_residual": (
            frobenius_norm(A_in - Q @ S @ Q.T) / norm_orig if norm_orig else 0.0
        ),
    }
    return SchurResult(S, Q, spectrum, step_log, residuals, converged)


def extract_spectrum(S: np.ndarray, rho: float) -> Spectrum:
    """Read eigenvalues off a (near-)Schur-form matrix.

    Subdiagonal entries above rho * ||S||_F start 2x2 blocks encoding
    lambda * e^{+-i theta}; everything else is a real eigenvalue. Complex
    pairs with numerically equal imaginary parts are grouped.
    """
    S = as_square_matrix(S, "S")
    n = S.shape[0]
    nrm = frobenius_norm(S)
    threshold = rho * nrm
    pairs = []
    reals = []
    warns = []
    i = 0
    while i < n:
        if i + 1 < n and abs(S[i + 1, i]) > threshold:
            a = 0.5 * (S[i, i] + S[i + 1, i + 1])
            b = 0.5 * (S[i + 1, i] - S[i, i + 1])
            deviation = math.hypot(
                S[i, i] - S[i + 1, i + 1], S[i, i + 1] + S[i + 1, i]
            )
            if deviation > 10.0 * rho * nrm:
                warns.append(
                    f"block at index {i}: deviates from normal form by "
                    f"{deviation:.3e}"
                )
            lam = math.hypot(a, b)
            theta = math.atan2(abs(b), a)
            pairs.append((lam, theta))
            i += 2
        else:
            reals.append(float(S[i, i]))
            i += 1
    group_tol = math.sqrt(rho) * nrm
    groups = []
    used = set()
    imag = [lam * math.sin(theta) for lam, theta in pairs]
    for a_idx in range(len(pairs)):
        if a_idx in used:
            continue
        group = [a_idx]
        for b_idx in range(a_idx + 1, len(pairs)):
            if b_idx not in used and abs(imag[a_idx] - imag[b_idx]) <= group_tol:
                group.append(b_idx)
        if len(group) > 1:
            used.update(group)
            groups.append(group)
    return Spectrum(pairs, reals, groups, warns)


def perturbation_factors(spec: Spectrum) -> PerturbationReport:
    """Error-amplification factors implied by the eigenvalue layout.

    Each factor is 1 plus a worst-case ratio of real-part spread over
    imaginary-part separation; a vanishing separation yields +inf, an empty
    index set yields None.
    """
    pairs = spec.complex_pairs
    x = [lam * math.cos(t) for lam, t in pairs]
    y = [lam * math.sin(t) for lam, t in pairs]
    p = len(pairs)

    distinct = None
    if p >= 2:
        worst = 0.0
        for i_ in range(p):
            for j_ in range(p):
                if i_ == j_:
                    continue
                dy = abs(y[i_] - y[j_])
                dx = abs(x[i_] - x[j_])
                worst = max(worst, dx / dy if dy > 0 else math.inf)
        distinct = 1.0 + worst

    repeated = None
    if spec.sigma_groups:
        worst = 0.0
        for group in spec.sigma_groups:
            inside = set(group)
            outside = [k for k in range(p) if k not in inside]
            sigma = float(np.mean([y[k] for k in group]))
            cross = 0.0
            if outside:
                num = max(
                    abs(x[i_] - x[j_]) for i_ in outside for j_ in group
                )
                den = min(abs(y[i_] - sigma) for i_ in outside)
                cross = num / den if den > 0 else math.inf
            spread = max(
                abs(x[j1] - x[j2]) for j1 in group for j2 in group
            )
            within = spread / sigma if sigma > 0 else (math.inf if spread else 0.0)
            worst = max(worst, 1.0 + cross + within)
        repeated = worst

    real_factor = None
    if spec.reals and p >= 1:
        num = max(abs(xj - lr) for xj in x for lr in spec.reals)
        den = min(abs(yj) for yj in y)
        real_factor = 1.0 + (num / den if den > 0 else math.inf)

    return PerturbationReport(distinct, repeated, real_factor)
