"""Random normal test matrices with retained ground-truth spectra.

Every generator assembles A = Q S Q^T from a Haar-random orthogonal Q and a
block-diagonal S built from the class's eigenvalue draws, so the exact
spectrum and Schur vectors are available as oracles. Randomness comes from
a counter-based (Philox) bit generator for reproducible streams.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .driver import Spectrum
from .matcore import EPS

__all__ = [
    "EnsembleSpec",
    "GroundTruth",
    "haar_orthogonal",
    "spectrum_matrix",
    "generate",
    "fig1_matrix",
    "CLASSES",
]

CLASSES = ("exp1", "exp2", "exp3", "exp4", "exp5", "alpha")


@dataclass(frozen=True)
class EnsembleSpec:
    n: int
    cls: str
    alpha1: float = 0.0
    alpha2: float = 0.0
    seed: int = 0
    sigma_groups: int = 1  # number of repeated-imaginary-part groups (exp4)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.cls not in CLASSES:
            raise ValueError(f"unknown class {self.cls!r}")
        if not (
            0.0 <= self.alpha1 <= 1.0
            and 0.0 <= self.alpha2 <= 1.0
            and self.alpha1 + self.alpha2 <= 1.0
        ):
            raise ValueError("invalid eigenvalue proportions")


@dataclass
class GroundTruth:
    spectrum: Spectrum
    Q_true: np.ndarray
    notes: dict = field(default_factory=dict)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def haar_orthogonal(n: int, seed_or_rng) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR of a Gaussian, sign-fixed)."""
    rng = seed_or_rng if isinstance(seed_or_rng, np.random.Generator) else _rng(
        seed_or_rng
    )
    Z = rng.standard_normal((n, n))
    Qm, R = np.linalg.qr(Z)
    d = np.sign(np.diag(R))
    d[d == 0.0] = 1.0
    return Qm * d


def spectrum_matrix(spec: Spectrum) -> np.ndarray:
    """Block-diagonal Schur form realizing the given spectrum."""
    n = spec.size
    S = np.zeros((n, n))
    k = 0
    for lam, theta in spec.complex_pairs:
        a, b = lam * math.cos(theta), lam * math.sin(theta)
        S[k, k] = S[k + 1, k + 1] = a
        S[k + 1, k] = b
        S[k, k + 1] = -b
        k += 2
    for x in spec.reals:
        S[k, k] = x
        k += 1
    return S


def _draw_pairs(rng, count, radii="uniform", phases="uniform"):
    """(radius, phase) draws with phases folded into (0, pi)."""
    pairs = []
    for _ in range(count):
        if radii == "unit":
            lam = 1.0
        else:
            lam = max(rng.uniform(0.0, 2.0), 1e-6)
        if phases == "uniform":
            theta = rng.uniform(0.0, 2.0 * math.pi)
        else:  # tight: clustered near zero at the sqrt(eps) scale
            theta = math.pi * math.sqrt(EPS) * rng.normal(1.0, 1.0)
        theta = abs(math.remainder(theta, 2.0 * math.pi))
        theta = min(max(theta, 1e-12), math.pi - 1e-12)
        pairs.append((lam, theta))
    return pairs


def _make(spec_obj: Spectrum, Qm: np.ndarray, notes=None):
    A = Qm @ spectrum_matrix(spec_obj) @ Qm.T
    return A, GroundTruth(spec_obj, Qm, notes or {})


def generate(spec: EnsembleSpec):
    """Normal matrix plus ground truth for one ensemble draw."""
    rng = _rng(spec.seed)
    n = spec.n
    Qm = haar_orthogonal(n, rng)
    notes = {"class": spec.cls, "seed": spec.seed}

    if spec.cls == "exp1":
        if n % 2:
            raise ValueError("exp1 needs even n (no real eigenvalues)")
        pairs = _draw_pairs(rng, n // 2, radii="unit")
        return _make(Spectrum(pairs, []), Qm, notes)

    if spec.cls == "exp2":
        if n % 2:
            raise ValueError("exp2 needs even n (no real eigenvalues)")
        pairs = _draw_pairs(rng, n // 2)
        return _make(Spectrum(pairs, []), Qm, notes)

    if spec.cls == "exp3":
        n_real = int(round(0.3 * n))
        n_real -= (n - n_real) % 2
        reals = [rng.normal() for _ in range(n_real)]
        pairs = _draw_pairs(rng, (n - n_real) // 2)
        notes["n_real"] = n_real
        return _make(Spectrum(pairs, reals), Qm, notes)

    if spec.cls == "exp4":
        n_rep_pairs = max(int(round(0.3 * n)) // 2, 2)
        if n % 2:
            raise ValueError("exp4 needs even n")
        groups = max(1, min(spec.sigma_groups, n_rep_pairs // 2))
        pairs = []
        per = n_rep_pairs // groups
        counts = [per] * groups
        counts[0] += n_rep_pairs - per * groups
        for count in counts:
            sigma = abs(rng.normal())
            sigma = max(sigma, 1e-3)
            for _ in range(count):
                x = rng.normal()
                lam = math.hypot(x, sigma)
                pairs.append((lam, math.atan2(sigma, x)))
        pairs.extend(_draw_pairs(rng, n // 2 - n_rep_pairs))
        notes["repeated_pairs"] = n_rep_pairs
        return _make(Spectrum(pairs, []), Qm, notes)

    if spec.cls == "exp5":
        if n % 2:
            raise ValueError("exp5 needs even n")
        pairs = _draw_pairs(rng, n // 2, phases="tight")
        return _make(Spectrum(pairs, []), Qm, notes)

    # alpha family: alpha1 real eigenvalues, alpha2 repeated-imaginary pairs,
    # the rest generic complex pairs.
    n_real = int(round(spec.alpha1 * n))
    n_rep = int(round(spec.alpha2 * n)) // 2
    n_real -= (n - n_real) % 2
    n_real = max(n_real, 0)
    n_rep = min(n_rep, (n - n_real) // 2)
    reals = [rng.normal() for _ in range(n_real)]
    pairs = []
    if n_rep:
        sigma = max(abs(rng.normal()), 1e-3)
        for _ in range(n_rep):
            x = rng.normal()
            pairs.append((math.hypot(x, sigma), math.atan2(sigma, x)))
    rest = (n - n_real) // 2 - n_rep
    for _ in range(rest):
        x, y = rng.normal(), rng.normal()
        y = math.copysign(max(abs(y), 1e-6), 1.0)
        pairs.append((math.hypot(x, y), math.atan2(y, x)))
    notes.update({"n_real": n_real, "repeated_pairs": n_rep})
    return _make(Spectrum(pairs, reals), Qm, notes)


def _fig1_candidate(seed: int):
    """One draw of the step-coverage test matrix (see fig1_matrix)."""
    rng = _rng(seed)
    pairs = []
    # Three pairs with a repeated imaginary part: after stage one they stay
    # coupled and their block is exactly of the structured
    # skew-Hamiltonian form, so the structured Jacobi solver (II.1) runs.
    sigma = 0.9
    for _ in range(3):
        x = rng.normal()
        pairs.append((math.hypot(x, sigma), math.atan2(sigma, x)))
    # A chain of five pairs with imaginary parts 4 + k*8e-8 and real parts
    # spread 8 apart. The imaginary-part gaps are small enough that stage
    # one leaves coupling above the clustering threshold (the surviving
    # coupling scales like eps * spread / gap), while the accumulated
    # imaginary-part spread makes the block fail the structured gate and
    # the large real-part spread makes it fail the symmetric gate, so the
    # general sub-solver (II.3) runs.
    base, gap, spread = 4.0, 8e-8, 8.0
    for k in range(5):
        y = base + k * gap
        x = (k - 2) * spread + 0.1 * rng.normal()
        pairs.append((math.hypot(x, y), math.atan2(y, x)))
    # Two pairs with an eps^(1/4) imaginary-part gap: close enough that a
    # small residue survives stage one, wide enough to stay un-clustered,
    # leaving work for the final refinement stage (III).
    base = 2.2
    gap = EPS**0.25
    for k in range(2):
        y = base + k * gap
        x = rng.normal()
        pairs.append((math.hypot(x, y), math.atan2(y, x)))
    # Six real eigenvalues: their pair blocks always stay mutually coupled,
    # forming a symmetric cluster for the symmetric Jacobi solver (II.2).
    reals = [rng.normal() for _ in range(6)]
    spec_obj = Spectrum(pairs, reals)
    Qm = haar_orthogonal(spec_obj.size, rng)
    return _make(
        spec_obj,
        Qm,
        {
            "class": "fig1",
            "seed": seed,
            "intended_steps": ["II.1", "II.2", "II.3", "III"],
        },
    )


def fig1_matrix(seed: int = 0, max_tries: int = 12):
    """A 26x26 normal matrix exercising every stage of the pipeline.

    The routing of the five-pair chain to the general sub-solver depends on
    coupling left behind by stage one at the rounding level, so it holds
    for most but not all draws (empirically ~98%). To make the result
    deterministic per seed, candidate draws from sub-seeds of ``seed`` are
    validated by running the pipeline, and the first draw firing all four
    stages is returned.
    """
    from .driver import decompose

    last = None
    for t in range(max_tries):
        A, truth = _fig1_candidate(seed * max_tries + t + 1)
        last = (A, truth)
        result = decompose(A)
        fired = {rec.step for rec in result.step_log}
        if {"II.1", "II.2", "II.3", "III"} <= fired and result.converged:
            return A, truth
    return last
