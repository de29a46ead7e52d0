"""Dense real/complex matrix primitives: Givens rotations, structure
projections, convergence norms, permutations, and the shared text format.

Indices in the public API documentation are 1-based (matching the usual
linear-algebra convention); internally everything is 0-based numpy.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS = float(np.finfo(np.float64).eps)

__all__ = [
    "EPS",
    "MatrixFormatError",
    "GivensRotation",
    "Permutation",
    "as_square_matrix",
    "apply_givens_left",
    "apply_givens_right",
    "offschur",
    "offdiag",
    "sym_part",
    "skew_part",
    "even_odd_permutation",
    "frobenius_norm",
    "frobenius_inner",
    "read_matrix",
    "write_matrix",
]


class MatrixFormatError(ValueError):
    """Raised for malformed matrix text files (bad header, rows, or values)."""


@dataclass(frozen=True)
class GivensRotation:
    """Plane rotation acting on coordinates ``i < j`` (1-based).

    Applied on the left as G^T A (rows) and on the right as A G (columns),
    where G has G[i,i] = G[j,j] = c, G[j,i] = s, G[i,j] = -s.
    """

    i: int
    j: int
    c: float
    s: float

    def __post_init__(self):
        if not (1 <= self.i < self.j):
            raise ValueError(f"need 1 <= i < j, got ({self.i}, {self.j})")
        r = self.c * self.c + self.s * self.s
        if abs(r - 1.0) > 1e-14:
            raise ValueError(f"c^2 + s^2 = {r!r} is not 1")

    def matrix(self, n: int) -> np.ndarray:
        G = np.eye(n)
        i, j = self.i - 1, self.j - 1
        G[i, i] = G[j, j] = self.c
        G[j, i] = self.s
        G[i, j] = -self.s
        return G


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1..n}, stored as the 0-based column order of P.

    P is the matrix with P[order[k], k] = 1, so that a @ P = a[order] for a
    row vector a.
    """

    n: int
    order: tuple

    def __post_init__(self):
        if sorted(self.order) != list(range(self.n)):
            raise ValueError("order is not a bijection on {0..n-1}")

    def matrix(self) -> np.ndarray:
        P = np.zeros((self.n, self.n))
        P[list(self.order), range(self.n)] = 1.0
        return P

    def conj(self, A: np.ndarray) -> np.ndarray:
        """P^T A P."""
        ix = np.asarray(self.order)
        return A[np.ix_(ix, ix)]

    def conj_inv(self, A: np.ndarray) -> np.ndarray:
        """P A P^T."""
        inv = np.empty(self.n, dtype=int)
        inv[np.asarray(self.order)] = np.arange(self.n)
        return A[np.ix_(inv, inv)]


def as_square_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and return a finite square float matrix."""
    A = np.asarray(a, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be square, got shape {A.shape}")
    if not np.isfinite(A).all():
        raise ValueError(f"{name} contains non-finite entries")
    return A


def apply_givens_left(A: np.ndarray, g: GivensRotation) -> np.ndarray:
    """In place A <- G^T A (rows i and j combined)."""
    n = A.shape[0]
    if g.j > n:
        raise ValueError(f"rotation plane ({g.i},{g.j}) out of range for n={n}")
    i, j = g.i - 1, g.j - 1
    ri = g.c * A[i, :] + g.s * A[j, :]
    rj = -g.s * A[i, :] + g.c * A[j, :]
    A[i, :] = ri
    A[j, :] = rj
    return A


def apply_givens_right(A: np.ndarray, g: GivensRotation) -> np.ndarray:
    """In place A <- A G (columns i and j combined)."""
    n = A.shape[0]
    if g.j > n:
        raise ValueError(f"rotation plane ({g.i},{g.j}) out of range for n={n}")
    i, j = g.i - 1, g.j - 1
    ci = g.c * A[:, i] + g.s * A[:, j]
    cj = -g.s * A[:, i] + g.c * A[:, j]
    A[:, i] = ci
    A[:, j] = cj
    return A


def _offschur_mask(n: int) -> np.ndarray:
    """Boolean mask selecting entries outside the 2x2 diagonal blocks
    anchored at odd positions (a trailing 1x1 block when n is odd)."""
    mask = np.ones((n, n), dtype=bool)
    k = n - (n % 2)
    for a in range(0, k, 2):
        mask[a : a + 2, a : a + 2] = False
    if n % 2:
        mask[-1, -1] = False
    return mask


def offschur(A: np.ndarray) -> float:
    """Frobenius norm of all entries outside the 2x2 diagonal blocks
    anchored at odd positions."""
    n = A.shape[0]
    return float(np.sqrt(np.sum(np.abs(A[_offschur_mask(n)]) ** 2)))


def offdiag(A: np.ndarray) -> float:
    """Frobenius norm of the strictly off-diagonal entries."""
    off = A - np.diag(np.diagonal(A))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def sym_part(A: np.ndarray) -> np.ndarray:
    return 0.5 * (A + A.T)


def skew_part(A: np.ndarray) -> np.ndarray:
    return 0.5 * (A - A.T)


def even_odd_permutation(n: int) -> Permutation:
    """P_eo with [a1 .. an] P_eo = [a1 a3 ... a2 a4 ...]."""
    if n < 0 or n % 2:
        raise ValueError(f"even-odd permutation needs even n, got {n}")
    order = tuple(range(0, n, 2)) + tuple(range(1, n, 2))
    return Permutation(n, order)


def frobenius_norm(A: np.ndarray) -> float:
    return float(np.linalg.norm(A))


def frobenius_inner(A: np.ndarray, B: np.ndarray) -> float:
    return float(np.sum(A * B))


def read_matrix(path) -> np.ndarray:
    """Read the shared matrix text format: line 1 is n, then n rows of n
    whitespace-separated values."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise MatrixFormatError(f"{path}: empty file")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise MatrixFormatError(f"{path}:1: expected integer dimension") from None
    if n <= 0:
        raise MatrixFormatError(f"{path}:1: dimension must be positive, got {n}")
    if len(lines) < n + 1:
        raise MatrixFormatError(f"{path}: expected {n} rows, file has {len(lines) - 1}")
    A = np.empty((n, n))
    for r in range(n):
        parts = lines[1 + r].split()
        if len(parts) != n:
            raise MatrixFormatError(
                f"{path}:{r + 2}: expected {n} values, got {len(parts)}"
            )
        try:
            A[r, :] = [float(p) for p in parts]
        except ValueError:
            raise MatrixFormatError(f"{path}:{r + 2}: non-numeric value") from None
    if not np.isfinite(A).all():
        bad = np.argwhere(~np.isfinite(A))[0]
        raise MatrixFormatError(
            f"{path}:{bad[0] + 2}: non-finite value in column {bad[1] + 1}"
        )
    return A


def write_matrix(path, A: np.ndarray) -> None:
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    with open(path, "w") as fh:
        fh.write(f"{n}\n")
        for r in range(n):
            fh.write(" ".join(f"{v:.17g}" for v in A[r, :]))
            fh.write("\n")
