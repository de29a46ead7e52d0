"""Detection of unresolved diagonal blocks after the skew-symmetric stage.

The matrix is viewed as a weighted graph on (odd, even) index pairs; pairs
coupled by an off-block of non-negligible Frobenius norm belong to the same
cluster and are handed to a structured sub-solver together.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .matcore import as_square_matrix, frobenius_norm

__all__ = ["ClusterSet", "build_adjacency", "connected_components"]


@dataclass(frozen=True)
class ClusterSet:
    """Disjoint sorted index lists (0-based), each made of (even, even+1)
    pairs, jointly covering {0..n-1}."""

    n: int
    clusters: tuple

    def __post_init__(self):
        seen = sorted(i for cl in self.clusters for i in cl)
        if seen != list(range(self.n)):
            raise ValueError("clusters do not partition the index set")
        for cl in self.clusters:
            if len(cl) % 2:
                raise ValueError("cluster with odd cardinality")
            for k in range(0, len(cl), 2):
                if cl[k] % 2 or cl[k + 1] != cl[k] + 1:
                    raise ValueError("cluster indices must form aligned pairs")


def build_adjacency(A: np.ndarray, rho: float) -> np.ndarray:
    """Boolean coupling matrix between aligned 2x2 blocks.

    Pair blocks (i, i+1) and (j, j+1) are marked adjacent when the stacked
    off-blocks [A_l1,l2 | A_l2,l1] have Frobenius norm strictly above
    sqrt(rho * ||A||_F).
    """
    A = as_square_matrix(A)
    n = A.shape[0]
    if n % 2:
        raise ValueError("adjacency construction needs even n")
    if rho <= 0:
        raise ValueError("rho must be positive")
    threshold = np.sqrt(rho * frobenius_norm(A))
    adj = np.zeros((n, n), dtype=bool)
    for i in range(0, n - 3, 2):
        for j in range(i + 2, n - 1, 2):
            l1 = [i, i + 1]
            l2 = [j, j + 1]
            w = np.sqrt(
                np.sum(A[np.ix_(l1, l2)] ** 2) + np.sum(A[np.ix_(l2, l1)] ** 2)
            )
            if w > threshold:
                ll = l1 + l2
                adj[np.ix_(ll, ll)] = True
    return adj


def connected_components(adj: np.ndarray) -> ClusterSet:
    """BFS connected components over pair-nodes.

    Indices 2k and 2k+1 are always one node; isolated nodes come back as
    size-2 clusters. Clusters are ascending, ordered by smallest member.
    """
    adj = np.asarray(adj)
    n = adj.shape[0]
    if adj.ndim != 2 or adj.shape[1] != n or n % 2:
        raise ValueError("expected a square matrix of even dimension")
    if not np.array_equal(adj, adj.T):
        raise ValueError("adjacency must be symmetric")
    m = n // 2
    # Pair-node p covers indices {2p, 2p+1}.
    pair_adj = np.zeros((m, m), dtype=bool)
    for p in range(m):
        for q in range(p + 1, m):
            block = adj[2 * p : 2 * p + 2, 2 * q : 2 * q + 2]
            if block.any():
                pair_adj[p, q] = pair_adj[q, p] = True
    visited = [False] * m
    clusters = []
    for start in range(m):
        if visited[start]:
            continue
        comp = []
        queue = deque([start])
        visited[start] = True
        while queue:
            p = queue.popleft()
            comp.append(p)
            for q in range(m):
                if pair_adj[p, q] and not visited[q]:
                    visited[q] = True
                    queue.append(q)
        comp.sort()
        indices = tuple(i for p in comp for i in (2 * p, 2 * p + 1))
        clusters.append(indices)
    clusters.sort(key=lambda cl: cl[0])
    return ClusterSet(n, tuple(clusters))
