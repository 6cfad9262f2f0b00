"""Pure numpy/scipy implementations of the hot kernels."""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


def tuple_orbit_labels(images: np.ndarray) -> tuple[np.ndarray, int]:
    """Orbit labels for points 0..N-1 under maps given as rows of ``images``.

    Labels are numbered by the smallest point of each orbit, in increasing order.
    """
    images = np.asarray(images, dtype=np.int64)
    g, N = images.shape
    if g == 0:
        return np.arange(N, dtype=np.int64), N
    src = np.tile(np.arange(N, dtype=np.int64), g)
    graph = coo_matrix((np.ones(g * N, dtype=np.int8), (src, images.ravel())), shape=(N, N))
    ncomp, comp = connected_components(graph, directed=True, connection="weak")
    _, first = np.unique(comp, return_index=True)
    rank = np.empty(ncomp, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(ncomp)
    return rank[comp], int(ncomp)


def signature_counts(C: np.ndarray, cells: np.ndarray, ncolors: int, ncells: int) -> np.ndarray:
    """Per vertex, counts of (edge color, neighbour cell) for out- and in-edges."""
    n = C.shape[0]
    K = ncolors * ncells
    cells = cells.astype(np.int64)
    out_idx = C.astype(np.int64) * ncells + cells[None, :]
    in_idx = C.T.astype(np.int64) * ncells + cells[None, :]
    rows = np.arange(n, dtype=np.int64)[:, None] * (2 * K)
    flat = np.concatenate([(rows + out_idx).ravel(), (rows + K + in_idx).ravel()])
    return np.bincount(flat, minlength=n * 2 * K).reshape(n, 2 * K).astype(np.int32)


def preserving_rows(P: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Mask of rows p of P with C[p[i], p[j]] == C[i, j] for all i, j."""
    out = np.ones(P.shape[0], dtype=bool)
    n = C.shape[0]
    for i in range(n):
        out &= (C[P[:, i][:, None], P] == C[i][None, :]).all(axis=1)
    return out
