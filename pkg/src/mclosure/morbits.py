"""Orbits of a permutation group on m-tuples (the m-orbits)."""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import kernels
from .perm import GroupError, PermGroup

TUPLE_BUDGET = 2**27

PartitionType = tuple  # tuple of tuples, classes sorted by least element


@dataclass(frozen=True)
class TupleColoring:
    n: int
    m: int
    colors: np.ndarray  # length n**m, row-major tuple index
    num_colors: int
    representatives: tuple

    def color(self, t: Sequence[int]) -> int:
        return int(self.colors[tuple_index(t, self.n)])

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.colors, minlength=self.num_colors)

    def same_partition(self, other: "TupleColoring") -> bool:
        # colors are numbered by least tuple index, so equal partitions give equal arrays
        return self.n == other.n and self.m == other.m and np.array_equal(self.colors, other.colors)

    def matrix(self) -> np.ndarray:
        """The coloring of pairs as an n x n matrix (m == 2 only)."""
        if self.m != 2:
            raise ValueError("matrix view needs arity 2")
        return self.colors.reshape(self.n, self.n)


def tuple_index(t: Sequence[int], n: int) -> int:
    idx = 0
    for x in t:
        if not 0 <= x < n:
            raise GroupError(f"tuple entry {x} out of range for degree {n}")
        idx = idx * n + int(x)
    return idx


def index_tuple(idx: int, n: int, m: int) -> tuple:
    out = []
    for _ in range(m):
        idx, r = divmod(idx, n)
        out.append(r)
    return tuple(reversed(out))


def tuple_digits(n: int, m: int) -> np.ndarray:
    """All m-tuples over range(n) as an (n**m, m) array in index order."""
    idx = np.arange(n**m, dtype=np.int64)
    cols = [(idx // n ** (m - 1 - i)) % n for i in range(m)]
    return np.stack(cols, axis=1) if m else np.zeros((1, 0), dtype=np.int64)


def tuple_images(perm: Sequence[int], digits: np.ndarray, n: int) -> np.ndarray:
    """Index of t^perm for every tuple t (rows of ``digits``)."""
    p = np.asarray(perm, dtype=np.int64)
    m = digits.shape[1]
    weights = n ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return p[digits] @ weights


def _check_budget(n: int, m: int, budget: int) -> None:
    if m < 1:
        raise GroupError("arity must be at least 1")
    if n**m > budget:
        raise GroupError(f"{n}^{m} tuples exceed the budget of {budget}")


def m_orbit_coloring(G: PermGroup, m: int, budget: int = TUPLE_BUDGET) -> TupleColoring:
    n = G.degree
    _check_budget(n, m, budget)
    digits = tuple_digits(n, m)
    if G.generators:
        images = np.stack([tuple_images(g, digits, n) for g in G.generators])
    else:
        images = np.zeros((0, n**m), dtype=np.int64)
    labels, k = kernels.tuple_orbit_labels(images)
    _, first = np.unique(labels, return_index=True)
    reps = tuple(tuple(int(v) for v in digits[i]) for i in first)
    return TupleColoring(n, m, labels.astype(np.int64), int(k), reps)


def coloring_preserved(coloring: TupleColoring, perm: Sequence[int], digits: np.ndarray | None = None) -> bool:
    if digits is None:
        digits = tuple_digits(coloring.n, coloring.m)
    img = tuple_images(perm, digits, coloring.n)
    return bool(np.array_equal(coloring.colors[img], coloring.colors))


def partition_type(t: Sequence[int]) -> PartitionType:
    classes: dict[int, list[int]] = {}
    for i, x in enumerate(t):
        classes.setdefault(x, []).append(i)
    return tuple(sorted(tuple(c) for c in classes.values()))


def _pattern_codes(digits: np.ndarray) -> np.ndarray:
    m = digits.shape[1]
    code = np.zeros(digits.shape[0], dtype=np.int64)
    bit = 0
    for i in range(m):
        for j in range(i + 1, m):
            code |= (digits[:, i] == digits[:, j]).astype(np.int64) << bit
            bit += 1
    return code


def orbit_partition_types(coloring: TupleColoring) -> dict[int, PartitionType]:
    """Equality pattern of each m-orbit; raises if an orbit mixes patterns."""
    digits = tuple_digits(coloring.n, coloring.m)
    codes = _pattern_codes(digits)
    lo = np.full(coloring.num_colors, np.iinfo(np.int64).max)
    hi = np.full(coloring.num_colors, -1)
    np.minimum.at(lo, coloring.colors, codes)
    np.maximum.at(hi, coloring.colors, codes)
    bad = np.flatnonzero(lo != hi)
    if bad.size:
        raise GroupError(f"m-orbit {int(bad[0])} contains tuples of different partition types")
    return {c: partition_type(rep) for c, rep in enumerate(coloring.representatives)}


def are_m_equivalent(G: PermGroup, H: PermGroup, m: int, budget: int = TUPLE_BUDGET) -> bool:
    if G.degree != H.degree:
        raise GroupError(f"degree mismatch: {G.degree} vs {H.degree}")
    if all(H.contains(g) for g in G.generators):
        small, big = G, H
    elif all(G.contains(h) for h in H.generators):
        small, big = H, G
    else:
        return m_orbit_coloring(G, m, budget).same_partition(m_orbit_coloring(H, m, budget))
    # small <= big: equivalent iff every generator of big keeps each m-orbit of small
    col = m_orbit_coloring(small, m, budget)
    digits = tuple_digits(G.degree, m)
    return all(coloring_preserved(col, h, digits) for h in big.generators)


# -- export ---------------------------------------------------------------

_MAGIC = b"MORB"


def write_coloring(coloring: TupleColoring, path: str | Path) -> None:
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(_MAGIC + struct.pack("<III", coloring.n, coloring.m, coloring.num_colors))
        fh.write(coloring.colors.astype("<u4").tobytes())
    summary = {
        "n": coloring.n,
        "m": coloring.m,
        "num_colors": coloring.num_colors,
        "class_sizes": coloring.class_sizes().tolist(),
        "representatives": [list(r) for r in coloring.representatives],
    }
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(summary, indent=2))


def read_coloring(path: str | Path) -> TupleColoring:
    data = Path(path).read_bytes()
    if data[:4] != _MAGIC:
        raise ValueError("not a coloring file")
    n, m, k = struct.unpack("<III", data[4:16])
    colors = np.frombuffer(data[16:], dtype="<u4").astype(np.int64)
    if colors.size != n**m:
        raise ValueError("truncated coloring file")
    _, first = np.unique(colors, return_index=True)
    reps = tuple(index_tuple(int(i), n, m) for i in first)
    return TupleColoring(n, m, colors, k, reps)
