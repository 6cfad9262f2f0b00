"""m-closures of permutation groups.

The 2-closure is the automorphism group of the orbital coloring, found by an
individualization/refinement backtrack seeded with the input generators. For
m >= 3 the closure is cut out of the 2-closure by a search along its stabilizer
chain, since G^(m) <= G^(2).
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .morbits import (
    TUPLE_BUDGET,
    TupleColoring,
    coloring_preserved,
    m_orbit_coloring,
    tuple_digits,
    tuple_images,
)
from .perm import GroupError, Perm, PermGroup, compose, group_from_rows

BACKTRACK_DEGREE = 128
M3_DEGREE = 64
BRUTE_DEGREE = 9


@dataclass
class ClosureResult:
    closed_group: PermGroup
    arity: int
    input_order: int
    closed_order: int
    method: str
    stats: dict = field(default_factory=dict)

    @property
    def is_closed(self) -> bool:
        return self.input_order == self.closed_order


# -- refinement ------------------------------------------------------------

def refine(C: np.ndarray, cells: np.ndarray, ncolors: int) -> tuple[np.ndarray, bytes]:
    """Equitable refinement of an ordered partition against a fixed edge coloring.

    Returns the new cell index per vertex and a digest of the refinement trace.
    Cell numbering is canonical (sorted signatures), so the result commutes with
    every color-preserving permutation.
    """
    h = hashlib.blake2b(digest_size=16)
    cells = np.asarray(cells, dtype=np.int64)
    ncells = int(cells.max()) + 1 if cells.size else 0
    while True:
        counts = kernels.signature_counts(C, cells, ncolors, ncells)
        keys = np.concatenate([cells[:, None].astype(np.int32), counts], axis=1)
        uniq, inv = np.unique(keys, axis=0, return_inverse=True)
        inv = inv.reshape(-1).astype(np.int64)
        h.update(uniq.tobytes())
        h.update(np.bincount(inv).astype(np.int64).tobytes())
        if len(uniq) == ncells:
            return inv, h.digest()
        cells, ncells = inv, len(uniq)


def individualize(cells: np.ndarray, v: int) -> np.ndarray:
    c = cells[v]
    new = np.where(cells > c, cells + 1, cells)
    new[(cells == c)] = c + 1
    new[v] = c
    return new


def _target_cell(cells: np.ndarray) -> int | None:
    sizes = np.bincount(cells)
    big = np.flatnonzero(sizes > 1)
    if big.size == 0:
        return None
    return int(big[np.argmin(sizes[big])])


class AutomorphismSearch:
    """Automorphisms of a complete edge-colored digraph given by matrix C."""

    def __init__(self, C: np.ndarray, known: Sequence[Sequence[int]] = ()):
        self.C = np.ascontiguousarray(C, dtype=np.int32)
        self.n = self.C.shape[0]
        self.ncolors = int(self.C.max()) + 1 if self.n else 1
        self.known = [Perm._raw(tuple(g)) for g in known]
        self.nodes = 0
        self.prunes = 0

    def _first_path(self):
        cells, inv = refine(self.C, np.zeros(self.n, dtype=np.int64), self.ncolors)
        parts, invs, targets, base = [cells], [inv], [], []
        while True:
            tc = _target_cell(cells)
            if tc is None:
                break
            v = int(np.flatnonzero(cells == tc)[0])
            targets.append(tc)
            base.append(v)
            cells, inv = refine(self.C, individualize(cells, v), self.ncolors)
            parts.append(cells)
            invs.append(inv)
        return parts, invs, targets, base

    def _preserves(self, g: np.ndarray) -> bool:
        return bool((self.C[np.ix_(g, g)] == self.C).all())

    def _descend(self, level: int, cells: np.ndarray):
        self.nodes += 1
        if level == len(self.base):
            g = np.empty(self.n, dtype=np.int64)
            g[self.leaf_order] = np.argsort(cells)
            return g if self._preserves(g) else None
        for x in np.flatnonzero(cells == self.targets[level]):
            nc, inv = refine(self.C, individualize(cells, int(x)), self.ncolors)
            if inv != self.invs[level + 1]:
                self.prunes += 1
                continue
            g = self._descend(level + 1, nc)
            if g is not None:
                return g
        return None

    def run(self) -> PermGroup:
        parts, self.invs, self.targets, self.base = self._first_path()
        self.parts = parts
        # vertex sitting in cell c of the first leaf
        self.leaf_order = np.argsort(parts[-1])
        n = self.n
        gens = [g for g in self.known if not all(i == x for i, x in enumerate(g))]
        K = PermGroup(n, gens, base=self.base)
        for i in reversed(range(len(self.base))):
            cells = parts[i]
            for w in np.flatnonzero(cells == self.targets[i]):
                w = int(w)
                if w in K.transversal(i):
                    continue
                nc, inv = refine(self.C, individualize(cells, w), self.ncolors)
                if inv != self.invs[i + 1]:
                    self.prunes += 1
                    continue
                g = self._descend(i + 1, nc)
                if g is not None:
                    K = PermGroup(n, K.generators + [Perm._raw(tuple(int(v) for v in g))], base=self.base)
        return K


# -- closures ----------------------------------------------------------------

def one_closure(G: PermGroup) -> PermGroup:
    """Direct product of the symmetric groups on the orbits of G."""
    n = G.degree
    gens = []
    for orb in G.orbits():
        if len(orb) >= 2:
            gens.append(Perm.from_cycles(n, (orb[0], orb[1])))
        if len(orb) >= 3:
            gens.append(Perm.from_cycles(n, tuple(orb)))
    return PermGroup(n, gens)


def two_closure(G: PermGroup, budget: int = BACKTRACK_DEGREE) -> ClosureResult:
    if G.degree > budget:
        raise GroupError(f"degree {G.degree} exceeds backtrack budget {budget}")
    col = m_orbit_coloring(G, 2)
    search = AutomorphismSearch(col.matrix(), G.generators)
    K = search.run()
    for g in K.generators:
        if not coloring_preserved(col, g):
            raise GroupError("internal error: 2-closure generator breaks an orbital")
    if not G.is_subgroup_of(K):
        raise GroupError("internal error: 2-closure misses an input generator")
    stats = {"nodes": search.nodes, "prunes": search.prunes, "base": search.base}
    return ClosureResult(K, 2, G.order, K.order, "backtrack", stats)


def _subgroup_in_chain(K: PermGroup, G: PermGroup, col: TupleColoring) -> tuple[PermGroup, dict]:
    """{k in K : k preserves col}, given that it contains G."""
    n, m = K.degree, col.m
    base = K.base
    k = len(base)
    weights = n ** np.arange(m - 1, -1, -1, dtype=np.int64)
    digits = tuple_digits(n, m)
    stats = {"nodes": 0, "prunes": 0}
    # index tuples over base positions that involve position j
    new_tuples = []
    for j in range(k):
        ts = [t for t in itertools.product(range(j + 1), repeat=m) if j in t]
        new_tuples.append(np.array(ts, dtype=np.int64).reshape(-1, m))

    def consistent(pts: np.ndarray, imgs: np.ndarray, j: int) -> bool:
        ts = new_tuples[j]
        src = pts[ts] @ weights
        dst = imgs[ts] @ weights
        return bool((col.colors[src] == col.colors[dst]).all())

    pts = np.array(base, dtype=np.int64)

    def find(i: int, gamma: int):
        imgs = pts.copy()
        s = K.transversal(i)[gamma]
        imgs[i] = gamma

        def rec(j: int, s: Perm):
            stats["nodes"] += 1
            if j == k:
                img = tuple_images(s, digits, n)
                return s if np.array_equal(col.colors[img], col.colors) else None
            for delta, u in K.transversal(j).items():
                imgs[j] = s[delta]
                if not consistent(pts, imgs, j):
                    stats["prunes"] += 1
                    continue
                r = rec(j + 1, compose(u, s))
                if r is not None:
                    return r
            return None

        for l in range(i):
            imgs[l] = pts[l]
        if not consistent(pts, imgs, i):
            stats["prunes"] += 1
            return None
        return rec(i + 1, s)

    P = PermGroup(n, G.generators, base=base)
    for i in reversed(range(k)):
        for gamma in sorted(K.transversal(i)):
            if gamma in P.transversal(i):
                continue
            g = find(i, gamma)
            if g is not None:
                P = PermGroup(n, P.generators + [g], base=base)
    return P, stats


def m_closure(G: PermGroup, m: int, budget: int | None = None) -> ClosureResult:
    if m < 1:
        raise GroupError("arity must be at least 1")
    if m == 1:
        K = one_closure(G)
        return ClosureResult(K, 1, G.order, K.order, "structural")
    if m == 2:
        return two_closure(G, budget or BACKTRACK_DEGREE)
    limit = budget or M3_DEGREE
    if G.degree > limit:
        raise GroupError(f"degree {G.degree} exceeds the m>=3 budget {limit}")
    if G.degree**m > TUPLE_BUDGET:
        raise GroupError(f"{G.degree}^{m} tuples exceed the budget")
    two = two_closure(G)
    col = m_orbit_coloring(G, m)
    P, stats = _subgroup_in_chain(two.closed_group, G, col)
    for g in P.generators:
        if not coloring_preserved(col, g):
            raise GroupError("internal error: closure generator breaks an m-orbit")
    stats["two_closure_order"] = two.closed_order
    return ClosureResult(P, m, G.order, P.order, "backtrack", stats)


def is_m_closed(G: PermGroup, m: int, budget: int | None = None) -> bool:
    return m_closure(G, m, budget).is_closed


# -- brute-force oracles ------------------------------------------------------

def _all_perms(n: int) -> np.ndarray:
    if n > BRUTE_DEGREE:
        raise GroupError(f"degree {n} too large for brute force (max {BRUTE_DEGREE})")
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


def two_closure_brute(G: PermGroup) -> PermGroup:
    """Filter all of Sym(n) by preservation of the 2-orbits."""
    P = _all_perms(G.degree)
    C = m_orbit_coloring(G, 2).matrix()
    keep = kernels.preserving_rows(P, C)
    return group_from_rows(G.degree, P[keep], seed=PermGroup(G.degree, G.generators))


def m_closure_brute(G: PermGroup, m: int, chunk: int = 4096) -> PermGroup:
    """Filter all of Sym(n) by preservation of the m-orbits."""
    n = G.degree
    P = _all_perms(n)
    col = m_orbit_coloring(G, m)
    digits = tuple_digits(n, m)
    weights = n ** np.arange(m - 1, -1, -1, dtype=np.int64)
    keep = []
    for start in range(0, P.shape[0], chunk):
        block = P[start:start + chunk]
        img = block[:, digits] @ weights
        keep.append(block[(col.colors[img] == col.colors[None, :]).all(axis=1)])
    rows = np.concatenate(keep, axis=0)
    return group_from_rows(n, rows, seed=PermGroup(n, G.generators))


# -- sufficient conditions -----------------------------------------------------

EXHAUSTIVE_LIMIT = 2**16


def is_partly_regular(G: PermGroup, seed: int = 0, max_samples: int = 256, strategy: str = "auto") -> int | None:
    """A point whose orbit is regular (trivial stabilizer), or None.

    "exhaustive" scans points in ascending order (one per orbit); "random" draws
    max_samples seeded points; "auto" picks exhaustive up to 2^16 points.
    """
    if strategy not in ("auto", "exhaustive", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    order = G.order
    if order > G.degree:
        return None
    if strategy == "exhaustive" and G.degree > EXHAUSTIVE_LIMIT:
        raise GroupError(f"exhaustive search needs at most {EXHAUSTIVE_LIMIT} points")
    if strategy == "exhaustive" or (strategy == "auto" and G.degree <= EXHAUSTIVE_LIMIT):
        seen = set()
        for a in range(G.degree):
            if a in seen:
                continue
            orb = G.orbit(a)
            seen.update(orb)
            if len(orb) == order:
                return a
        return None
    rng = np.random.default_rng(seed)
    for a in rng.integers(0, G.degree, size=max_samples):
        if len(G.orbit(int(a))) == order:
            return int(a)
    return None


def is_two_closed_restriction(H: PermGroup, alpha: int, budget: int = BACKTRACK_DEGREE) -> bool:
    orbit = sorted(H.orbit(alpha))
    R, faithful = H.restriction(orbit)
    if not faithful:
        return False
    return two_closure(R, budget).is_closed
