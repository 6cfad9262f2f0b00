"""Permutations and permutation groups on {0, ..., n-1}.

Action is on the right: ``a ^ (p * q) == (a ^ p) ^ q``, so ``(p * q)[a] == q[p[a]]``.
Groups carry a deterministic stabilizer chain (Schreier-Sims) built at construction.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

ENUMERATION_LIMIT = 5_000_000


class GroupError(ValueError):
    pass


class Perm(tuple):
    """A permutation stored as its image list."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise GroupError(f"not a permutation: {images!r}")
        return tuple.__new__(cls, images)

    @classmethod
    def _raw(cls, images) -> "Perm":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return tuple.__new__(cls, range(n))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Perm":
        img = list(range(n))
        for cyc in cycles:
            for i, a in enumerate(cyc):
                img[a] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple:
        return tuple(self)

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __invert__(self) -> "Perm":
        return inverse(self)

    def __pow__(self, k: int) -> "Perm":
        return power(self, k)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = math.lcm(o, len(c))
        return o

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for a in range(len(self)):
            if a in seen or self[a] == a:
                continue
            cyc = [a]
            seen.add(a)
            b = self[a]
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = self[b]
            out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        cyc = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Perm{body}[{len(self)}]"


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    if len(p) != len(q):
        raise GroupError(f"degree mismatch: {len(p)} vs {len(q)}")
    return Perm._raw([q[a] for a in p])


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return Perm._raw(inv)


def power(p: Sequence[int], k: int) -> Perm:
    n = len(p)
    if k < 0:
        p, k = inverse(p), -k
    result = Perm.identity(n)
    base = Perm._raw(p)
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def _is_id(p: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(p))


@dataclass
class _Level:
    point: int
    gens: list
    transversal: dict = field(default_factory=dict)
    inv_transversal: dict = field(default_factory=dict)
    checked: set = field(default_factory=set)

    def rebuild(self, n: int) -> None:
        ident = Perm.identity(n)
        trans = {self.point: ident}
        queue = deque([self.point])
        while queue:
            a = queue.popleft()
            ua = trans[a]
            for s in self.gens:
                b = s[a]
                if b not in trans:
                    trans[b] = compose(ua, s)
                    queue.append(b)
        self.transversal = trans
        self.inv_transversal = {}

    def inv(self, b: int) -> Perm:
        u = self.inv_transversal.get(b)
        if u is None:
            u = inverse(self.transversal[b])
            self.inv_transversal[b] = u
        return u


def _first_moved(g: Sequence[int]) -> int:
    for i, x in enumerate(g):
        if i != x:
            return i
    raise GroupError("identity moves no point")


def _sift(levels: list[_Level], g: Perm, start: int = 0) -> tuple[Perm, int]:
    for j in range(start, len(levels)):
        lev = levels[j]
        b = g[lev.point]
        if b not in lev.transversal:
            return g, j
        if b != lev.point:
            g = compose(g, lev.inv(b))
    return g, len(levels)


def _schreier_sims(n: int, gens: list[Perm], base_prefix: Sequence[int] = ()) -> list[_Level]:
    base = list(dict.fromkeys(int(b) for b in base_prefix))
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))
    levels = []
    for i, b in enumerate(base):
        fixed = base[:i]
        lev = _Level(b, [g for g in gens if all(g[c] == c for c in fixed)])
        lev.rebuild(n)
        levels.append(lev)

    i = len(levels) - 1
    while i >= 0:
        lev = levels[i]
        jumped = False
        for beta in list(lev.transversal):
            u = lev.transversal[beta]
            for si, s in enumerate(lev.gens):
                key = (beta, si)
                if key in lev.checked:
                    continue
                gamma = s[beta]
                h = compose(compose(u, s), lev.inv(gamma))
                if _is_id(h):
                    lev.checked.add(key)
                    continue
                h, j = _sift(levels, h, i + 1)
                if j == len(levels) and _is_id(h):
                    lev.checked.add(key)
                    continue
                if j == len(levels):
                    levels.append(_Level(_first_moved(h), []))
                for l in range(i + 1, j + 1):
                    levels[l].gens.append(h)
                    levels[l].rebuild(n)
                i = j
                jumped = True
                break
            if jumped:
                break
        if not jumped:
            i -= 1
    return levels


class PermGroup:
    """Permutation group given by generators, with a stabilizer chain."""

    def __init__(
        self,
        degree: int,
        generators: Iterable[Sequence[int]] = (),
        base: Sequence[int] = (),
        name: str | None = None,
        _levels: list[_Level] | None = None,
    ):
        self.degree = int(degree)
        gens = []
        seen = set()
        for g in generators:
            g = g if isinstance(g, Perm) else Perm(g)
            if len(g) != self.degree:
                raise GroupError(f"generator of degree {len(g)} in group of degree {self.degree}")
            if _is_id(g) or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.generators: list[Perm] = gens
        self.name = name
        self._levels = _levels if _levels is not None else _schreier_sims(self.degree, gens, base)
        self.order = math.prod(len(l.transversal) for l in self._levels)

    # -- chain data ------------------------------------------------------
    @property
    def base(self) -> list[int]:
        return [l.point for l in self._levels]

    @property
    def strong_generators(self) -> list[Perm]:
        out = []
        seen = set()
        for l in self._levels:
            for g in l.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def basic_orbit(self, i: int) -> list[int]:
        return list(self._levels[i].transversal)

    def transversal(self, i: int) -> dict:
        return self._levels[i].transversal

    def with_base(self, base: Sequence[int]) -> "PermGroup":
        """Same group, chain rebuilt so that the base starts with ``base``."""
        if list(base) == self.base[: len(base)]:
            return self
        return PermGroup(self.degree, self.strong_generators, base=base, name=self.name)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<PermGroup{label} degree={self.degree} order={self.order}>"

    # -- membership ------------------------------------------------------
    def contains(self, p: Sequence[int]) -> bool:
        if len(p) != self.degree:
            raise GroupError(f"degree mismatch: {len(p)} vs {self.degree}")
        p = p if isinstance(p, Perm) else Perm._raw(tuple(p))
        h, j = _sift(self._levels, p)
        return j == len(self._levels) and _is_id(h)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        return self.order == other.order and self.is_subgroup_of(other)

    def is_trivial(self) -> bool:
        return self.order == 1

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    # -- orbits ----------------------------------------------------------
    def orbit(self, a: int) -> list[int]:
        if not 0 <= a < self.degree:
            raise GroupError(f"point {a} out of range for degree {self.degree}")
        seen = {a}
        out = [a]
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    queue.append(y)
        return out

    def orbits(self) -> list[list[int]]:
        seen = set()
        out = []
        for a in range(self.degree):
            if a not in seen:
                orb = self.orbit(a)
                seen.update(orb)
                out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        points = list(dict.fromkeys(points))
        for a in points:
            if not 0 <= a < self.degree:
                raise GroupError(f"point {a} out of range for degree {self.degree}")
        g = self.with_base(points)
        tail = g._levels[len(points):]
        gens = tail[0].gens if tail else []
        levels = [_Level(l.point, list(l.gens), dict(l.transversal)) for l in tail]
        return PermGroup(self.degree, gens, _levels=levels)

    def stabilizer(self, a: int) -> "PermGroup":
        return self.pointwise_stabilizer([a])

    def orbit_and_stabilizer(self, a: int) -> tuple[list[int], "PermGroup"]:
        return self.orbit(a), self.stabilizer(a)

    # -- enumeration -----------------------------------------------------
    def elements(self, limit: int = ENUMERATION_LIMIT) -> Iterator[Perm]:
        """Every element exactly once, coset by coset along the chain."""
        if self.order > limit:
            raise GroupError(f"group order {self.order} exceeds enumeration limit {limit}")
        levels = self._levels
        n = self.degree

        # g = u_{k-1} ... u_1 u_0; expand from the top level down
        def rec_top(i: int, prefix: Perm) -> Iterator[Perm]:
            if i == len(levels):
                yield prefix
                return
            for u in levels[i].transversal.values():
                yield from rec_top(i + 1, compose(u, prefix))

        yield from rec_top(0, Perm.identity(n))

    def element_blocks(self, limit: int = ENUMERATION_LIMIT) -> Iterator[np.ndarray]:
        """All elements as rows of integer arrays, one block per top-level coset."""
        if self.order > limit:
            raise GroupError(f"group order {self.order} exceeds enumeration limit {limit}")
        dtype = np.uint8 if self.degree <= 256 else (np.uint16 if self.degree <= 65536 else np.int64)
        levels = self._levels
        if not levels:
            yield np.arange(self.degree, dtype=dtype)[None, :]
            return
        sub = np.arange(self.degree, dtype=dtype)[None, :]
        for lev in reversed(levels[1:]):
            parts = [np.asarray(u, dtype=dtype)[sub] for u in lev.transversal.values()]
            sub = np.concatenate(parts, axis=0)
        for u in levels[0].transversal.values():
            yield np.asarray(u, dtype=dtype)[sub]

    def element_array(self, limit: int = ENUMERATION_LIMIT) -> np.ndarray:
        return np.concatenate(list(self.element_blocks(limit)), axis=0)

    # -- structure -------------------------------------------------------
    def closure_with(self, extra: Iterable[Sequence[int]]) -> "PermGroup":
        extra = [g for g in extra if not self.contains(g)]
        if not extra:
            return self
        return PermGroup(self.degree, self.strong_generators + list(extra), base=self.base, name=None)

    def normal_closure(self, gens: Iterable[Sequence[int]]) -> "PermGroup":
        """Smallest normal subgroup of ``self`` containing ``gens``."""
        H = PermGroup(self.degree, gens)
        changed = True
        while changed:
            changed = False
            for x in list(H.generators):
                for g in self.generators:
                    y = compose(compose(inverse(g), x), g)
                    if not H.contains(y):
                        H = PermGroup(self.degree, H.generators + [y], base=H.base)
                        changed = True
        return H

    def derived_subgroup(self) -> "PermGroup":
        gens = self.generators
        comms = []
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                c = compose(compose(inverse(a), inverse(b)), compose(a, b))
                if not _is_id(c):
                    comms.append(c)
        return self.normal_closure(comms)

    def derived_series(self) -> list["PermGroup"]:
        series = [self]
        while series[-1].order > 1:
            d = series[-1].derived_subgroup()
            if d.order == series[-1].order:
                break
            series.append(d)
        return series

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].order == 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(compose(a, b) == compose(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def minimal_block(self, a: int, b: int) -> list[int]:
        """Block system generated by joining ``a`` and ``b`` (Atkinson), as a class label per point."""
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        parent[find(b)] = find(a)
        queue = [(a, b)]
        while queue:
            x, y = queue.pop()
            for g in self.generators:
                u, v = find(g[x]), find(g[y])
                if u != v:
                    parent[v] = u
                    queue.append((u, v))
        return [find(x) for x in range(self.degree)]

    def block_system(self) -> list[list[int]] | None:
        """A nontrivial block system of a transitive group, or None if primitive."""
        if not self.is_transitive():
            raise GroupError("primitivity is only defined for transitive groups")
        if self.degree <= 2:
            return None
        reps = [orb[0] for orb in self.stabilizer(0).orbits() if orb[0] != 0]
        for b in reps:
            labels = self.minimal_block(0, b)
            classes: dict[int, list[int]] = {}
            for x, c in enumerate(labels):
                classes.setdefault(c, []).append(x)
            if len(classes) > 1:
                return sorted(classes.values())
        return None

    def is_primitive(self) -> bool:
        return self.block_system() is None

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order == self.degree

    def restriction(self, points: Sequence[int]) -> tuple["PermGroup", bool]:
        """Induced action on an invariant set, re-indexed by the order of ``points``."""
        pts = list(points)
        index = {x: i for i, x in enumerate(pts)}
        if len(index) != len(pts):
            raise GroupError("repeated points in restriction domain")
        gens = []
        for g in self.generators:
            try:
                gens.append(Perm._raw([index[g[x]] for x in pts]))
            except KeyError:
                raise GroupError("restriction domain is not invariant") from None
        R = PermGroup(len(pts), gens)
        return R, R.order == self.order

    def r_part(self, r: int) -> int:
        o, part = self.order, 1
        while o % r == 0:
            o //= r
            part *= r
        return part


def group_from_generators(gens: Sequence[Sequence[int]], degree: int | None = None) -> PermGroup:
    if degree is None:
        if not gens:
            raise GroupError("degree required for an empty generator list")
        degree = len(gens[0])
    return PermGroup(degree, gens)


def symmetric_group(n: int) -> PermGroup:
    gens = []
    if n >= 2:
        gens.append(Perm.from_cycles(n, (0, 1)))
    if n >= 3:
        gens.append(Perm.from_cycles(n, tuple(range(n))))
    return PermGroup(n, gens, name=f"Sym({n})")


def alternating_group(n: int) -> PermGroup:
    gens = [Perm.from_cycles(n, (0, 1, i)) for i in range(2, n)]
    return PermGroup(n, gens, name=f"Alt({n})")


def cyclic_group(n: int) -> PermGroup:
    gens = [Perm.from_cycles(n, tuple(range(n)))] if n > 1 else []
    return PermGroup(n, gens, name=f"C{n}")


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of an n-gon on its n vertices."""
    rot = Perm.from_cycles(n, tuple(range(n))) if n > 1 else Perm.identity(n)
    refl = Perm([(-i) % n for i in range(n)])
    return PermGroup(n, [rot, refl], name=f"D{n}")


def trivial_group(n: int) -> PermGroup:
    return PermGroup(n, [], name="1")


# -- array helpers used by enumeration-based algorithms -----------------

def _compose_rows(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Row-wise composition: (A*B)[i, x] = B[i, A[i, x]]."""
    return np.take_along_axis(B, A.astype(np.intp), axis=1)


def _power_rows(A: np.ndarray, k: int) -> np.ndarray:
    n = A.shape[1]
    result = np.broadcast_to(np.arange(n, dtype=A.dtype), A.shape).copy()
    base = A
    while k:
        if k & 1:
            result = _compose_rows(result, base)
        base = _compose_rows(base, base)
        k >>= 1
    return result


def _row_keys(A: np.ndarray) -> np.ndarray:
    A = np.ascontiguousarray(A)
    return A.view(np.dtype((np.void, A.dtype.itemsize * A.shape[1]))).ravel()


def _conjugates(G: np.ndarray, x: Sequence[int]) -> np.ndarray:
    """Rows g^-1 x g for every row g of G."""
    x = np.asarray(x, dtype=np.intp)
    out = np.empty_like(G)
    rows = np.arange(G.shape[0])[:, None]
    out[rows, G.astype(np.intp)] = G[:, x]
    return out


def normalizing_rows(G: np.ndarray, H: PermGroup, member_keys: np.ndarray | None = None) -> np.ndarray:
    """Boolean mask of rows g of G with H^g = H."""
    if member_keys is None:
        member_keys = _row_keys(H.element_array().astype(G.dtype))
    mask = np.ones(G.shape[0], dtype=bool)
    for x in H.generators:
        conj = _conjugates(G, x)
        mask &= np.isin(_row_keys(conj), member_keys)
    return mask


def group_from_rows(degree: int, rows: Iterable[Sequence[int]], seed: PermGroup | None = None) -> PermGroup:
    """Group generated by a set of rows, adding only rows not already generated."""
    G = seed if seed is not None else PermGroup(degree, [])
    for row in rows:
        p = Perm._raw(tuple(int(v) for v in row))
        if not G.contains(p):
            G = PermGroup(degree, G.generators + [p], base=G.base)
    return G


def normalizer_by_enumeration(G: PermGroup, H: PermGroup, limit: int = ENUMERATION_LIMIT) -> PermGroup:
    """N_G(H) by scanning every element of G."""
    keys = None
    N = PermGroup(G.degree, H.generators)
    for block in G.element_blocks(limit):
        if keys is None:
            keys = _row_keys(H.element_array().astype(block.dtype))
        mask = normalizing_rows(block, H, keys)
        N = group_from_rows(G.degree, block[mask], seed=N)
    return N


def sylow_and_normalizer(G: PermGroup, r: int, limit: int = ENUMERATION_LIMIT) -> tuple[PermGroup, PermGroup]:
    """A Sylow r-subgroup P (grown from r-elements) and N_G(P), both by enumeration."""
    if G.order > limit:
        raise GroupError(f"group order {G.order} exceeds enumeration limit {limit}")
    target = G.r_part(r)
    relts = []
    for block in G.element_blocks(limit):
        ident = np.arange(G.degree, dtype=block.dtype)
        pw = _power_rows(block, target)
        relts.append(block[(pw == ident).all(axis=1)])
    R = np.concatenate(relts, axis=0)
    P = PermGroup(G.degree, [])
    while P.order < target:
        keys = _row_keys(P.element_array().astype(R.dtype))
        inside = np.isin(_row_keys(R), keys)
        mask = ~inside & normalizing_rows(R, P, keys)
        idx = np.flatnonzero(mask)
        if idx.size == 0:
            raise GroupError("Sylow growth stalled")
        P = PermGroup(G.degree, P.generators + [Perm._raw(tuple(int(v) for v in R[idx[0]]))], base=P.base)
    return P, normalizer_by_enumeration(G, P, limit)


def r_radical(G: PermGroup, r: int) -> PermGroup:
    """Largest normal r-subgroup, as the core of a Sylow r-subgroup."""
    if G.r_part(r) == 1:
        return PermGroup(G.degree, [])
    P, _ = sylow_and_normalizer(G, r)
    core = P.element_array()
    while True:
        keys = _row_keys(core)
        keep = np.ones(core.shape[0], dtype=bool)
        for g in G.generators:
            # x stays iff g x g^-1 is still in the set, i.e. x lies in core^g
            ginv = np.asarray(inverse(g), dtype=np.intp)
            gg = np.asarray(g, dtype=np.intp)
            # row-wise g * x * g^-1: point a -> ginv[x[g[a]]]
            moved = ginv[core[:, gg].astype(np.intp)].astype(core.dtype)
            keep &= np.isin(_row_keys(moved), keys)
        if keep.all():
            break
        core = core[keep]
    return group_from_rows(G.degree, core)
