"""Small symplectic and orthogonal groups over GF(2) and GF(3).

The natural module is GF(r)^(2k) with the commutator form B of the extraspecial
group (basis X_1..X_k, Y_1..Y_k), and for orthogonal groups the quadratic form
recording which basis words square to -1. Groups are generated by the
form-preserving transvections, plus tensor-factor swaps which O+(4,2) needs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fields import field_make
from .linear import all_vectors, index_vector, matrix_perm, vector_index
from .perm import GroupError, Perm, PermGroup


def symplectic_order(n2: int, r: int) -> int:
    n = n2 // 2
    out = r ** (n * n)
    for i in range(1, n + 1):
        out *= r ** (2 * i) - 1
    return out


def orthogonal_order(sign: str, n2: int, r: int = 2) -> int:
    """|O^sign(2n, r)|, the full isometry group of a nondegenerate quadratic form."""
    n = n2 // 2
    eps = 1 if sign == "+" else -1
    out = 2 * r ** (n * (n - 1)) * (r**n - eps)
    for i in range(1, n):
        out *= r ** (2 * i) - 1
    return out


_NAME = re.compile(r"^(Sp|O\+|O-)\((\d+),(\d+)\)$")


def parse_name(name: str) -> tuple[str, int, int]:
    """'O-(6,2)' -> ('O-', 6, 2). Accepts the unicode minus sign."""
    m = _NAME.match(name.replace("−", "-").replace(" ", ""))
    if not m:
        raise GroupError(f"unknown classical group {name!r}")
    kind, n2, r = m.group(1), int(m.group(2)), int(m.group(3))
    if n2 % 2 or n2 < 2:
        raise GroupError(f"dimension {n2} must be even and positive")
    if r not in (2, 3) or (kind != "Sp" and r != 2):
        raise GroupError(f"unsupported group {name!r}")
    return kind, n2, r


def commutator_form(r: int, k: int) -> np.ndarray:
    """[X_i, Y_i] = zeta^B with the building blocks used for extraspecial groups."""
    n = 2 * k
    B = np.zeros((n, n), dtype=np.int64)
    # r = 2: X, Y anticommute; r odd: X^-1 Y^-1 X Y = zeta^-1 for X = diag(zeta^i), Y = shift
    c = 1 if r == 2 else r - 1
    for i in range(k):
        B[i, k + i] = c
        B[k + i, i] = (-c) % r
    return B


def basis_quadratic(k: int, sign: str) -> np.ndarray:
    """Values of the quadratic form on the basis (r = 2)."""
    Q = np.zeros(2 * k, dtype=np.int64)
    if sign == "-":
        Q[0] = Q[k] = 1
    return Q


def quadratic_value(B: np.ndarray, Qb: np.ndarray, v) -> int:
    v = np.asarray(v, dtype=np.int64) % 2
    val = int(v @ Qb)
    n = len(v)
    for i in range(n):
        if v[i]:
            for j in range(i + 1, n):
                if v[j]:
                    val += int(B[i, j])
    return val % 2


@dataclass
class ClassicalGroup:
    name: str
    kind: str
    r: int
    k: int
    form: np.ndarray
    quadratic: np.ndarray | None
    generators: list
    perm: PermGroup

    @property
    def dim(self) -> int:
        return 2 * self.k

    @property
    def order(self) -> int:
        return self.perm.order

    def perm_of(self, A) -> Perm:
        return matrix_perm(field_make(self.r), np.asarray(A) % self.r, "nonzero")

    def matrix_of(self, g) -> np.ndarray:
        """Matrix of a permutation of the nonzero vectors that is linear."""
        R = field_make(self.r)
        rows = []
        for j in range(self.dim):
            e = [0] * self.dim
            e[j] = 1
            rows.append(index_vector(R, g[vector_index(R, e) - 1] + 1, self.dim))
        A = np.array(rows, dtype=np.int64)
        if tuple(self.perm_of(A)) != tuple(g):
            raise GroupError("permutation is not induced by a linear map")
        return A

    def preserves(self, A) -> bool:
        A = np.asarray(A, dtype=np.int64) % self.r
        if not np.array_equal((A @ self.form @ A.T) % self.r, self.form):
            return False
        if self.quadratic is not None:
            for j in range(self.dim):
                if quadratic_value(self.form, self.quadratic, A[j]) != self.quadratic[j]:
                    return False
        return True


def _transvections(n: int, r: int, B: np.ndarray):
    for idx in range(1, r**n):
        v = np.array([(idx // r ** (n - 1 - i)) % r for i in range(n)], dtype=np.int64)
        yield (np.eye(n, dtype=np.int64) + np.outer(B @ v, v)) % r


def _factor_swaps(k: int):
    n = 2 * k
    for i in range(k - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        perm[k + i], perm[k + i + 1] = perm[k + i + 1], perm[k + i]
        A = np.zeros((n, n), dtype=np.int64)
        A[np.arange(n), perm] = 1
        yield A


@lru_cache(maxsize=None)
def classical_group(name: str) -> ClassicalGroup:
    kind, n2, r = parse_name(name)
    k = n2 // 2
    B = commutator_form(r, k)
    Qb = basis_quadratic(k, kind[1]) if kind != "Sp" else None
    target = symplectic_order(n2, r) if kind == "Sp" else orthogonal_order(kind[1], n2, r)
    G = ClassicalGroup(f"{kind}({n2},{r})", kind, r, k, B, Qb, [], PermGroup(r**n2 - 1, []))
    R = field_make(r)
    vecs = all_vectors(R, n2)
    gens, perm = [], G.perm
    for A in list(_transvections(n2, r, B)) + list(_factor_swaps(k)):
        if perm.order == target:
            break
        if not G.preserves(A):
            continue
        pa = matrix_perm(R, A, "nonzero", vecs)
        if perm.contains(pa):
            continue
        perm = PermGroup(r**n2 - 1, list(perm.generators) + [pa])
        gens.append(A)
    if perm.order != target:
        raise GroupError(f"{name}: generated order {perm.order}, expected {target}")
    G.generators, G.perm = gens, perm
    G.perm.name = G.name
    return G
