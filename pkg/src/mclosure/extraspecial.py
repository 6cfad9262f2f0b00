"""Extraspecial r-groups E of order r^(2k+1) in GL(r^k, q) and their normalizers.

E is generated by X_1..X_k, Y_1..Y_k, Kronecker spreads of a 2-dimensional
(r = 2) or r-dimensional (r odd) building block. Basis vector j of E/Z is the
j-th generator in that order. The normalizer N of F = E U (U the scalars) is
built by realizing isometries A of E/Z: the images of the generators are fixed
by A up to scalars, and the conjugating matrix solves a linear system.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .fields import Field, FieldError
from .classical import ClassicalGroup, basis_quadratic, classical_group, commutator_form
from .linear import MatrixGroup
from .perm import GroupError, PermGroup


def matrix_closure(F: Field, gens, limit: int = 200_000) -> list[np.ndarray]:
    """All elements of the matrix group generated by gens (breadth-first)."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    d = gens[0].shape[0]
    ident = F.identity(d)
    seen = {ident.tobytes()}
    elems = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = F.matmul(x, g)
                key = y.tobytes()
                if key not in seen:
                    seen.add(key)
                    elems.append(y)
                    nxt.append(y)
                    if len(elems) > limit:
                        raise GroupError(f"matrix group exceeds {limit} elements")
        frontier = nxt
    return elems


def _spread(F: Field, block, pos: int, k: int, r: int) -> np.ndarray:
    left = F.identity(r**pos)
    right = F.identity(r ** (k - 1 - pos))
    return F.kron(F.kron(left, block), right)


def _quaternion_pair(F: Field) -> tuple[np.ndarray, np.ndarray]:
    m1 = int(F.neg(1))
    xs = np.arange(F.q)
    sq = F.mul(xs, xs)
    for x in range(F.q):
        hits = np.flatnonzero(F.add(sq[x], sq) == m1)
        if hits.size:
            y = int(hits[0])
            a = np.array([[0, 1], [m1, 0]], dtype=np.int64)
            b = np.array([[x, y], [y, int(F.neg(x))]], dtype=np.int64)
            return a, b
    raise FieldError(f"no solution of x^2 + y^2 = -1 in {F}")


@dataclass
class Extraspecial:
    field: Field
    r: int
    k: int
    kind: str  # "+" or "-" for r = 2, "odd" otherwise
    gens: list
    zeta: int
    powers: list  # gens[j]^r == powers[j] * I

    @property
    def dim(self) -> int:
        return self.r**self.k

    @property
    def rank(self) -> int:
        return 2 * self.k

    def group(self) -> MatrixGroup:
        return MatrixGroup(self.field, self.dim, self.gens, f"E{self.kind}({self.r}^{2 * self.k + 1})")

    def word(self, v) -> np.ndarray:
        F = self.field
        out = F.identity(self.dim)
        for j, c in enumerate(v):
            if int(c) % self.r:
                out = F.matmul(out, F.matpow(self.gens[j], int(c) % self.r))
        return out

    def _scalar_log(self, M) -> int:
        """j with M == zeta^j I."""
        F = self.field
        for j in range(self.r):
            if np.array_equal(M, F.scalar(int(F.pow(self.zeta, j)), self.dim)):
                return j
        raise GroupError("matrix is not a power of zeta times I")

    @cached_property
    def form(self) -> np.ndarray:
        """Commutator form: [g_i, g_j] = zeta^B[i, j]."""
        F, n = self.field, self.rank
        inv = [F.matinv(g) for g in self.gens]
        B = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                c = F.matmul(F.matmul(inv[i], inv[j]), F.matmul(self.gens[i], self.gens[j]))
                B[i, j] = self._scalar_log(c)
        return B

    def quadratic(self, v) -> int:
        """For r = 2: 0 if word(v)^2 = I and 1 if it is -I."""
        w = self.word(v)
        return self._scalar_log(self.field.matmul(w, w))

    @cached_property
    def word_table(self) -> dict:
        """Projectively normalized word matrix -> exponent vector."""
        table = {}
        for idx in range(self.r**self.rank):
            v = [(idx // self.r ** (self.rank - 1 - i)) % self.r for i in range(self.rank)]
            table[_normalize(self.field, self.word(v)).tobytes()] = tuple(v)
        return table

    def verify(self, limit: int = 200_000) -> dict:
        F = self.field
        elems = matrix_closure(F, self.gens, limit)
        order = len(elems)
        center = sum(
            1 for x in elems
            if all(np.array_equal(F.matmul(x, g), F.matmul(g, x)) for g in self.gens)
        )
        abelian_quotient = all(
            np.array_equal(F.matpow(g, self.r), F.scalar(c, self.dim)) for g, c in zip(self.gens, self.powers)
        )
        out = {"order": order, "center": center, "elementary_quotient": abelian_quotient}
        if order != self.r ** (2 * self.k + 1) or center != self.r or not abelian_quotient:
            raise GroupError(f"extraspecial verification failed: {out}")
        return out


def _normalize(F: Field, M) -> np.ndarray:
    flat = M.reshape(-1)
    lead = flat[np.flatnonzero(flat)[0]]
    return F.mul(M, F.inv(lead))


def extraspecial_group(r: int, k: int, F: Field, kind: str | None = None) -> Extraspecial:
    if r not in (2, 3):
        raise FieldError(f"unsupported r = {r}")
    if F.p == r:
        raise FieldError("characteristic must differ from r")
    if (F.q - 1) % r:
        raise FieldError(f"{F} has no primitive {r}-th root of unity")
    if k < 1:
        raise FieldError("k must be positive")
    if r == 2:
        kind = kind or "+"
        if kind not in "+-":
            raise FieldError(f"unknown type {kind!r}")
        m1 = int(F.neg(1))
        X = np.array([[1, 0], [0, m1]], dtype=np.int64)
        Y = np.array([[0, 1], [1, 0]], dtype=np.int64)
        blocks = [(X, Y)] * k
        pw = [(1, 1)] * k
        if kind == "-":
            blocks[0] = _quaternion_pair(F)
            pw[0] = (m1, m1)
        zeta = m1
    else:
        kind = "odd"
        zeta = F.root_of_unity(r)
        X = np.diag([int(F.pow(zeta, i)) for i in range(r)]).astype(np.int64)
        Y = np.zeros((r, r), dtype=np.int64)
        for i in range(r):
            Y[i, (i + 1) % r] = 1
        blocks = [(X, Y)] * k
        pw = [(1, 1)] * k
    xs = [_spread(F, blocks[i][0], i, k, r) for i in range(k)]
    ys = [_spread(F, blocks[i][1], i, k, r) for i in range(k)]
    powers = [pw[i][0] for i in range(k)] + [pw[i][1] for i in range(k)]
    return Extraspecial(F, r, k, kind, xs + ys, zeta, powers)


# -- normalizer -----------------------------------------------------------------

@dataclass
class Normalizer:
    E: Extraspecial
    F_group: MatrixGroup
    N: MatrixGroup
    S: ClassicalGroup
    lifts: list  # lifts[i] realizes S.generators[i]

    @property
    def geometry(self) -> str:
        return self.S.name

    @property
    def quotient(self) -> PermGroup:
        return self.S.perm

    @property
    def F_order(self) -> int:
        return (self.E.field.q - 1) * self.E.r ** (2 * self.E.k)

    @property
    def quotient_order(self) -> int:
        return self.S.order

    @property
    def order(self) -> int:
        return self.F_order * self.quotient_order

    def induced(self, M) -> np.ndarray:
        return induced_isometry(self.E, M)

    def lift(self, A) -> np.ndarray:
        M = realize_isometry(self.E, A)
        if M is None:
            raise GroupError("isometry cannot be realized in this field")
        return M

    def preimage(self, isometries, note: str = "") -> MatrixGroup:
        """Complete preimage in N of the subgroup of S generated by the given matrices."""
        return self.F_group.with_generators([self.lift(A) for A in isometries], note)


def realize_isometry(E: Extraspecial, A) -> np.ndarray | None:
    """M in GL(e, q) with M^-1 g_j M = c_j word(e_j A), or None if no scalars c_j fit."""
    F, e = E.field, E.dim
    A = np.asarray(A, dtype=np.int64) % E.r
    if not np.array_equal((A @ E.form @ A.T) % E.r, E.form % E.r):
        raise GroupError("matrix does not preserve the commutator form")
    images = []
    for j in range(E.rank):
        y = E.word(A[j])
        lam = int(F.matpow(y, E.r)[0, 0])
        want = int(F.mul(E.powers[j], F.inv(lam)))
        cands = [1] if want == 1 else F.roots(want, E.r)
        if not cands:
            return None
        images.append(F.mul(y, cands[0]))
    ident = F.identity(e)
    rows = []
    for x, y in zip(E.gens, images):
        # x M - M y = 0, with M flattened row-major
        rows.append(F.sub(F.kron(x, ident), F.kron(ident, y.T)))
    null = F.nullspace(np.vstack(rows))
    for vec in null:
        M = vec.reshape(e, e)
        if F.is_invertible(M):
            return M
    return None


def induced_isometry(E: Extraspecial, M) -> np.ndarray:
    F = E.field
    Minv = F.matinv(M)
    rows = []
    for g in E.gens:
        c = F.matmul(F.matmul(Minv, g), M)
        key = _normalize(F, c).tobytes()
        if key not in E.word_table:
            raise GroupError("matrix does not normalize E")
        rows.append(E.word_table[key])
    return np.array(rows, dtype=np.int64)


def geometry_name(E: Extraspecial) -> str:
    """Sp(2k, r), or O^sign(2k, 2) when r = 2 and the field lacks a square root of -1."""
    if E.r == 2 and (E.field.q - 1) % 4:
        return f"O{E.kind}({E.rank},2)"
    return f"Sp({E.rank},{E.r})"


def extraspecial_normalizer(E: Extraspecial) -> Normalizer:
    F = E.field
    if not np.array_equal(E.form % E.r, commutator_form(E.r, E.k)):
        raise GroupError("commutator form differs from the standard one")
    if E.r == 2:
        qb = [E.quadratic(np.eye(E.rank, dtype=np.int64)[j]) for j in range(E.rank)]
        if not np.array_equal(qb, basis_quadratic(E.k, E.kind)):
            raise GroupError("quadratic form differs from the standard one")
    S = classical_group(geometry_name(E))
    Fgroup = MatrixGroup(F, E.dim, list(E.gens) + [F.scalar(F.primitive_element, E.dim)], f"F{E.kind}")
    lifts = []
    for A in S.generators:
        M = realize_isometry(E, A)
        if M is None:
            raise GroupError(f"generator {A.tolist()} of {S.name} cannot be realized over {F}")
        if not np.array_equal(induced_isometry(E, M) % E.r, A % E.r):
            raise GroupError(f"lift of {A.tolist()} induces the wrong isometry")
        lifts.append(M)
    N = Fgroup.with_generators(lifts, f"N({S.name})")
    return Normalizer(E, Fgroup, N, S, lifts)


def _witt_sign(E: Extraspecial) -> str:
    """Sign of the quadratic form of a 2-type E: '+' if it has 2^(k-1)(2^k+1) zeros."""
    zeros = 0
    for idx in range(2**E.rank):
        v = [(idx >> (E.rank - 1 - i)) & 1 for i in range(E.rank)]
        zeros += E.quadratic(v) == 0
    return "+" if zeros == 2 ** (E.k - 1) * (2**E.k + 1) else "-"
