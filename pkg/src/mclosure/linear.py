"""Matrix groups over GF(p^k) and their permutation actions on vectors.

Matrices act on row vectors: v -> v M. A vector v of GF(q)^d has index
sum v_i q^(d-1-i); on the nonzero-vector domain that index is shifted down by 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .fields import Field, FieldError, field_make
from .perm import GroupError, Perm, PermGroup

DOMAIN_LIMIT = 2**20


@dataclass
class MatrixGroup:
    field: Field
    dim: int
    generators: list
    note: str = ""
    _images: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            g = np.asarray(g, dtype=np.int64)
            if g.shape != (self.dim, self.dim):
                raise FieldError(f"generator of shape {g.shape}, expected {(self.dim, self.dim)}")
            if not self.field.is_invertible(g):
                raise FieldError("generator is not invertible")
            gens.append(g)
        self.generators = gens

    @property
    def degree(self) -> int:
        return self.field.q**self.dim

    def perm_image(self, domain: str = "all", limit: int = DOMAIN_LIMIT) -> PermGroup:
        if domain not in self._images:
            self._images[domain] = mat_to_perm(self, domain, limit)
        return self._images[domain]

    @property
    def order(self) -> int:
        return self.perm_image("nonzero").order

    def contains(self, M) -> bool:
        return self.perm_image("nonzero").contains(matrix_perm(self.field, M, "nonzero"))

    def identity(self) -> np.ndarray:
        return self.field.identity(self.dim)

    def with_generators(self, extra, note: str | None = None) -> "MatrixGroup":
        return MatrixGroup(self.field, self.dim, list(self.generators) + list(extra), note or self.note)


# -- vectors and permutations -------------------------------------------------

def all_vectors(F: Field, d: int) -> np.ndarray:
    idx = np.arange(F.q**d, dtype=np.int64)
    return np.stack([(idx // F.q ** (d - 1 - i)) % F.q for i in range(d)], axis=1)


def vector_index(F: Field, v) -> int:
    idx = 0
    for x in v:
        idx = idx * F.q + int(x)
    return idx


def index_vector(F: Field, idx: int, d: int) -> list[int]:
    return [(idx // F.q ** (d - 1 - i)) % F.q for i in range(d)]


def _vector_images(F: Field, M, vecs: np.ndarray) -> np.ndarray:
    d = vecs.shape[1]
    weights = F.q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    out = np.empty(vecs.shape[0], dtype=np.int64)
    step = max(1, 2**22 // max(1, d * d * F.k))
    for s in range(0, vecs.shape[0], step):
        out[s:s + step] = F.matmul(vecs[s:s + step], M) @ weights
    return out


def matrix_perm(F: Field, M, domain: str = "all", vecs: np.ndarray | None = None) -> Perm:
    M = np.asarray(M, dtype=np.int64)
    if vecs is None:
        vecs = all_vectors(F, M.shape[0])
    img = _vector_images(F, M, vecs)
    if domain == "nonzero":
        img = img[1:] - 1
    elif domain != "all":
        raise ValueError(f"unknown domain {domain!r}")
    return Perm._raw(tuple(int(x) for x in img))


def mat_to_perm(G: MatrixGroup, domain: str = "all", limit: int = DOMAIN_LIMIT) -> PermGroup:
    F = G.field
    n = F.q**G.dim
    if n > limit:
        raise GroupError(f"domain of {n} vectors exceeds the limit {limit}")
    vecs = all_vectors(F, G.dim)
    gens = [matrix_perm(F, g, domain, vecs) for g in G.generators]
    degree = n if domain == "all" else n - 1
    return PermGroup(degree, gens, name=G.note or None)


# -- standard matrices -------------------------------------------------------------

def singer_matrix(p: int, a: int) -> np.ndarray:
    """Companion matrix of the primitive modulus of GF(p^a), as a matrix over GF(p)."""
    F = field_make(p, a)
    f = F.modulus
    t = np.zeros((a, a), dtype=np.int64)
    for i in range(a - 1):
        t[i, i + 1] = 1
    t[a - 1] = [(-c) % p for c in f[:a]]
    if not field_make(p).has_order(t, p**a - 1):
        raise FieldError("Singer matrix has the wrong order")
    return t


def frobenius_matrix(p: int, a: int) -> np.ndarray:
    """Matrix over GF(p) of y -> y^p on GF(p^a) in the basis 1, x, ..., x^(a-1)."""
    F = field_make(p, a)
    s = F.frobenius_coords()
    P = field_make(p)
    t = singer_matrix(p, a)
    ok = P.has_order(s, a) if a > 1 else np.array_equal(s, P.identity(1))
    if not ok:
        raise FieldError("Frobenius matrix has the wrong order")
    if not np.array_equal(P.matmul(P.matmul(P.matinv(s), t), s), P.matpow(t, p)):
        raise FieldError("Frobenius matrix does not conjugate t to t^p")
    return s


def kron_lift(F: Field, g, m: int) -> np.ndarray:
    """g (x) I_m."""
    return F.kron(g, F.identity(m))


def kron_right(F: Field, k: int, z) -> np.ndarray:
    """I_k (x) z."""
    return F.kron(F.identity(k), z)


def blowup_embedding(F: Field, M) -> np.ndarray:
    """GL(k, p^m) -> GL(km, p): each entry becomes its m x m multiplication matrix."""
    M = np.asarray(M, dtype=np.int64)
    k, m = M.shape[0], F.k
    out = np.zeros((k * m, k * m), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            out[i * m:(i + 1) * m, j * m:(j + 1) * m] = F.mult_matrix(int(M[i, j]))
    return out


def blowup_frobenius(F: Field, k: int) -> np.ndarray:
    """Matrix over GF(p) applying y -> y^p to each of k coordinates."""
    return np.kron(np.eye(k, dtype=np.int64), F.frobenius_coords())


def entrywise_frobenius(F: Field, M) -> np.ndarray:
    return F.frobenius(np.asarray(M, dtype=np.int64))


def general_linear_group(F: Field, d: int) -> MatrixGroup:
    """GL(d, q): a primitive corner scalar, a transvection and a signed cyclic shift."""
    w = F.primitive_element
    a = F.identity(d)
    a[0, 0] = w
    if d == 1:
        return MatrixGroup(F, 1, [a], f"GL(1,{F.q})")
    b = np.zeros((d, d), dtype=np.int64)
    b[0, 0] = F.neg(1)
    b[0, d - 1] = 1
    for i in range(1, d):
        b[i, i - 1] = F.neg(1)
    c = F.identity(d)
    c[0, 1] = 1
    gens = [a, b, c] if F.q > 2 else [b, c]
    return MatrixGroup(F, d, gens, f"GL({d},{F.q})")


# -- affine groups -----------------------------------------------------------------

def affine_group(G: MatrixGroup, limit: int = DOMAIN_LIMIT) -> PermGroup:
    """Translations plus the linear group, on all q^d vectors."""
    F, d = G.field, G.dim
    n = F.q**d
    if n > limit:
        raise GroupError(f"domain of {n} vectors exceeds the limit {limit}")
    vecs = all_vectors(F, d)
    weights = F.q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    gens = []
    for i in range(d):
        for j in range(F.k):
            shift = np.zeros(d, dtype=np.int64)
            shift[i] = F.p**j
            img = F.add(vecs, shift[None, :]) @ weights
            gens.append(Perm._raw(tuple(int(x) for x in img)))
    gens += list(G.perm_image("all").generators)
    A = PermGroup(n, gens, name=f"A({G.note})" if G.note else None)
    if A.order != n * G.order:
        raise GroupError("affine group has the wrong order")
    return A


def gammal1_perm(p: int, d: int) -> PermGroup:
    """GammaL(1, p^d) acting on the p^d field elements (0 is fixed)."""
    F = field_make(p, d)
    xs = np.arange(F.q)
    mult = F.mul(xs, F.primitive_element)
    frob = F.frobenius(xs)
    gens = [Perm._raw(tuple(int(x) for x in mult))]
    if d > 1:
        gens.append(Perm._raw(tuple(int(x) for x in frob)))
    return PermGroup(F.q, gens, name=f"GammaL(1,{F.q})")


def agammal1(p: int, d: int) -> PermGroup:
    """AGammaL(1, p^d): translations, Singer multiplication and Frobenius."""
    F = field_make(p, d)
    xs = np.arange(F.q)
    gens = [Perm._raw(tuple(int(x) for x in F.add(xs, p**j))) for j in range(d)]
    gens += list(gammal1_perm(p, d).generators)
    G = PermGroup(F.q, gens, name=f"AGammaL(1,{F.q})")
    if G.order != F.q * (F.q - 1) * d:
        raise GroupError("AGammaL(1,q) has the wrong order")
    return G


# -- irreducibility -----------------------------------------------------------------

def spin(F: Field, gens, v) -> np.ndarray:
    """Row-reduced basis of the smallest invariant subspace containing v."""
    basis = np.zeros((0, len(v)), dtype=np.int64)
    queue = [np.asarray(v, dtype=np.int64)]
    while queue:
        w = queue.pop()
        R, piv = F.row_reduce(np.vstack([basis, w[None, :]]))
        if len(piv) == basis.shape[0]:
            continue
        basis = R[:len(piv)]
        queue.extend(F.matmul(w[None, :], g)[0] for g in gens)
    return basis


def projective_points(F: Field, d: int):
    """Vectors whose first nonzero coordinate is 1."""
    for lead in range(d):
        rest = d - lead - 1
        for idx in range(F.q**rest):
            v = [0] * lead + [1] + index_vector(F, idx, rest) if rest else [0] * lead + [1]
            yield np.array(v, dtype=np.int64)


def invariant_subspace(G: MatrixGroup, budget: int = 2**16) -> np.ndarray | None:
    """A proper nonzero invariant subspace (basis rows), or None when irreducible."""
    F, d = G.field, G.dim
    count = (F.q**d - 1) // (F.q - 1)
    if count > budget:
        raise GroupError(f"{count} seed vectors exceed the spinning budget {budget}")
    for v in projective_points(F, d):
        W = spin(F, G.generators, v)
        if W.shape[0] < d:
            return W
    return None


def is_irreducible(G: MatrixGroup, budget: int = 2**16) -> bool:
    return invariant_subspace(G, budget) is None


# -- JSON -----------------------------------------------------------------------

def matrix_group_to_json(G: MatrixGroup) -> dict:
    F = G.field
    return {
        "p": F.p,
        "k": F.k,
        "modulus": list(F.modulus),
        "d": G.dim,
        "name": G.note,
        "generators": [[[F.coeffs(int(x)) for x in row] for row in g] for g in G.generators],
    }


def matrix_group_from_json(data: dict) -> MatrixGroup:
    F = field_make(int(data["p"]), int(data.get("k", 1)))
    if "modulus" in data and list(data["modulus"]) != F.modulus:
        raise FieldError(f"modulus {data['modulus']} differs from the canonical {F.modulus}")
    d = int(data["d"])
    gens = []
    for g in data["generators"]:
        gens.append(np.array([[F.from_coeffs(e) if isinstance(e, list) else int(e) for e in row] for row in g],
                             dtype=np.int64))
    return MatrixGroup(F, d, gens, data.get("name", ""))


def save_matrix_group(G: MatrixGroup, path: str | Path) -> None:
    Path(path).write_text(json.dumps(matrix_group_to_json(G)))


def load_matrix_group(path: str | Path) -> MatrixGroup:
    return matrix_group_from_json(json.loads(Path(path).read_text()))
