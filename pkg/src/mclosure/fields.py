"""Finite fields GF(p^k) and dense matrices over them.

Elements are integers 0..q-1: the polynomial sum c_i x^i is stored as sum c_i p^i.
All arithmetic is vectorized over numpy integer arrays.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

FIELD_LIMIT = 2**20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, k) with q = p**k, or None."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p, k = fs[0], 0
    while q % p == 0:
        q //= p
        k += 1
    return p, k


def _polymulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    k = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for j in range(k + 1):
                prod[d - k + j] = (prod[d - k + j] - c * f[j]) % p
    out = prod[:k] + [0] * (k - len(prod[:k]))
    return out


def _x_power_is_one(e: int, f: list[int], p: int) -> bool:
    k = len(f) - 1
    result = [1] + [0] * (k - 1)
    base = ([0, 1] + [0] * (k - 2)) if k > 1 else [(-f[0]) % p]
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result == [1] + [0] * (k - 1)


def _primitive_modulus(p: int, k: int) -> list[int]:
    q = p**k
    factors = prime_factors(q - 1)
    # coefficients (c_{k-1}, ..., c_0) in lexicographic order
    for coeffs in itertools.product(range(p), repeat=k):
        f = list(reversed(coeffs)) + [1]
        if f[0] == 0:
            continue
        if _x_power_is_one(q - 1, f, p) and all(not _x_power_is_one((q - 1) // l, f, p) for l in factors):
            return f
    raise FieldError(f"no primitive polynomial found for GF({p}^{k})")


class Field:
    """GF(p^k) with a primitive modulus; the class of x is a primitive element."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be positive")
        if p**k > FIELD_LIMIT:
            raise FieldError(f"field order {p}^{k} exceeds {FIELD_LIMIT}")
        self.p, self.k, self.q = p, k, p**k
        self.modulus = _primitive_modulus(p, k)
        q = self.q
        self._weights = p ** np.arange(k, dtype=np.int64)
        self.digits = (np.arange(q, dtype=np.int64)[:, None] // self._weights) % p
        exp = np.empty(q - 1, dtype=np.int64)
        cur = [1] + [0] * (k - 1)
        xpoly = ([0, 1] + [0] * (k - 2)) if k > 1 else [(-self.modulus[0]) % p]
        for i in range(q - 1):
            exp[i] = sum(c * p**j for j, c in enumerate(cur))
            cur = _polymulmod(cur, xpoly, self.modulus, p)
        self.exp = exp
        self.log = np.full(q, -1, dtype=np.int64)
        self.log[exp] = np.arange(q - 1)
        self.primitive_element = int(exp[1 % (q - 1)]) if q > 2 else 1
        self._neg = self.encode((-self.digits) % p)
        self._inv = np.zeros(q, dtype=np.int64)
        self._inv[1:] = exp[(-self.log[1:]) % (q - 1)]

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, tuple(self.modulus)))

    # -- scalar/vector arithmetic ------------------------------------------
    def encode(self, digits: np.ndarray) -> np.ndarray:
        return np.asarray(digits, dtype=np.int64) @ self._weights

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        return self.encode((self.digits[a] + self.digits[b]) % self.p)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (-a) % self.p if self.k == 1 else self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        a, b = np.broadcast_arrays(a, b)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        lg = self.log[a]
        out = self.exp[(lg * e) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        from math import gcd

        return (self.q - 1) // gcd(int(self.log[a]), self.q - 1)

    def sum(self, a, axis: int):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        axis = axis % a.ndim
        return self.encode(self.digits[a].sum(axis=axis) % self.p)

    def root_of_unity(self, r: int) -> int | None:
        """A primitive r-th root of unity, if r divides q - 1."""
        if (self.q - 1) % r:
            return None
        return int(self.exp[(self.q - 1) // r])

    def roots(self, c: int, r: int) -> list[int]:
        """All x with x**r == c."""
        xs = np.arange(self.q)
        return [int(x) for x in xs[self.pow(xs, r) == c]]

    def coeffs(self, a: int) -> list[int]:
        return [int(v) for v in self.digits[a]]

    def from_coeffs(self, cs) -> int:
        cs = list(cs) + [0] * (self.k - len(cs))
        return int(sum(int(c) % self.p * self.p**i for i, c in enumerate(cs)))

    # -- matrices -------------------------------------------------------------
    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def matmul(self, A, B) -> np.ndarray:
        A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
        if self.k == 1:
            if self.p < 2**15:
                return (A @ B) % self.p
            return np.asarray((A.astype(object) @ B.astype(object)) % self.p, dtype=np.int64)
        prod = self.mul(A[..., :, :, None], B[..., None, :, :])
        return self.sum(prod, axis=-2)

    def matpow(self, A, e: int) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        if e < 0:
            A, e = self.matinv(A), -e
        result = self.identity(A.shape[0])
        while e:
            if e & 1:
                result = self.matmul(result, A)
            A = self.matmul(A, A)
            e >>= 1
        return result

    def kron(self, A, B) -> np.ndarray:
        A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
        prod = self.mul(A[:, None, :, None], B[None, :, None, :])
        return prod.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])

    def scalar(self, c: int, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64) * int(c)

    def row_reduce(self, A) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and pivot columns."""
        A = np.array(A, dtype=np.int64)
        rows, cols = A.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(A[r:, c])
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                A[[r, piv]] = A[[piv, r]]
            A[r] = self.mul(A[r], self.inv(A[r, c]))
            others = np.flatnonzero(A[:, c])
            others = others[others != r]
            if others.size:
                factors = A[others, c][:, None]
                A[others] = self.sub(A[others], self.mul(factors, A[r][None, :]))
            pivots.append(c)
            r += 1
        return A, pivots

    def rank(self, A) -> int:
        return len(self.row_reduce(A)[1])

    def nullspace(self, A) -> np.ndarray:
        """Basis (as rows) of {x : A x = 0}."""
        R, pivots = self.row_reduce(A)
        cols = R.shape[1]
        free = [c for c in range(cols) if c not in pivots]
        basis = []
        for f in free:
            x = np.zeros(cols, dtype=np.int64)
            x[f] = 1
            for i, pc in enumerate(pivots):
                x[pc] = self.neg(R[i, f])
            basis.append(x)
        return np.array(basis, dtype=np.int64).reshape(len(basis), cols)

    def matinv(self, A) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        n = A.shape[0]
        R, pivots = self.row_reduce(np.concatenate([A, self.identity(n)], axis=1))
        if pivots[:n] != list(range(n)):
            raise FieldError("matrix is singular")
        return R[:, n:]

    def is_invertible(self, A) -> bool:
        return self.rank(A) == np.asarray(A).shape[0]

    def has_order(self, A, n: int) -> bool:
        """True iff the matrix A has multiplicative order exactly n."""
        I = self.identity(np.asarray(A).shape[0])
        if not np.array_equal(self.matpow(A, n), I):
            return False
        return all(not np.array_equal(self.matpow(A, n // l), I) for l in prime_factors(n))

    def mult_matrix(self, c: int) -> np.ndarray:
        """k x k matrix over GF(p) of y -> c*y in the basis 1, x, ..., x^(k-1) (row vectors)."""
        basis = self.p ** np.arange(self.k, dtype=np.int64)
        return self.digits[self.mul(basis, c)]

    def frobenius_coords(self) -> np.ndarray:
        """k x k matrix over GF(p) of y -> y^p in the basis 1, x, ..., x^(k-1)."""
        basis = self.p ** np.arange(self.k, dtype=np.int64)
        return self.digits[self.pow(basis, self.p)]


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> Field:
    return Field(p, k)


def prime_field(p: int) -> Field:
    return field_make(p, 1)
