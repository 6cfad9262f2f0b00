"""Candidate lists of solvable primitive linear groups for parameters (p, d, a, e).

For e = r^k the candidates are assembled as
    H = < t (x) I_e, s (x) I_e, I_(a/b) (x) H_0 >
where t is a Singer cycle, s a Frobenius matrix and H_0 the preimage in N(F) of a
maximal solvable subgroup M of S = N/F. The subgroups M come from Sylow
normalizers computed on the spot, or from bundled generator data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .classical import classical_group
from .extraspecial import Normalizer, extraspecial_group, extraspecial_normalizer, geometry_name
from .fields import field_make, is_prime, prime_factors
from .linear import (
    MatrixGroup,
    blowup_embedding,
    blowup_frobenius,
    frobenius_matrix,
    is_irreducible,
    kron_lift,
    kron_right,
    singer_matrix,
)
from .perm import GroupError, PermGroup, normalizer_by_enumeration, r_radical, sylow_and_normalizer

SPO_DATA_PATH = Path(__file__).parent / "data" / "spo_subgroups.json"
NON_PARTLY_REGULAR_E = (2, 3, 4, 8, 9, 16)
ENUMERATION_THRESHOLD = 2_000_000
DOMAIN_BUDGET = 2**16

TABLE1 = {
    9: {"Sp(4,3)": (40, 192, 320, 1152)},
    8: {"Sp(6,2)": (42, 120, 1296), "O+(6,2)": (42, 120, 144), "O-(6,2)": (40, 1296)},
    4: {"Sp(4,2)": (20, 72), "O+(4,2)": (72,), "O-(4,2)": (12, 20)},
    3: {"Sp(2,3)": (24,)},
    2: {"Sp(2,2)": (6,), "O+(2,2)": (2,), "O-(2,2)": (6,)},
}

# (source, prime or None, structure, order); source is "whole", "sylow" or "data"
SPO_ENTRIES = {
    "Sp(2,2)": [("whole", None, "S_3", 6)],
    "Sp(2,3)": [("whole", None, "SL(2,3)", 24)],
    "O+(2,2)": [("whole", None, "S_2", 2)],
    "O-(2,2)": [("whole", None, "S_3", 6)],
    "O+(4,2)": [("whole", None, "S_3 wr S_2", 72)],
    "O-(4,2)": [("sylow", 5, "5:4", 20), ("sylow", 3, "S_3 x S_2", 12)],
    "Sp(4,2)": [("sylow", 3, "O+(4,2) = S_3 wr S_2", 72), ("sylow", 5, "5:4", 20)],
    "Sp(4,3)": [
        ("sylow", 5, "D_20.2", 40),
        ("data", None, "2^{1+4}:S_3", 192),
        ("data", None, "2^{1+4}:D_10", 320),
        ("data", None, "Sp(2,3) wr S_2", 1152),
    ],
    "O+(6,2)": [
        ("sylow", 3, "(S_3 wr S_2) x S_2", 144),
        ("sylow", 5, "(5:4) x S_3", 120),
        ("sylow", 7, "7:6", 42),
    ],
    "O-(6,2)": [
        ("data", None, "3^{1+2}:(2.S_4)", 1296),
        ("data", None, "3^3:(S_4 x S_2)", 1296),
        ("sylow", 5, "(5:4) x S_2", 40),
    ],
    "Sp(6,2)": [
        ("data", None, "3^{1+2}:(2.S_4)", 1296),
        ("data", None, "3^3:(S_4 x S_2)", 1296),
        ("sylow", 5, "(5:4) x S_3", 120),
        ("sylow", 7, "7:6", 42),
    ],
}


class CatalogError(ValueError):
    pass


def _norm(name: str) -> str:
    return name.replace("−", "-").replace(" ", "")


# -- parameters -----------------------------------------------------------------

def derive_b(p: int, r: int) -> int:
    """Least b >= 1 with p^b = 1 mod r^c (c = 2 for r = 2, else 1)."""
    if p == r:
        raise CatalogError("p must differ from r")
    mod = r * r if r == 2 else r
    if p % r == 0:
        raise CatalogError(f"{p} is divisible by {r}")
    b, x = 1, p % mod
    while x != 1:
        x = x * p % mod
        b += 1
    return b


def split_e(e: int) -> tuple[int, int]:
    """(r, k) with e = r^k and r in {2, 3}."""
    for r in (2, 3):
        k, x = 0, e
        while x % r == 0:
            x //= r
            k += 1
        if x == 1 and k >= 1:
            return r, k
    raise CatalogError(f"e = {e} is not a power of 2 or 3")


@dataclass(frozen=True)
class Parameters:
    p: int
    d: int
    a: int
    e: int

    @property
    def r(self) -> int:
        return split_e(self.e)[0]

    @property
    def k(self) -> int:
        return split_e(self.e)[1]

    @property
    def b(self) -> int:
        return derive_b(self.p, self.r)

    def as_dict(self) -> dict:
        return {"p": self.p, "d": self.d, "a": self.a, "e": self.e}


def validate_parameters(P: Parameters, require_listed_e: bool = False) -> list[str]:
    out = []
    if not is_prime(P.p):
        out.append(f"p = {P.p} is not prime")
    if P.a < 1 or P.e < 1:
        out.append("a and e must be positive")
        return out
    if P.d != P.a * P.e:
        out.append(f"d = {P.d} differs from a*e = {P.a * P.e}")
    if is_prime(P.p):
        for l in prime_factors(P.e) if P.e > 1 else []:
            if (P.p**P.a - 1) % l:
                out.append(f"{l} divides e but not p^a - 1 = {P.p**P.a - 1}")
    if require_listed_e and P.e not in NON_PARTLY_REGULAR_E:
        out.append(f"e = {P.e} is not among {NON_PARTLY_REGULAR_E}")
    return out


def table1_orders(e: int, S_name: str) -> tuple:
    row = TABLE1.get(e, {})
    key = _norm(S_name)
    if key not in row:
        raise CatalogError(f"({e}, {S_name}) is not listed")
    return row[key]


def candidate_order(p: int, a: int, e: int, s: int, a_div: int) -> int:
    if e <= 1:
        raise CatalogError("the order formula needs e > 1")
    if a % a_div:
        raise CatalogError(f"{a_div} does not divide {a}")
    if not any(s in orders for orders in TABLE1.get(e, {}).values()):
        raise CatalogError(f"|M| = {s} is not in the order table row for e = {e}")
    return (p**a - 1) * e * e * s * a_div


# -- maximal solvable subgroups of S -------------------------------------------------

@dataclass
class SolvableEntry:
    S_name: str
    structure: str
    order: int
    source: str
    group: PermGroup
    matrices: list

    def as_dict(self) -> dict:
        return {"S": self.S_name, "structure": self.structure, "order": self.order, "source": self.source}


@lru_cache(maxsize=None)
def load_spo_data(path: str | None = None) -> dict:
    return json.loads(Path(path or SPO_DATA_PATH).read_text())["groups"]


@lru_cache(maxsize=None)
def max_solvable_in_S(S_name: str) -> tuple[SolvableEntry, ...]:
    name = _norm(S_name)
    if name not in SPO_ENTRIES:
        raise CatalogError(f"no maximal solvable data for {S_name}")
    S = classical_group(name)
    data = None
    out = []
    for source, prime, structure, order in SPO_ENTRIES[name]:
        if source == "whole":
            M = S.perm
            mats = list(S.generators)
        elif source == "sylow":
            _, M = sylow_and_normalizer(S.perm, prime)
            mats = [S.matrix_of(g) for g in M.generators]
        else:
            if data is None:
                data = load_spo_data()
            rec = [x for x in data.get(name, []) if x["structure"] == structure]
            if len(rec) != 1:
                raise CatalogError(f"bundled data lacks {structure} in {name}")
            mats = [np.array(g, dtype=np.int64) for g in rec[0]["generators"]]
            if not all(S.preserves(A) for A in mats):
                raise CatalogError(f"bundled generator of {structure} does not preserve the form of {name}")
            M = PermGroup(S.perm.degree, [S.perm_of(A) for A in mats])
        if M.order != order:
            raise CatalogError(f"{structure} in {name} has order {M.order}, expected {order}")
        out.append(SolvableEntry(name, structure, order, source, M, mats))
    return tuple(out)


def verify_entry(entry: SolvableEntry) -> dict:
    """Order, solvability and the r-radical bound (trivial for Sp, at most 2 for O)."""
    S = classical_group(entry.S_name)
    rad = r_radical(entry.group, S.r).order
    bound = 1 if S.kind == "Sp" else 2
    return {
        "order_ok": entry.group.order == entry.order and entry.order in _table_row(entry.S_name),
        "solvable": entry.group.is_solvable(),
        "radical": rad,
        "radical_ok": rad <= bound,
    }


def _table_row(S_name: str) -> tuple:
    for row in TABLE1.values():
        if S_name in row:
            return row[S_name]
    return ()


# -- candidates -------------------------------------------------------------------

@dataclass
class CandidateGroup:
    name: str
    params: Parameters
    group: MatrixGroup | None
    provenance: dict
    expected_order: int | None
    caveats: list = field(default_factory=list)
    skipped: str | None = None

    @property
    def order(self) -> int | None:
        return self.group.order if self.group is not None else None


def _normalizer_data(P: Parameters, kind: str | None) -> Normalizer:
    K = field_make(P.p, P.b if P.a % P.b == 0 else 1)
    E = extraspecial_group(P.r, P.k, K, kind)
    return extraspecial_normalizer(E)


def _kron_assemble(P: Parameters, H0: MatrixGroup, t, s, m: int) -> MatrixGroup:
    K = H0.field
    gens = [kron_lift(K, t, P.e), kron_lift(K, s, P.e)]
    gens += [kron_right(K, m, x) for x in H0.generators]
    return MatrixGroup(K, m * P.e, gens, H0.note)


def assemble_candidates(P: Parameters, domain_budget: int = DOMAIN_BUDGET,
                        enumeration_threshold: int = ENUMERATION_THRESHOLD) -> list[CandidateGroup]:
    problems = validate_parameters(P)
    if problems:
        raise CatalogError("; ".join(problems))
    r, b = P.r, P.b
    if P.p == r:
        raise CatalogError("p must differ from r")
    out = []
    if P.a % b == 0:
        kinds = ["+"] if r == 2 else [None]
        branch = "b|a"
    else:
        kinds = ["+", "-"]
        branch = "b!|a"
    for kind in kinds:
        if b == 2 and branch == "b|a" and P.a != b:
            out.append(CandidateGroup(f"b=2,a={P.a}", P, None, {"branch": branch}, None,
                                      skipped="the b = 2 branch is implemented for a = 2 only"))
            continue
        Nz = _normalizer_data(P, kind)
        S_name = Nz.S.name
        if S_name not in TABLE1.get(P.e, {}):
            raise CatalogError(f"{S_name} is not in the order table row for e = {P.e}")
        for entry in max_solvable_in_S(S_name):
            name = f"{S_name}:{entry.structure}"
            prov = {"branch": branch, "S": S_name, "M": entry.structure, "M_order": entry.order,
                    "E_type": Nz.E.kind, "field": str(Nz.E.field)}
            if P.p**P.d > domain_budget:
                out.append(CandidateGroup(name, P, None, prov, None,
                                          skipped=f"p^d = {P.p ** P.d} exceeds the domain budget {domain_budget}"))
                continue
            H0 = Nz.preimage(entry.matrices, name)
            try:
                cand = _build(P, H0, Nz, entry, prov, enumeration_threshold)
            except GroupError as exc:
                cand = CandidateGroup(name, P, None, prov, None, skipped=str(exc))
            out.append(cand)
    return out


def _build(P: Parameters, H0: MatrixGroup, Nz: Normalizer, entry: SolvableEntry, prov: dict,
           threshold: int) -> CandidateGroup:
    p, a, b = P.p, P.a, P.b
    name = H0.note
    caveats = []
    t = None
    if b == 2 and a % b == 0:
        # a = b = 2: H_1 = H_0 in GL(e, p^2), blown up to GL(2e, p), then H = N_L(H_1)
        K = H0.field
        H1 = MatrixGroup(field_make(p), P.d, [blowup_embedding(K, g) for g in H0.generators], name)
        sigma = blowup_frobenius(K, P.e)
        L = MatrixGroup(field_make(p), P.d,
                        [blowup_embedding(K, g) for g in Nz.N.generators] + [sigma], "L")
        Lp, H1p = L.perm_image("nonzero"), H1.perm_image("nonzero")
        if Lp.order > threshold:
            H = H1
            caveats.append("possibly-non-maximal")
        else:
            NLH = normalizer_by_enumeration(Lp, H1p)
            extra = [g for g in NLH.generators if not H1p.contains(g)]
            H = H1.with_generators([_perm_to_matrix(L, g) for g in extra], name)
    else:
        t, s = singer_matrix(p, a), frobenius_matrix(p, a)
        H = _kron_assemble(P, H0, t, s, a)
    base = (p**a - 1) * P.e**2 * entry.order
    order = H.order
    expected = None
    if order % base == 0 and a % (order // base) == 0:
        expected = candidate_order(p, a, P.e, entry.order, order // base)
    cand = CandidateGroup(name, P, H, dict(prov, a_div=order // base if order % base == 0 else None),
                          expected, caveats)
    verify_candidate(cand, t)
    return cand


def _perm_to_matrix(G: MatrixGroup, g) -> np.ndarray:
    """Matrix of a linear permutation of the nonzero vectors of G's module."""
    from .linear import index_vector, matrix_perm, vector_index

    F, d = G.field, G.dim
    rows = []
    for j in range(d):
        e = [0] * d
        e[j] = 1
        rows.append(index_vector(F, g[vector_index(F, e) - 1] + 1, d))
    M = np.array(rows, dtype=np.int64)
    if tuple(matrix_perm(F, M, "nonzero")) != tuple(g):
        raise GroupError("permutation is not linear")
    return M


def verify_candidate(c: CandidateGroup, t_matrix=None) -> dict:
    H = c.group
    P = c.params
    Hp = H.perm_image("nonzero")
    report = {"solvable": Hp.is_solvable(), "irreducible": is_irreducible(H)}
    if c.expected_order is not None:
        report["order_ok"] = Hp.order == c.expected_order
    else:
        report["order_ok"] = False
    if t_matrix is not None:
        F = H.field
        tl = kron_lift(F, t_matrix, P.e)
        # generator 1 is s (x) I_e, which normalizes U instead
        report["U_central"] = all(np.array_equal(F.matmul(tl, g), F.matmul(g, tl))
                                  for i, g in enumerate(H.generators) if i != 1)
        report["U_order"] = F.has_order(tl, P.p**P.a - 1)
    bad = [k for k, v in report.items() if v is False]
    if bad:
        raise GroupError(f"candidate {c.name} failed verification: {bad}")
    c.provenance["verified"] = report
    return report


def entry_orders(S_name: str) -> list[int]:
    return [o for *_, o in SPO_ENTRIES[_norm(S_name)]]


def geometry_for(P: Parameters, kind: str | None = None) -> str:
    return geometry_name(extraspecial_group(P.r, P.k, field_make(P.p, P.b if P.a % P.b == 0 else 1), kind))
