"""Search oracle producing src/mclosure/data/spo_subgroups.json.

The non-Sylow maximal solvable subgroups are found as normalizers inside the
permutation image of S:

  Sp(4,3), order 1152   N(K), K = the four sign changes on two orthogonal planes
  Sp(4,3), order 1920   N(T) for T = <t^y> extraspecial of order 32 (y of order 5)
           orders 192, 320 inside it: N(<T, x>) for x of order 3 and 5
  Sp(6,2), O-(6,2)      N(T) for the subgroups T of order 27 of a Sylow
                        3-subgroup whose normalizer has order 1296

Usage: python tools/build_spo_data.py [--out PATH]
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

import numpy as np

from mclosure.catalog import SPO_DATA_PATH
from mclosure.classical import classical_group
from mclosure.perm import (
    PermGroup,
    normalizer_by_enumeration,
    r_radical,
    sylow_and_normalizer,
)


def _minimal_gens(G: PermGroup) -> list:
    H = PermGroup(G.degree, [])
    for g in G.generators:
        if not H.contains(g):
            H = PermGroup(G.degree, H.generators + [g])
    return H.generators


def _entry(S, M: PermGroup, structure: str) -> dict:
    return {
        "structure": structure,
        "order": M.order,
        "generators": [S.matrix_of(g).tolist() for g in _minimal_gens(M)],
    }


def sp43() -> list[dict]:
    S = classical_group("Sp(4,3)")
    G = S.perm
    out = []
    # planes <e0, e2> and <e1, e3> are orthogonal and nondegenerate
    K = PermGroup(G.degree, [S.perm_of(np.diag([2, 1, 2, 1])), S.perm_of(np.diag([1, 2, 1, 2]))])
    out.append(_entry(S, normalizer_by_enumeration(G, K), "Sp(2,3) wr S_2"))

    P5, _ = sylow_and_normalizer(G, 5)
    y = P5.generators[0]
    found = None
    for block in G.element_blocks():
        for row in block:
            t = tuple(int(v) for v in row)
            sq = [t[t[a]] for a in range(len(t))]
            if sq != list(range(len(t))) or t == tuple(range(len(t))):
                continue
            conj, c = [], t
            for _ in range(5):
                conj.append(c)
                c = _conj(c, y)
            T = PermGroup(G.degree, conj)
            if T.order == 32 and len(T.derived_subgroup().generators) and T.derived_subgroup().order == 2:
                NT = normalizer_by_enumeration(G, T)
                if NT.order == 1920:
                    found = (T, NT)
                    break
        if found:
            break
    T, NT = found
    for prime, structure in ((3, "2^{1+4}:S_3"), (5, "2^{1+4}:D_10")):
        P, _ = sylow_and_normalizer(NT, prime)
        TP = PermGroup(G.degree, T.generators + P.generators)
        out.append(_entry(S, normalizer_by_enumeration(NT, TP), structure))
    return out


def _conj(t, y):
    # y^-1 t y
    n = len(t)
    yinv = [0] * n
    for a in range(n):
        yinv[y[a]] = a
    return tuple(y[t[yinv[a]]] for a in range(n))


def order27(name: str) -> list[dict]:
    S = classical_group(name)
    G = S.perm
    P, _ = sylow_and_normalizer(G, 3)
    elems = [tuple(int(v) for v in row) for row in P.element_array()]
    subs = {}
    for x in elems:
        for y in elems:
            H = PermGroup(G.degree, [x, y])
            if H.order == 27:
                subs.setdefault(frozenset(map(tuple, H.element_array().tolist())), H)
            elif H.order == 9:
                for z in elems:
                    H3 = PermGroup(G.degree, [x, y, z])
                    if H3.order == 27:
                        subs.setdefault(frozenset(map(tuple, H3.element_array().tolist())), H3)
    out, seen = [], set()
    for T in subs.values():
        N = normalizer_by_enumeration(G, T)
        if N.order != 1296:
            continue
        key = frozenset(map(tuple, N.element_array().tolist()))
        if key in seen:
            continue
        seen.add(key)
        structure = "3^3:(S_4 x S_2)" if T.is_abelian() else "3^{1+2}:(2.S_4)"
        out.append(_entry(S, N, structure))
    out.sort(key=lambda e: e["structure"])
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default=str(SPO_DATA_PATH))
    args = ap.parse_args(argv)
    t0 = time.time()
    data = {
        "format": 1,
        "convention": "2k x 2k matrices over GF(r) acting on row vectors; basis X_1..X_k, Y_1..Y_k "
                      "of E/Z with the standard commutator and quadratic forms",
        "groups": {"Sp(4,3)": sp43(), "O-(6,2)": order27("O-(6,2)"), "Sp(6,2)": order27("Sp(6,2)")},
    }
    for name, entries in data["groups"].items():
        S = classical_group(name)
        for e in entries:
            M = PermGroup(S.perm.degree, [S.perm_of(np.array(g)) for g in e["generators"]])
            e["radical"] = r_radical(M, S.r).order
            print(f"{name:8s} {e['structure']:20s} order {e['order']:5d} solvable={M.is_solvable()} "
                  f"{S.r}-radical={e['radical']}")
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(json.dumps(data, indent=1))
    print(f"wrote {args.out} in {time.time() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
