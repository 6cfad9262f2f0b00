"""Compare the compiled and pure-Python kernel backends.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import timeit

import numpy as np

from mclosure import _kernels_py
from mclosure.closure import refine
from mclosure.morbits import m_orbit_coloring, tuple_digits, tuple_images
from mclosure.perm import symmetric_group
from mclosure.products import wreath_product_action
from mclosure.perm import alternating_group

try:
    from mclosure import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None


def _cases():
    G = wreath_product_action(symmetric_group(4), alternating_group(3))  # degree 64
    n = G.degree
    d2 = tuple_digits(n, 2)
    images2 = np.stack([tuple_images(g, d2, n) for g in G.generators])
    H = symmetric_group(12)
    d3 = tuple_digits(12, 3)
    images3 = np.stack([tuple_images(g, d3, 12) for g in H.generators])
    C = np.ascontiguousarray(m_orbit_coloring(G, 2).matrix(), dtype=np.int32)
    cells = np.zeros(n, dtype=np.int64)
    cells[0] = 1
    rng = np.random.default_rng(0)
    P = np.array([rng.permutation(8) for _ in range(20000)], dtype=np.int64)
    C8 = np.ascontiguousarray(m_orbit_coloring(symmetric_group(8), 2).matrix(), dtype=np.int32)
    return {
        "tuple_orbit_labels (64^2 pairs)": ("tuple_orbit_labels", (images2,)),
        "tuple_orbit_labels (12^3 triples)": ("tuple_orbit_labels", (images3,)),
        "signature_counts (degree 64)": ("signature_counts", (C, cells, int(C.max()) + 1, 2)),
        "preserving_rows (20000 x Sym(8))": ("preserving_rows", (P, C8)),
    }, C


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="kernel backend benchmark")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="write timings as JSON")
    args = ap.parse_args(argv)
    cases, C = _cases()
    backends = {"python": _kernels_py}
    if _kernels_c is not None:
        backends["cython"] = _kernels_c
    rows = []
    for label, (fname, fargs) in cases.items():
        row = {"case": label}
        for bname, mod in backends.items():
            fn = getattr(mod, fname)
            row[bname] = min(timeit.repeat(lambda: fn(*fargs), number=1, repeat=args.repeat))
        rows.append(row)
    # end-to-end refinement from the unit partition, which calls signature_counts repeatedly
    row = {"case": "refine (degree 64, one individualized point)"}
    import mclosure.kernels as K

    for bname, mod in backends.items():
        saved = K.signature_counts
        K.signature_counts = mod.signature_counts
        try:
            cells = np.zeros(C.shape[0], dtype=np.int64)
            row[bname] = min(timeit.repeat(lambda: refine(C, cells, int(C.max()) + 1), number=1, repeat=args.repeat))
        finally:
            K.signature_counts = saved
    rows.append(row)

    width = max(len(r["case"]) for r in rows)
    print(f"{'case':{width}s}  {'python':>10s}  {'cython':>10s}  speedup")
    for r in rows:
        py, cy = r.get("python"), r.get("cython")
        speed = f"{py / cy:7.1f}x" if cy else "    n/a"
        cy_s = f"{cy * 1e3:8.2f}ms" if cy else "       n/a"
        print(f"{r['case']:{width}s}  {py * 1e3:8.2f}ms  {cy_s}  {speed}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
