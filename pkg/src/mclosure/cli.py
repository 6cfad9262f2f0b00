"""Command-line interface: mclosure <command> ..."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import kernels
from .catalog import Parameters, assemble_candidates, validate_parameters
from .closure import m_closure
from .io import load_group, write_group
from .linear import matrix_group_to_json
from .morbits import m_orbit_coloring, write_coloring
from .pipeline import PipelineConfig, huppert_exceptional, run_pipeline, solvability_verdict
from .products import direct_sum, wreath_imprimitive, wreath_product_action


def _emit(obj, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text)
    else:
        print(text)


def cmd_closure(args) -> int:
    G = load_group(args.group, args.action)
    res = m_closure(G, args.arity, args.budget)
    info = {
        "arity": args.arity,
        "degree": G.degree,
        "input_order": str(res.input_order),
        "closure_order": str(res.closed_order),
        "closed": res.is_closed,
        "method": res.method,
        "backend": kernels.BACKEND,
    }
    if args.out:
        write_group(res.closed_group, args.out, {"arity": args.arity})
    if args.coloring:
        write_coloring(m_orbit_coloring(G, args.arity), args.coloring)
    _emit(info)
    return 0


def cmd_isclosed(args) -> int:
    G = load_group(args.group, args.action)
    res = m_closure(G, args.arity, args.budget)
    print("closed" if res.is_closed else f"not closed: |G| = {res.input_order}, closure order {res.closed_order}")
    return 0 if res.is_closed else 1


def cmd_orbits(args) -> int:
    G = load_group(args.group, args.action)
    col = m_orbit_coloring(G, args.arity)
    write_coloring(col, args.out)
    _emit({"n": col.n, "m": col.m, "num_colors": col.num_colors, "file": args.out})
    return 0


def cmd_product(args) -> int:
    K, L = load_group(args.k), load_group(args.l)
    if args.mode == "direct":
        G = direct_sum(K, L)
    elif args.mode == "wreath":
        G = wreath_imprimitive(K, L)
    else:
        G = wreath_product_action(K, L)
    write_group(G, args.out, {"mode": args.mode})
    _emit({"mode": args.mode, "degree": G.degree, "order": str(G.order), "out": args.out})
    return 0


def cmd_construct(args) -> int:
    P = Parameters(args.p, args.d, args.a, args.e)
    problems = validate_parameters(P)
    if problems:
        _emit({"parameters": P.as_dict(), "violations": problems})
        return 2
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    index = []
    for i, c in enumerate(assemble_candidates(P)):
        entry = {"name": c.name, "provenance": {k: v for k, v in c.provenance.items() if k != "verified"}}
        if c.skipped:
            entry["skipped"] = c.skipped
        else:
            fname = f"candidate_{i:02d}.json"
            data = matrix_group_to_json(c.group)
            data["name"] = c.name
            (out / fname).write_text(json.dumps(data))
            entry.update(file=fname, order=str(c.order), expected_order=str(c.expected_order), caveats=c.caveats)
        index.append(entry)
    (out / "index.json").write_text(json.dumps({"parameters": P.as_dict(), "candidates": index}, indent=2))
    _emit({"parameters": P.as_dict(), "candidates": len(index), "out": str(out)})
    return 0


def cmd_pipeline(args) -> int:
    cfg = PipelineConfig.from_json(json.loads(Path(args.config).read_text()))
    if args.seed is not None:
        cfg.seed = args.seed
    if args.workers is not None:
        cfg.workers = args.workers
    report = run_pipeline(cfg)
    _emit(report, args.report)
    if args.report:
        print(json.dumps(report["summary"]))
    return 1 if report["summary"].get("error") else 0


def cmd_verdict(args) -> int:
    G = load_group(args.group, args.action)
    _emit(solvability_verdict(G, args.arity, args.budget))
    return 0


def cmd_huppert(args) -> int:
    try:
        ans = huppert_exceptional(args.q)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print("true" if ans else "false")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mclosure", description="m-closures of permutation groups")
    sub = ap.add_subparsers(dest="command", required=True)

    def group_args(p, arity_default=None):
        p.add_argument("--group", required=True, help="group JSON (or matrix-group JSON)")
        p.add_argument("--action", choices=["affine", "linear", "nonzero"], default="affine",
                       help="action used when --group is a matrix group")
        if arity_default is None:
            p.add_argument("--arity", "-m", type=int, required=True)
        else:
            p.add_argument("--arity", "-m", type=int, default=arity_default)
        p.add_argument("--budget", type=int, default=None, help="maximum degree for the backtrack search")

    p = sub.add_parser("closure", help="compute the m-closure")
    group_args(p)
    p.add_argument("--out", help="write the closure as group JSON")
    p.add_argument("--coloring", help="also export the m-orbit coloring (binary + .json)")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("isclosed", help="exit 0 iff the group is m-closed")
    group_args(p)
    p.set_defaults(func=cmd_isclosed)

    p = sub.add_parser("orbits", help="export the m-orbit coloring")
    group_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("product", help="direct sum, imprimitive wreath or product action")
    p.add_argument("--mode", choices=["direct", "wreath", "power"], required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--l", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("construct", help="assemble the candidate list for (p, d, a, e)")
    for name in ("p", "d", "a", "e"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("pipeline", help="classify candidates by (A), (B) or transitivity")
    p.add_argument("--config", required=True)
    p.add_argument("--report", help="report JSON path (default: stdout)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=None, help="candidate processes (default 1)")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("verdict", help="order and solvability of the 3-closure")
    group_args(p, arity_default=3)
    p.set_defaults(func=cmd_verdict)

    p = sub.add_parser("huppert", help="is q in Huppert's exceptional list")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_huppert)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
