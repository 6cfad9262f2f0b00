"""Classify candidate linear groups by condition (A), condition (B) or transitivity.

(A): some nonzero vector has a regular orbit.
(B): the restriction of H to the orbit of some nonzero vector is faithful and 2-closed.
Otherwise the candidate is "transitive" if it has one orbit on nonzero vectors,
and "unresolved" if not.
"""

from __future__ import annotations

import json
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .catalog import CandidateGroup, Parameters, assemble_candidates, validate_parameters
from .closure import BACKTRACK_DEGREE, EXHAUSTIVE_LIMIT, is_partly_regular, m_closure, two_closure
from .fields import field_make, prime_power
from .linear import MatrixGroup, index_vector, matrix_group_from_json
from .perm import GroupError, PermGroup

HUPPERT_EXCEPTIONS = frozenset({9, 25, 49, 121, 529, 81})
CLASSES = ("A", "B", "transitive", "unresolved", "skipped", "error")


@dataclass
class PipelineConfig:
    parameters: Parameters | None = None
    strategy: str = "exhaustive"
    max_samples: int = 256
    seed: int = 0
    domain_budget: int = 2**16
    backtrack_degree: int = 512
    enumeration_threshold: int = 2_000_000
    candidates_file: str | None = None
    workers: int = 1

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.max_samples < 1:
            raise ValueError("max_samples must be at least 1")
        if self.strategy not in ("exhaustive", "random"):
            raise ValueError(f"unknown strategy {self.strategy!r}")

    @classmethod
    def from_json(cls, data: dict) -> "PipelineConfig":
        data = dict(data)
        params = data.pop("parameters", None)
        search = data.pop("alpha_search", {})
        budgets = data.pop("budgets", {})
        cfg = cls(
            parameters=Parameters(**params) if params else None,
            strategy=search.get("strategy", "exhaustive"),
            max_samples=int(search.get("max_samples", 256)),
            seed=int(search.get("seed", 0)),
            domain_budget=int(budgets.get("domain", 2**16)),
            backtrack_degree=int(budgets.get("backtrack_degree", 512)),
            enumeration_threshold=int(budgets.get("enumeration", 2_000_000)),
            candidates_file=data.pop("candidates_file", None),
            workers=int(data.pop("workers", 1)),
        )
        if data:
            raise ValueError(f"unknown config keys: {sorted(data)}")
        return cfg


@dataclass
class CandidateReport:
    name: str
    order: int | None
    classification: str
    witness: dict | None = None
    certificate: dict | None = None
    caveats: list = field(default_factory=list)
    ms: float = 0.0

    def as_json(self) -> dict:
        out = asdict(self)
        out["order"] = str(self.order) if self.order is not None else None
        return out


# -- single conditions --------------------------------------------------------

def _vector(field_p: int, d: int, point: int) -> list[int]:
    return index_vector(field_make(field_p), point + 1, d)


def alpha_candidates(H: PermGroup, cfg: PipelineConfig) -> list[int]:
    """One nonzero point per orbit: ascending if exhaustive, seeded draws if random."""
    n = H.degree
    if cfg.strategy == "exhaustive":
        if n > EXHAUSTIVE_LIMIT:
            raise GroupError(f"exhaustive search needs at most {EXHAUSTIVE_LIMIT} points")
        return [orb[0] for orb in H.orbits()][: cfg.max_samples]
    rng = np.random.default_rng(cfg.seed)
    out, seen = [], set()
    for a in rng.integers(0, n, size=4 * cfg.max_samples):
        a = int(a)
        if a in seen:
            continue
        orb = H.orbit(a)
        seen.update(orb)
        out.append(a)
        if len(out) == cfg.max_samples:
            break
    return out


def condition_A(H: PermGroup, cfg: PipelineConfig) -> int | None:
    return is_partly_regular(H, seed=cfg.seed, max_samples=cfg.max_samples, strategy=cfg.strategy)


def condition_B(H: PermGroup, alpha: int, budget: int = BACKTRACK_DEGREE) -> tuple[bool, dict]:
    """Is the restriction of H to the orbit of alpha faithful and 2-closed?"""
    orbit = sorted(H.orbit(alpha))
    R, faithful = H.restriction(orbit)
    cert = {"orbit_length": len(orbit), "restriction_order": str(R.order), "faithful": faithful}
    if not faithful:
        return False, cert
    res = two_closure(R, budget)
    cert["two_closure_order"] = str(res.closed_order)
    return res.is_closed, cert


def check_transitive_nonzero(H: PermGroup) -> bool:
    return H.is_transitive()


def huppert_exceptional(q: int) -> bool:
    if prime_power(q) is None:
        raise ValueError(f"{q} is not a prime power")
    return q in HUPPERT_EXCEPTIONS


def solvability_verdict(G: PermGroup, m: int = 3, budget: int | None = None) -> dict:
    res = m_closure(G, m, budget)
    return {
        "degree": G.degree,
        "arity": m,
        "order": str(G.order),
        "closure_order": str(res.closed_order),
        "closed": res.is_closed,
        "input_solvable": G.is_solvable(),
        "closure_solvable": res.closed_group.is_solvable(),
    }


# -- pipeline -------------------------------------------------------------------

def classify(name: str, H: PermGroup, p: int, d: int, cfg: PipelineConfig) -> CandidateReport:
    t0 = time.perf_counter()
    rep = CandidateReport(name, H.order, "unresolved")
    a = condition_A(H, cfg)
    if a is not None:
        rep.classification = "A"
        rep.witness = {"point": a, "vector": _vector(p, d, a)}
        rep.certificate = {"orbit_length": len(H.orbit(a)), "order": str(H.order)}
    else:
        for alpha in alpha_candidates(H, cfg):
            if len(H.orbit(alpha)) > cfg.backtrack_degree:
                if "orbit-over-backtrack-budget" not in rep.caveats:
                    rep.caveats.append("orbit-over-backtrack-budget")
                continue
            ok, cert = condition_B(H, alpha, cfg.backtrack_degree)
            if ok:
                rep.classification = "B"
                rep.witness = {"point": alpha, "vector": _vector(p, d, alpha)}
                rep.certificate = cert
                break
        else:
            orbits = H.orbits()
            if len(orbits) == 1:
                rep.classification = "transitive"
                rep.certificate = {"orbits": 1}
            else:
                rep.certificate = {"orbits": len(orbits)}
    rep.ms = round(1000 * (time.perf_counter() - t0), 3)
    return rep


def _load_candidates(path: str, params: Parameters | None) -> list[CandidateGroup]:
    data = json.loads(Path(path).read_text())
    items = data["candidates"] if isinstance(data, dict) else data
    out = []
    for i, item in enumerate(items):
        M: MatrixGroup = matrix_group_from_json(item)
        P = params or Parameters(M.field.p, M.dim, 0, 0)
        out.append(CandidateGroup(item.get("name") or f"candidate{i}", P, M, {"source": path}, None))
    return out


def _process(c: CandidateGroup, cfg: PipelineConfig) -> CandidateReport:
    t0 = time.perf_counter()
    if c.skipped:
        return CandidateReport(c.name, None, "skipped", caveats=[c.skipped])
    try:
        M = c.group
        if M.field.k != 1:
            raise GroupError("candidates must be matrix groups over a prime field")
        H = M.perm_image("nonzero", cfg.domain_budget)
        rep = classify(c.name, H, M.field.p, M.dim, cfg)
        rep.caveats = list(c.caveats) + rep.caveats
    except Exception as exc:  # reported, never aborts the batch
        rep = CandidateReport(c.name, None, "error", caveats=[f"{type(exc).__name__}: {exc}"])
        rep.certificate = {"traceback": traceback.format_exc(limit=3)}
    rep.ms = round(1000 * (time.perf_counter() - t0), 3)
    return rep


def run_pipeline(cfg: PipelineConfig, candidates: list[CandidateGroup] | None = None) -> dict:
    params = cfg.parameters
    if candidates is None:
        if cfg.candidates_file:
            candidates = _load_candidates(cfg.candidates_file, params)
        elif params is not None:
            problems = validate_parameters(params)
            if problems:
                raise ValueError("; ".join(problems))
            candidates = assemble_candidates(params, cfg.domain_budget, cfg.enumeration_threshold)
        else:
            candidates = []
    if cfg.workers > 1 and len(candidates) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            reports = list(pool.map(_process, candidates, [cfg] * len(candidates)))
    else:
        reports = [_process(c, cfg) for c in candidates]
    reports.sort(key=lambda r: r.name)
    summary = {k: sum(r.classification == k for r in reports) for k in CLASSES}
    return {
        "parameters": params.as_dict() if params else {},
        "config": {"strategy": cfg.strategy, "max_samples": cfg.max_samples, "seed": cfg.seed},
        "candidates": [r.as_json() for r in reports],
        "summary": summary,
    }
