"""JSON serialization of permutation groups and reports."""

from __future__ import annotations

import json
from pathlib import Path

from .linear import MatrixGroup, affine_group, matrix_group_from_json
from .perm import GroupError, Perm, PermGroup


def group_to_json(G: PermGroup, extra: dict | None = None) -> dict:
    data = {
        "degree": G.degree,
        "generators": [list(g) for g in G.generators],
        "name": G.name or "",
        "order": str(G.order),
    }
    if extra:
        data.update(extra)
    return data


def group_from_json(data: dict) -> PermGroup:
    if "degree" not in data or "generators" not in data:
        raise GroupError("group JSON needs 'degree' and 'generators'")
    n = int(data["degree"])
    gens = []
    for g in data["generators"]:
        if len(g) != n:
            raise GroupError(f"generator of length {len(g)} for degree {n}")
        gens.append(Perm(g))
    G = PermGroup(n, gens, name=data.get("name") or None)
    if "order" in data and int(data["order"]) != G.order:
        raise GroupError(f"stated order {data['order']} differs from computed {G.order}")
    return G


def write_group(G: PermGroup, path: str | Path, extra: dict | None = None) -> None:
    Path(path).write_text(json.dumps(group_to_json(G, extra)))


def load_group(path: str | Path, action: str = "affine") -> PermGroup:
    """Read group JSON; a matrix-group file is turned into its affine or linear action."""
    data = json.loads(Path(path).read_text())
    if "degree" in data:
        return group_from_json(data)
    if "p" in data and "d" in data:
        M: MatrixGroup = matrix_group_from_json(data)
        if action == "affine":
            return affine_group(M)
        return M.perm_image("nonzero" if action == "nonzero" else "all")
    raise GroupError(f"{path}: neither a group nor a matrix-group JSON file")
