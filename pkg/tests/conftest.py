"""Shared brute-force helpers for the test suite."""

from __future__ import annotations

import itertools

import pytest

from mclosure.perm import Perm, PermGroup


def subgroups_by_pairs(G: PermGroup) -> list[PermGroup]:
    """All subgroups of G generated by at most two elements, deduplicated.

    For Sym(4) and Sym(5) every subgroup is 2-generated, so this is all of them.
    """
    elems = list(G.elements())
    seen: dict[frozenset, PermGroup] = {}
    for x, y in itertools.combinations_with_replacement(elems, 2):
        H = PermGroup(G.degree, [x, y])
        key = frozenset(H.elements())
        if key not in seen:
            seen[key] = H
    return list(seen.values())


def naive_orbits_on_tuples(G: PermGroup, m: int) -> int:
    """Count m-orbits by closing each tuple under the group elements."""
    elems = list(G.elements())
    seen, count = set(), 0
    for t in itertools.product(range(G.degree), repeat=m):
        if t in seen:
            continue
        count += 1
        seen.update(tuple(g[x] for x in t) for g in elems)
    return count


def cyc(n: int, *cycles) -> Perm:
    return Perm.from_cycles(n, *cycles)


@pytest.fixture(scope="session")
def sym4_subgroups():
    from mclosure import symmetric_group

    return subgroups_by_pairs(symmetric_group(4))


@pytest.fixture(scope="session")
def sym5_subgroups():
    from mclosure import symmetric_group

    return subgroups_by_pairs(symmetric_group(5))


# criterion number -> (passed, detail, seconds, budget); filled by test_acceptance
ACCEPTANCE: dict[int, tuple] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail, secs, budget = ACCEPTANCE[n]
        terminalreporter.write_line(
            f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({secs:.2f}s of {budget:g}s)  {detail}")
