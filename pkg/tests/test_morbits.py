import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mclosure import (
    PermGroup,
    are_m_equivalent,
    cyclic_group,
    dihedral_group,
    m_orbit_coloring,
    read_coloring,
    symmetric_group,
    trivial_group,
    write_coloring,
)
from mclosure.linear import affine_group, general_linear_group
from mclosure.fields import field_make
from mclosure.morbits import (
    coloring_preserved,
    index_tuple,
    orbit_partition_types,
    partition_type,
    tuple_index,
)
from mclosure.perm import GroupError, Perm

from conftest import naive_orbits_on_tuples


def test_small_colorings():
    assert m_orbit_coloring(cyclic_group(3), 2).num_colors == 3
    assert m_orbit_coloring(trivial_group(2), 2).num_colors == 4
    for n in range(3, 7):
        assert m_orbit_coloring(symmetric_group(n), 3).num_colors == 5


def test_tuple_index_roundtrip():
    for idx in range(5**3):
        assert tuple_index(index_tuple(idx, 5, 3), 5) == idx
    with pytest.raises(GroupError):
        tuple_index((0, 5), 5)


def test_partition_types():
    assert partition_type((4, 4, 7)) == ((0, 1), (2,))
    assert partition_type((4, 4, 4)) == ((0, 1, 2),)
    assert partition_type((1, 2, 3)) == ((0,), (1,), (2,))


def test_sym4_orbit_types_bijective():
    types = orbit_partition_types(m_orbit_coloring(symmetric_group(4), 3))
    assert len(types) == 5 == len(set(types.values()))
    types2 = orbit_partition_types(m_orbit_coloring(symmetric_group(4), 2))
    assert set(types2.values()) == {((0, 1),), ((0,), (1,))}
    types_c2 = orbit_partition_types(m_orbit_coloring(cyclic_group(2), 2))
    assert types_c2[m_orbit_coloring(cyclic_group(2), 2).color((0, 0))] == ((0, 1),)


def test_equivalence():
    G = dihedral_group(5)
    assert are_m_equivalent(G, G, 3)
    assert not are_m_equivalent(cyclic_group(5), dihedral_group(5), 2)
    agl15 = affine_group(general_linear_group(field_make(5), 1))
    assert are_m_equivalent(agl15, symmetric_group(5), 2)
    # incomparable groups go through the full comparison
    a = PermGroup(4, [Perm([1, 0, 2, 3])])
    b = PermGroup(4, [Perm([0, 1, 3, 2])])
    assert not are_m_equivalent(a, b, 2)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.permutations(list(range(5))), min_size=0, max_size=2), st.integers(1, 3))
def test_color_count_matches_naive(gens, m):
    G = PermGroup(5, gens)
    col = m_orbit_coloring(G, m)
    assert col.num_colors == naive_orbits_on_tuples(G, m)
    assert all(coloring_preserved(col, g) for g in G.generators)


def test_coloring_export_roundtrip(tmp_path):
    col = m_orbit_coloring(dihedral_group(6), 3)
    path = tmp_path / "d6.morb"
    write_coloring(col, path)
    back = read_coloring(path)
    assert back.same_partition(col)
    assert back.num_colors == col.num_colors
    assert (tmp_path / "d6.morb.json").exists()
    raw = path.read_bytes()
    assert raw[:4] == b"MORB"
    assert np.frombuffer(raw[16:], dtype="<u4").size == 6**3


def test_read_coloring_rejects_garbage(tmp_path):
    p = tmp_path / "bad"
    p.write_bytes(b"XXXX0000")
    with pytest.raises(ValueError):
        read_coloring(p)


def test_budget_guard():
    with pytest.raises(GroupError):
        m_orbit_coloring(symmetric_group(10), 3, budget=100)
