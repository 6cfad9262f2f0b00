import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mclosure.perm import (
    GroupError,
    Perm,
    PermGroup,
    alternating_group,
    compose,
    cyclic_group,
    inverse,
    normalizer_by_enumeration,
    r_radical,
    sylow_and_normalizer,
    symmetric_group,
    trivial_group,
)
from mclosure.linear import agammal1
from mclosure.products import direct_sum, wreath_imprimitive

from conftest import cyc


def perms(n):
    return st.permutations(list(range(n))).map(Perm)


def test_compose_hand_example():
    assert compose([1, 2, 0], [1, 0, 2]) == (0, 2, 1)


@given(perms(6))
def test_identity_and_inverse(p):
    e = Perm.identity(6)
    assert p * e == p
    assert (p * inverse(p)).is_identity()


@given(perms(5), perms(5), perms(5))
def test_compose_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


def test_bad_permutation_rejected():
    with pytest.raises(GroupError):
        Perm([0, 0, 1])
    with pytest.raises(GroupError):
        compose([0, 1], [0, 1, 2])


def test_orders_from_generators():
    assert PermGroup(4, [cyc(4, (0, 1)), cyc(4, (0, 1, 2, 3))]).order == 24
    assert PermGroup(5, [cyc(5, (0, 1, 2, 3, 4))]).order == 5
    assert PermGroup(3, []).order == 1


def test_membership():
    assert symmetric_group(4).contains(cyc(4, (0, 2)))
    assert not alternating_group(4).contains(cyc(4, (0, 1)))
    g = cyc(5, (0, 1, 2, 3, 4))
    assert cyclic_group(5).contains(g**2)


def test_orbit_stabilizer():
    orb, stab = symmetric_group(4).orbit_and_stabilizer(0)
    assert len(orb) == 4 and stab.order == 6
    orb, stab = cyclic_group(5).orbit_and_stabilizer(0)
    assert len(orb) == 5 and stab.order == 1


def test_agammal1_point_stabilizer():
    G = agammal1(2, 3)
    assert G.order == 168
    assert G.stabilizer(0).order == 21


def test_solvability():
    assert symmetric_group(4).is_solvable()
    assert not alternating_group(5).is_solvable()


def test_sp23_image_solvable():
    from mclosure.classical import classical_group

    assert classical_group("Sp(2,3)").perm.is_solvable()


def test_blocks():
    C4 = cyclic_group(4)
    assert C4.is_transitive() and not C4.is_primitive()
    assert sorted(sorted(b) for b in C4.block_system()) == [[0, 2], [1, 3]]
    assert symmetric_group(3).is_primitive()
    W = wreath_imprimitive(cyclic_group(2), cyclic_group(3))
    blocks = W.block_system()
    assert blocks is not None and all(len(b) == 2 for b in blocks)


def test_restriction():
    G = direct_sum(symmetric_group(3), cyclic_group(2))
    R, faithful = G.restriction([0, 1, 2])
    assert R.order == 6 and not faithful
    S = symmetric_group(5)
    R, faithful = S.restriction(range(5))
    assert R.order == 120 and faithful
    with pytest.raises(GroupError):
        G.restriction([0, 3])


def test_gl23_restriction_faithful():
    from mclosure.fields import field_make
    from mclosure.linear import general_linear_group

    H = general_linear_group(field_make(3), 2).perm_image("all")
    nonzero = [x for x in range(9) if x != 0]
    R, faithful = H.restriction(nonzero)
    assert R.order == 48 and faithful


def test_enumeration_distinct():
    els = list(symmetric_group(4).elements())
    assert len(els) == 24 == len(set(els))
    assert len(list(trivial_group(3).elements())) == 1


@pytest.mark.slow
def test_sp62_enumeration_count():
    from mclosure.classical import classical_group

    G = classical_group("Sp(6,2)").perm
    assert G.degree == 63
    assert sum(b.shape[0] for b in G.element_blocks()) == 1_451_520


def test_sylow_normalizers():
    from mclosure.classical import classical_group

    _, N = sylow_and_normalizer(classical_group("Sp(4,2)").perm, 5)
    assert N.order == 20
    _, N = sylow_and_normalizer(symmetric_group(4), 3)
    assert N.order == 6


def test_normalizer_by_enumeration_matches_brute():
    S4 = symmetric_group(4)
    H = PermGroup(4, [cyc(4, (0, 1), (2, 3))])
    N = normalizer_by_enumeration(S4, H)
    brute = [g for g in S4.elements() if all(H.contains(inverse(g) * h * g) for h in H.generators)]
    assert N.order == len(brute) == 8


def test_r_radical():
    assert r_radical(symmetric_group(4), 2).order == 4
    assert r_radical(symmetric_group(3), 3).order == 3
    assert r_radical(symmetric_group(5), 2).order == 1


@settings(max_examples=30, deadline=None)
@given(st.lists(perms(6), min_size=1, max_size=3))
def test_order_matches_closure(gens):
    G = PermGroup(6, gens)
    elems = {Perm.identity(6)}
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    assert G.order == len(elems)
    assert all(G.contains(x) for x in itertools.islice(elems, 50))
