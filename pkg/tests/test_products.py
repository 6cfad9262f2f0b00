import pytest

from mclosure import (
    alternating_group,
    cyclic_group,
    direct_sum,
    symmetric_group,
    trivial_group,
    two_closure,
    two_closure_brute,
    wreath_imprimitive,
    wreath_product_action,
)
from mclosure.perm import GroupError
from mclosure.products import top_action


def test_direct_sum():
    G = direct_sum(cyclic_group(2), cyclic_group(3))
    assert (G.degree, G.order) == (5, 6)
    T = direct_sum(trivial_group(2), symmetric_group(3))
    assert T.degree == 5 and T.order == 6
    assert T.orbit(0) == [0] and T.orbit(1) == [1]
    S = direct_sum(symmetric_group(3), symmetric_group(3))
    assert S.order == 36
    assert sorted(len(o) for o in S.orbits()) == [3, 3]


def test_wreath_imprimitive():
    W = wreath_imprimitive(cyclic_group(2), cyclic_group(3))
    assert (W.degree, W.order) == (6, 24)
    D = wreath_imprimitive(symmetric_group(2), symmetric_group(2))
    assert (D.degree, D.order) == (4, 8)


def test_wreath_two_closure_commutes():
    K, L = cyclic_group(2), cyclic_group(3)
    lhs = two_closure_brute(wreath_imprimitive(K, L))
    rhs = wreath_imprimitive(two_closure(K).closed_group, two_closure(L).closed_group)
    assert lhs.order == rhs.order == 24
    assert all(rhs.contains(g) for g in lhs.generators)
    assert all(lhs.contains(g) for g in rhs.generators)


def test_product_action():
    G = wreath_product_action(symmetric_group(3), symmetric_group(2))
    assert (G.degree, G.order) == (9, 72) and G.is_primitive()
    with pytest.raises(GroupError, match="regular"):
        wreath_product_action(cyclic_group(2), cyclic_group(2))
    with pytest.raises(GroupError):
        wreath_product_action(symmetric_group(3), trivial_group(2))


def test_product_action_counterexample_input():
    G = wreath_product_action(symmetric_group(4), alternating_group(3))
    assert G.degree == 64
    assert G.order == 24**3 * 3 == 41472


def test_top_action():
    G = wreath_product_action(symmetric_group(3), symmetric_group(2))
    swap = G.generators[-1]
    assert tuple(top_action(G, 3, 2, swap)) == (1, 0)
    base = G.generators[0]
    assert tuple(top_action(G, 3, 2, base)) == (0, 1)
