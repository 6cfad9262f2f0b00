"""Direct sums, imprimitive wreath products and product-action wreath products.

Point layouts:
    direct_sum(K, L):          K on 0..r-1, L shifted to r..r+d-1
    wreath_imprimitive(K, L):  point (g, b) of block b is b*r + g
    wreath_product_action:     function (g_0, ..., g_{d-1}) is sum g_i * r**(d-1-i)
"""

from __future__ import annotations

import itertools

from .perm import GroupError, Perm, PermGroup


def direct_sum(K: PermGroup, L: PermGroup) -> PermGroup:
    r, d = K.degree, L.degree
    gens = [Perm._raw(tuple(k) + tuple(range(r, r + d))) for k in K.generators]
    gens += [Perm._raw(tuple(range(r)) + tuple(r + x for x in l)) for l in L.generators]
    return PermGroup(r + d, gens, name=_name("+", K, L))


def _name(op: str, K: PermGroup, L: PermGroup) -> str | None:
    if K.name and L.name:
        return f"{K.name}{op}{L.name}"
    return None


def wreath_imprimitive(K: PermGroup, L: PermGroup) -> PermGroup:
    """K wr L on r*d points: L permutes d blocks, each a copy of K's domain."""
    r, d = K.degree, L.degree
    n = r * d
    gens = []
    # one base copy per block orbit of L generates the whole base group
    for orb in L.orbits():
        b = orb[0]
        for k in K.generators:
            img = list(range(n))
            for g in range(r):
                img[b * r + g] = b * r + k[g]
            gens.append(Perm._raw(tuple(img)))
    for l in L.generators:
        gens.append(Perm._raw(tuple(l[b] * r + g for b in range(d) for g in range(r))))
    G = PermGroup(n, gens, name=_name(" wr ", K, L))
    expected = K.order**d * L.order
    if G.order != expected:
        raise GroupError(f"wreath product order {G.order} != {expected}")
    return G


def _power_index(t, r):
    idx = 0
    for x in t:
        idx = idx * r + x
    return idx


def wreath_product_action(K: PermGroup, L: PermGroup, check: bool = True) -> PermGroup:
    """K wr L acting on functions from L's domain to K's domain."""
    r, d = K.degree, L.degree
    if check:
        if not K.is_transitive() or not K.is_primitive():
            raise GroupError("product action needs K primitive")
        if K.is_regular():
            raise GroupError("product action needs K nonregular (K is regular)")
        if not L.is_transitive():
            raise GroupError("product action needs L transitive")
        if L.order == 1:
            raise GroupError("product action needs L nontrivial")
    tuples = list(itertools.product(range(r), repeat=d))
    gens = []
    for orb in L.orbits():
        c = orb[0]
        for k in K.generators:
            img = []
            for t in tuples:
                t2 = list(t)
                t2[c] = k[t[c]]
                img.append(_power_index(t2, r))
            gens.append(Perm._raw(tuple(img)))
    for l in L.generators:
        img = []
        for t in tuples:
            t2 = [0] * d
            for i in range(d):
                t2[l[i]] = t[i]
            img.append(_power_index(t2, r))
        gens.append(Perm._raw(tuple(img)))
    G = PermGroup(r**d, gens, name=_name("^", K, L))
    expected = K.order**d * L.order
    if G.order != expected:
        raise GroupError(f"product action order {G.order} != {expected}")
    if check and not G.is_primitive():
        raise GroupError("product action group is not primitive")
    return G


def top_action(G: PermGroup, r: int, d: int, h) -> Perm | None:
    """Coordinate permutation induced by an element of Sym(r) wr Sym(d) in product action.

    Returns None when ``h`` does not respect the product structure.
    """
    # coordinate i of the image of a tuple depends on a single coordinate j of the source
    tuples = list(itertools.product(range(r), repeat=d))
    top = [None] * d
    for i in range(d):
        for j in range(d):
            ok = True
            seen: dict = {}
            for t in tuples:
                img = h[_power_index(t, r)]
                ti = (img // r ** (d - 1 - i)) % r
                if seen.setdefault(t[j], ti) != ti:
                    ok = False
                    break
            if ok:
                top[j] = i
                break
    if any(x is None for x in top) or len(set(top)) != d:
        return None
    return Perm(top)
