import random

import pytest
from hypothesis import given, settings, strategies as st

from lieverify.gfq import make_field
from lieverify.groups import (
    BoundExceeded,
    FqMatrix,
    build_group,
    commutator,
    element_order,
    enumerate_U,
    from_coordinates,
    generate_subgroup,
    in_U_s,
    is_unipotent,
    normal_form,
    order_of_U,
    root_subgroup_element,
    simple_coordinate,
    torus_element,
    torus_elements,
    torus_generators,
    torus_order,
)

SMALL_GROUPS = [("GL", 2, 2, 1), ("GL", 2, 3, 1), ("GL", 3, 2, 1), ("GL", 3, 3, 1), ("SL", 3, 2, 2), ("Sp", 2, 3, 1), ("Sp", 4, 3, 1), ("Sp", 4, 2, 1), ("Sp", 6, 2, 1)]


def G(family, n, p, r=1):
    return build_group(family, n, make_field(p, r))


def E(f, n, *positions, c=1):
    """I plus c at each 1-based (i, j) position."""
    entries = {(i, i): 1 for i in range(n)}
    for i, j in positions:
        entries[(i - 1, j - 1)] = c
    return FqMatrix.from_entries(f, n, entries)


def test_gl3_f3_orders():
    g = G("GL", 3, 3)
    assert order_of_U(g) == 27
    assert torus_order(g) == 8


def test_sp4_f3_order_of_U():
    g = G("Sp", 4, 3)
    assert len(g.positive_roots) == 4
    assert order_of_U(g) == 81
    assert g.root_system.dynkin_type == "C"


@pytest.mark.parametrize("family,n", [("GL", 1), ("SL", 0), ("Sp", 3), ("SO", 4)])
def test_invalid_groups(family, n):
    with pytest.raises(ValueError):
        G(family, n, 2)


def test_root_subgroup_element_gl():
    g = G("GL", 3, 3)
    f = g.field
    assert root_subgroup_element(g, (1, 0), 1) == E(f, 3, (1, 2))
    for alpha in g.root_system.roots:
        assert root_subgroup_element(g, alpha, 0).is_identity()
    with pytest.raises(ValueError):
        root_subgroup_element(g, (2, 0), 1)


def test_sp4_long_simple_root_element():
    g = G("Sp", 4, 3)
    f = g.field
    x = root_subgroup_element(g, (0, 1), 1)
    assert x == E(f, 4, (2, 3))
    J = g.symplectic_form
    assert x.transpose() @ J @ x == J


@pytest.mark.parametrize("family,n,p,r", SMALL_GROUPS)
def test_root_subgroups_additive(family, n, p, r):
    g = G(family, n, p, r)
    f = g.field
    for alpha in g.root_system.roots:
        for c in f.elements():
            for d in f.elements():
                assert root_subgroup_element(g, alpha, c) @ root_subgroup_element(g, alpha, d) == root_subgroup_element(g, alpha, f.add(c, d))


def test_torus_element_examples():
    g = G("GL", 2, 3)
    assert torus_element(g, [1, 2]) == FqMatrix.diagonal(g.field, [1, 2])
    sp = G("Sp", 4, 5)
    assert torus_element(sp, [2, 3]) == FqMatrix.diagonal(sp.field, [2, 3, 2, 3])
    with pytest.raises(ValueError):
        torus_element(g, [1, 0])
    with pytest.raises(ValueError):
        torus_element(G("SL", 3, 3), [1, 1, 2])


def test_in_U_s_examples():
    g = G("GL", 3, 3)
    f = g.field
    assert in_U_s(g, E(f, 3, (2, 3)), 1)
    assert not in_U_s(g, E(f, 3, (1, 2)), 1)
    assert all(in_U_s(g, g.identity(), s) for s in (1, 2))
    with pytest.raises(ValueError):
        in_U_s(g, FqMatrix.diagonal(f, [2, 1, 1]), 1)


def test_element_order_examples():
    f3 = make_field(3)
    assert element_order(E(f3, 2, (1, 2))) == 3
    assert element_order(E(f3, 4, (1, 2), (2, 3), (3, 4))) == 9
    assert element_order(FqMatrix.identity(f3, 3)) == 1
    assert element_order(FqMatrix.diagonal(f3, [1, 2])) == 2


def test_is_unipotent_examples():
    f3, f2 = make_field(3), make_field(2)
    assert not is_unipotent(FqMatrix.diagonal(f3, [1, 2]))
    assert is_unipotent(E(f2, 3, (1, 3)))
    assert all(is_unipotent(x) for x in enumerate_U(G("GL", 3, 3)))


@pytest.mark.parametrize("args,size", [(("GL", 2, 2, 2), 4), (("GL", 3, 3, 1), 27), (("Sp", 4, 3, 1), 81)])
def test_enumerate_U_distinct(args, size):
    g = G(*args)
    els = list(enumerate_U(g))
    assert len(els) == len(set(els)) == size
    assert all(g.in_U(x) for x in els)


def test_enumerate_U_bound():
    with pytest.raises(BoundExceeded):
        list(enumerate_U(G("GL", 3, 3), bound=26))


@pytest.mark.parametrize("family,n,p,r", SMALL_GROUPS)
def test_torus_acts_linearly(family, n, p, r):
    g = G(family, n, p, r)
    f = g.field
    for t in torus_generators(g):
        tinv = t.inverse()
        for alpha in g.root_system.roots:
            a = g.character(alpha, t)
            for c in f.elements():
                assert t @ root_subgroup_element(g, alpha, c) @ tinv == root_subgroup_element(g, alpha, f.mul(a, c))


@pytest.mark.parametrize("family,n,p,r", SMALL_GROUPS)
def test_borel_order_and_intersection(family, n, p, r):
    g = G(family, n, p, r)
    T = list(torus_elements(g))
    assert len(T) == torus_order(g)
    U = set(enumerate_U(g))
    assert len(U) == order_of_U(g)
    assert U & set(T) == {g.identity()}
    B = {u @ t for u in U for t in T}
    assert len(B) == len(U) * len(T)


@pytest.mark.parametrize("family,n,p,r", [("Sp", 4, 3, 1), ("Sp", 4, 2, 2), ("Sp", 6, 2, 1)])
def test_symplectic_elements_preserve_form(family, n, p, r):
    g = G(family, n, p, r)
    J = g.symplectic_form
    for x in enumerate_U(g):
        assert x.transpose() @ J @ x == J
    for t in torus_elements(g):
        assert t.transpose() @ J @ t == J


@pytest.mark.parametrize("family,n,p,r", [("GL", 3, 2, 1), ("GL", 3, 3, 1), ("Sp", 4, 3, 1)])
def test_U_s_normal_in_U(family, n, p, r):
    g = G(family, n, p, r)
    U = list(enumerate_U(g))
    for s in range(1, g.rank + 1):
        Us = [v for v in U if in_U_s(g, v, s)]
        assert len(Us) * g.q == len(U)
        for u in U:
            uinv = u.inverse()
            assert all(in_U_s(g, u @ v @ uinv, s) for v in Us)


@pytest.mark.parametrize("family,n,p,r", [("GL", 3, 3, 1), ("Sp", 4, 3, 1), ("GL", 2, 2, 2)])
def test_simple_coordinate_is_homomorphism_onto_Fq(family, n, p, r):
    g = G(family, n, p, r)
    f = g.field
    U = list(enumerate_U(g))
    rng = random.Random(1)
    for s in range(1, g.rank + 1):
        assert {simple_coordinate(g, x, s) for x in U} == set(f.elements())
        for _ in range(200):
            x, y = rng.choice(U), rng.choice(U)
            assert simple_coordinate(g, x @ y, s) == f.add(simple_coordinate(g, x, s), simple_coordinate(g, y, s))


@pytest.mark.parametrize("family,n,p,r", [("GL", 3, 3, 1), ("Sp", 4, 3, 1), ("GL", 4, 2, 1)])
def test_normal_form_roundtrip(family, n, p, r):
    g = G(family, n, p, r)
    for x in enumerate_U(g):
        assert from_coordinates(g, normal_form(g, x)) == x


def test_commutator_and_generation():
    g = G("GL", 3, 2)
    f = g.field
    x, y = E(f, 3, (1, 2)), E(f, 3, (2, 3))
    assert commutator(x, y) == E(f, 3, (1, 3))
    els = generate_subgroup([x, y], g.identity())
    assert len(els) == 8


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_torus_multiplicative(a, b, c):
    g = G("GL", 3, 3, 2)
    f = g.field
    nz = list(f.nonzero())
    s = torus_element(g, [nz[a % 8], nz[b % 8], nz[c % 8]])
    t = torus_element(g, [nz[c % 8], nz[a % 8], nz[b % 8]])
    for alpha in g.root_system.roots:
        assert g.character(alpha, s @ t) == f.mul(g.character(alpha, s), g.character(alpha, t))
