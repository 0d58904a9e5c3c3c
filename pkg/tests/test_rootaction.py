from math import gcd

import pytest

from lieverify.gfq import make_field
from lieverify.groups import build_group, root_subgroup_element, torus_elements
from lieverify.rootaction import (
    character_divisibility,
    cross_check,
    cross_check_rows,
    expected_index,
    predicted_index_divisors,
    root_action_image,
)
from lieverify.rootdata import LatticeKind, build_root_system, divisibility_in_lattice, is_long_root


def G(family, n, p, r=1):
    return build_group(family, n, make_field(p, r))


def test_gl3_f5_simple_root_surjective():
    rep = root_action_image(G("GL", 3, 5), (1, 0))
    assert rep.index == 1 and rep.image == frozenset(range(1, 5))


def test_sp4_f5_long_root_squares():
    rep = root_action_image(G("Sp", 4, 5), (0, 1))
    assert rep.index == 2 and rep.image == {1, 4}


def test_sp4_f4_long_root_surjective():
    rep = root_action_image(G("Sp", 4, 2, 2), (0, 1))
    assert rep.index == 1 and len(rep.image) == 3


def test_predicted_divisors_examples():
    c2 = build_root_system("C", 2)
    assert predicted_index_divisors(c2, LatticeKind.WEIGHT, (0, 1), 5) == {1, 2}
    for t, n in [("C", 3), ("E", 6), ("G", 2)]:
        rs = build_root_system(t, n)
        for v in rs.roots:
            assert predicted_index_divisors(rs, LatticeKind.ROOT, v, 9) == {1}
    a2 = build_root_system("A", 2)
    assert all(predicted_index_divisors(a2, LatticeKind.WEIGHT, v, 7) == {1} for v in a2.roots)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)])
def test_gl_all_indices_one(n, p, r):
    g = G("GL", n, p, r)
    assert cross_check(g)
    assert {rep.index for rep, _ in cross_check_rows(g)} == {1}


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (5, 1), (3, 2), (2, 2)])
def test_sp4_cross_check(p, r):
    g = G("Sp", 4, p, r)
    assert cross_check(g)
    two = gcd(2, g.q - 1)
    for rep, _ in cross_check_rows(g):
        assert rep.index == (two if is_long_root(g.root_system, rep.root) else 1)


@pytest.mark.parametrize("args", [("SL", 3, 2, 2), ("SL", 3, 3), ("SL", 2, 5), ("SL", 2, 3, 2), ("Sp", 6, 3)])
def test_sl_and_sp6_cross_check(args):
    assert cross_check(G(*args))


@pytest.mark.parametrize("args", [("SL", 3, 5), ("SL", 4, 3), ("Sp", 4, 7), ("GL", 3, 7)])
def test_index_divides_weight_divisibility(args):
    g = G(*args)
    for alpha in g.root_system.roots:
        rep = root_action_image(g, alpha)
        m = divisibility_in_lattice(g.root_system, alpha, LatticeKind.WEIGHT)
        assert m % rep.index == 0
        assert rep.index * len(rep.image) == g.q - 1


def test_character_divisibility_gl_is_one():
    g = G("GL", 4, 3)
    assert {character_divisibility(g, a) for a in g.root_system.roots} == {1}


def test_expected_index_rule():
    assert expected_index(G("SL", 2, 5), (1,)) == 2
    assert expected_index(G("GL", 2, 5), (1,)) == 1
    assert expected_index(G("Sp", 4, 2, 2), (0, 1)) == 1


@pytest.mark.parametrize("args", [("Sp", 4, 3), ("GL", 3, 2, 2)])
def test_action_is_linear(args):
    g = G(*args)
    f = g.field
    for alpha in g.root_system.roots:
        for t in torus_elements(g):
            a = g.character(alpha, t)
            tinv = t.inverse()
            for c in f.elements():
                assert t @ root_subgroup_element(g, alpha, c) @ tinv == root_subgroup_element(g, alpha, f.mul(a, c))
