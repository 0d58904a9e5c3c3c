import random
from collections import Counter

import pytest

from lieverify.gfq import make_field
from lieverify.groups import (
    BoundExceeded,
    FqMatrix,
    build_group,
    enumerate_U,
    generate_subgroup,
    regular_element,
    torus_elements,
)
from lieverify.unipotent import (
    Flag,
    act_on_flag,
    build_regular_subgroup,
    chevalley_violations,
    composite_iso_check,
    enumerate_flags,
    exponent_of_U,
    fixed_flags,
    flag_count,
    height_filtration,
    is_central_series,
    is_regular_unipotent,
    lower_central_series,
    nilpotence_class,
    orbit_decomposition,
    rref,
    superdiagonal_subgroup,
)


def G(family, n, p, r=1):
    return build_group(family, n, make_field(p, r))


def E(f, n, *positions, c=1):
    entries = {(i, i): 1 for i in range(n)}
    for i, j in positions:
        entries[(i - 1, j - 1)] = c
    return FqMatrix.from_entries(f, n, entries)


def superdiag(f, n):
    return E(f, n, *[(i, i + 1) for i in range(1, n)])


# regularity ---------------------------------------------------------------

def test_regular_unipotent_examples():
    g3 = G("GL", 3, 3)
    assert is_regular_unipotent(g3, superdiag(g3.field, 3))
    assert not is_regular_unipotent(g3, g3.identity())
    g2 = G("GL", 3, 2)
    assert not is_regular_unipotent(g2, E(g2.field, 3, (2, 3)))


def test_regular_unipotent_rejects_non_U():
    g = G("GL", 2, 3)
    with pytest.raises(ValueError):
        is_regular_unipotent(g, FqMatrix.diagonal(g.field, [2, 1]))


@pytest.mark.parametrize("args", [("GL", 2, 2, 1), ("GL", 4, 3, 1), ("SL", 3, 2, 2), ("Sp", 4, 2, 1), ("Sp", 6, 3, 1)])
def test_regular_unipotents_exist(args):
    g = G(*args)
    x = regular_element(g)
    assert g.in_U(x) and is_regular_unipotent(g, x)


# flags ----------------------------------------------------------------------

@pytest.mark.parametrize("n,p,r,count", [(3, 2, 1, 21), (2, 3, 1, 4), (3, 3, 1, 52), (2, 2, 2, 5), (4, 2, 1, 315)])
def test_enumerate_flags_counts(n, p, r, count):
    f = make_field(p, r)
    flags = list(enumerate_flags(n, f))
    assert len(flags) == len(set(flags)) == count == flag_count(n, f.q)


def test_flags_are_canonical_and_nested():
    f = make_field(3)
    for fl in enumerate_flags(3, f):
        for k, v in enumerate(fl.subspaces, start=1):
            assert len(v) == k
            assert rref(f, v) == v
        assert rref(f, list(fl.subspaces[0]) + list(fl.subspaces[1])) == fl.subspaces[1]


def test_enumerate_flags_bound():
    with pytest.raises(BoundExceeded):
        list(enumerate_flags(3, make_field(3), bound=10))


def test_fixed_flags_examples():
    g = G("GL", 3, 2)
    f = g.field
    only = fixed_flags(g, [superdiag(f, 3)])
    assert len(only) == 1 and only[0].is_standard()
    assert len(fixed_flags(g, [g.identity()])) == 21
    assert len(fixed_flags(g, [E(f, 3, (1, 2))])) == 5


def test_fixed_flags_matches_exhaustive_filter():
    g = G("GL", 3, 3)
    rng = random.Random(3)
    U = list(enumerate_U(g))
    flags = list(enumerate_flags(3, g.field))
    for x in rng.sample(U, 8):
        brute = {fl for fl in flags if act_on_flag(x, fl) == fl}
        assert set(fixed_flags(g, [x])) == brute


def test_fixed_flags_needs_gl():
    g = G("Sp", 4, 3)
    with pytest.raises(ValueError):
        fixed_flags(g, [g.identity()])


@pytest.mark.parametrize("n,p,r", [(2, 2, 1), (2, 3, 1), (2, 2, 2), (3, 2, 1), (3, 3, 1)])
def test_regularity_criteria_agree(n, p, r):
    g = G("GL", n, p, r)
    for x in enumerate_U(g):
        assert is_regular_unipotent(g, x) == (len(fixed_flags(g, [x])) == 1)


def test_conjugation_preserves_regularity():
    # regularity is read off fixed flags, so it makes sense for any conjugate
    g = G("GL", 3, 3)
    rng = random.Random(7)
    f = g.field
    x = superdiag(f, 3)
    done = 0
    while done < 20:
        m = FqMatrix(tuple(tuple(rng.randrange(3) for _ in range(3)) for _ in range(3)), f)
        if m.det() == 0:
            continue
        y = m @ x @ m.inverse()
        assert len(fixed_flags(g, [y])) == 1
        done += 1


# the subgroup A --------------------------------------------------------------

def test_regular_subgroup_gl3_f3():
    g = G("GL", 3, 3)
    f = g.field
    A = build_regular_subgroup(g)
    x = superdiag(f, 3)  # I + J
    I = g.identity()
    # (I + J)^2 = I + 2J + J^2
    square = FqMatrix.from_entries(f, 3, {(0, 0): 1, (1, 1): 1, (2, 2): 1, (0, 1): 2, (1, 2): 2, (0, 2): 1})
    assert set(A.elements) == {I, x, square}
    assert x @ x == square and A.rank == 1
    assert all(is_regular_unipotent(g, x) for x in A.elements if x != I)


def test_regular_subgroup_gl2_f4():
    g = G("GL", 2, 2, 2)
    A = build_regular_subgroup(g)
    assert A.rank == 2 and len(A.elements) == 4
    assert {x[0, 1] for x in A.elements} == set(g.field.elements())


def test_regular_subgroup_precondition():
    with pytest.raises(ValueError):
        build_regular_subgroup(G("GL", 4, 3))
    with pytest.raises(ValueError):
        build_regular_subgroup(G("Sp", 4, 3))
    with pytest.raises(ValueError):
        build_regular_subgroup(G("Sp", 4, 5, 2))


@pytest.mark.parametrize("args", [("GL", 3, 3, 1), ("GL", 3, 3, 2), ("GL", 2, 5, 2), ("SL", 3, 3, 1), ("Sp", 4, 5, 1), ("Sp", 6, 7, 1)])
def test_regular_subgroup_invariants(args):
    g = G(*args)
    A = build_regular_subgroup(g)
    I = g.identity()
    assert len(A.elements) == g.p ** g.field.r
    assert all(x @ y == y @ x for x in A.elements for y in A.elements)
    assert all((x ** g.p) == I for x in A.elements)
    assert all(is_regular_unipotent(g, x) for x in A.elements if x != I)
    assert all(composite_iso_check(g, A, s) for s in range(1, g.rank + 1))
    if g.family != "Sp":
        assert len(fixed_flags(g, A.generators)) == 1


def test_composite_iso_check_examples():
    g = G("GL", 3, 3)
    A = build_regular_subgroup(g)
    assert composite_iso_check(g, A, 1) and composite_iso_check(g, A, 2)
    g4 = G("GL", 2, 2, 2)
    assert composite_iso_check(g4, build_regular_subgroup(g4), 1)
    central = [E(g.field, 3, (1, 3), c=c) for c in range(3)]
    assert not composite_iso_check(g, central, 1)


def test_orbit_examples():
    g = G("GL", 3, 3)
    assert orbit_decomposition(g, build_regular_subgroup(g)) == Counter({1: 1, 3: 17})
    g2 = G("GL", 2, 3)
    assert orbit_decomposition(g2, [E(g2.field, 2, (1, 2))]) == Counter({1: 1, 3: 1})
    assert orbit_decomposition(g, [g.identity()]) == Counter({1: 52})


def test_superdiagonal_subgroup_when_n_exceeds_p():
    g = G("GL", 3, 2, 2)
    gens, elements = superdiagonal_subgroup(g)
    assert len(gens) == 2 and len(elements) == 16
    assert len(fixed_flags(g, gens)) == 1
    orbits = orbit_decomposition(g, gens)
    assert orbits[1] == 1
    assert sum(k * v for k, v in orbits.items()) == flag_count(3, 4)


# filtration, series, exponent ------------------------------------------------

def _orders(g):
    return [len(generate_subgroup(c, g.identity())) for c in height_filtration(g)]


def test_height_filtration_orders():
    assert _orders(G("GL", 3, 2)) == [8, 2, 1]
    assert _orders(G("GL", 2, 5)) == [5, 1]
    assert _orders(G("Sp", 4, 3)) == [81, 9, 3, 1]


@pytest.mark.parametrize("args", [("GL", 3, 3), ("GL", 4, 3), ("GL", 4, 2), ("Sp", 4, 3)])
def test_height_filtration_is_central(args):
    g = G(*args)
    assert is_central_series(g, height_filtration(g))


def test_artificial_chain_is_not_central():
    g = G("GL", 3, 3)
    assert not is_central_series(g, [height_filtration(g)[0], []])


@pytest.mark.parametrize("args", [("GL", 3, 2), ("GL", 4, 3), ("Sp", 4, 3), ("Sp", 6, 2)])
def test_nilpotence_class_bound(args):
    g = G(*args)
    series = lower_central_series(g)
    assert len(series[-1]) == 1
    assert nilpotence_class(g) <= g.coxeter_number - 1


@pytest.mark.parametrize("args", [("GL", 3, 3), ("GL", 4, 2), ("Sp", 4, 3)])
def test_chevalley_containment(args):
    assert chevalley_violations(G(*args)) == []


@pytest.mark.parametrize("args,expected", [(("GL", 3, 3), 3), (("GL", 4, 3), 9), (("GL", 2, 2, 2), 2), (("GL", 3, 2), 4), (("Sp", 4, 5), 5), (("Sp", 4, 3), 9)])
def test_exponent_examples(args, expected):
    assert exponent_of_U(G(*args)) == expected


def test_exponent_bound():
    with pytest.raises(BoundExceeded):
        exponent_of_U(G("GL", 4, 3), bound=100)
