"""Regular unipotents, flags, the subgroup A, and the height filtration of U.

Flags live in F_q^n (column vectors).  A subspace is stored as its reduced
row echelon basis, so ``x . V`` is computed by transforming the basis rows
and re-reducing; two subspaces are equal iff their echelon forms are.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import prod
from typing import Iterable, Iterator, Sequence

from .gfq import FieldTable, fp_basis
from .groups import (
    DEFAULT_ELEMENT_BOUND,
    BoundExceeded,
    FqMatrix,
    LieGroupData,
    commutator,
    element_order,
    enumerate_U,
    generate_subgroup,
    in_U_s,
    root_subgroup_element,
    root_subgroup_generators,
    simple_coordinate,
)
from .rootdata import Root

DEFAULT_FLAG_BOUND = 100_000

Subspace = tuple[tuple[int, ...], ...]


# ----------------------------------------------------------------------
# regularity
# ----------------------------------------------------------------------

def is_regular_unipotent(g: LieGroupData, x: FqMatrix) -> bool:
    """For x in U: regular iff x avoids U_s for every simple s."""
    return all(not in_U_s(g, x, s) for s in range(1, g.rank + 1))


# ----------------------------------------------------------------------
# subspaces and flags
# ----------------------------------------------------------------------

def rref(f: FieldTable, rows: Iterable[Sequence[int]]) -> Subspace:
    a = [list(r) for r in rows]
    out: list[list[int]] = []
    if not a:
        return ()
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = f.inv(a[r][c])
        a[r] = [f.mul(inv, x) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                k = a[i][c]
                a[i] = [f.sub(x, f.mul(k, y)) for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    out = a[:r]
    return tuple(tuple(row) for row in out)


def _pivots(v: Subspace) -> list[int]:
    return [next(j for j, x in enumerate(row) if x) for row in v]


def _act_rows(x: FqMatrix, rows: Subspace) -> list[list[int]]:
    # each row is a vector v; returns rows of x v
    f = x.field
    out = []
    for v in rows:
        w = []
        for xrow in x.rows:
            s = 0
            for a, b in zip(xrow, v):
                if a and b:
                    s = f.add(s, f.mul(a, b))
            w.append(s)
        out.append(w)
    return out


def act_on_subspace(x: FqMatrix, v: Subspace) -> Subspace:
    return rref(x.field, _act_rows(x, v))


def is_invariant(x: FqMatrix, v: Subspace) -> bool:
    return act_on_subspace(x, v) == v


@dataclass(frozen=True)
class Flag:
    """Complete flag V_1 < ... < V_{n-1}, each in echelon form."""

    n: int
    subspaces: tuple[Subspace, ...]

    def is_standard(self) -> bool:
        return all(
            v == tuple(tuple(1 if i == j else 0 for j in range(self.n)) for i in range(k + 1))
            for k, v in enumerate(self.subspaces)
        )


def act_on_flag(x: FqMatrix, flag: Flag) -> Flag:
    return Flag(flag.n, tuple(act_on_subspace(x, v) for v in flag.subspaces))


def flag_count(n: int, q: int) -> int:
    return prod((q**k - 1) // (q - 1) for k in range(1, n + 1))


def _extensions(f: FieldTable, v: Subspace, n: int) -> Iterator[Subspace]:
    """All (k+1)-dim subspaces containing the k-dim subspace v."""
    piv = set(_pivots(v))
    free = [j for j in range(n) if j not in piv]
    elements = list(f.elements())
    for idx, lead in enumerate(free):
        tail = free[idx + 1 :]
        for vals in itertools.product(elements, repeat=len(tail)):
            w = [0] * n
            w[lead] = 1
            for j, c in zip(tail, vals):
                w[j] = c
            yield rref(f, list(v) + [w])


def enumerate_flags(n: int, f: FieldTable, bound: int = DEFAULT_FLAG_BOUND) -> Iterator[Flag]:
    """Every complete flag of F_q^n exactly once."""
    total = flag_count(n, f.q)
    if total > bound:
        raise BoundExceeded(f"{total} flags exceed the flag bound {bound}")

    def rec(chain: tuple[Subspace, ...]) -> Iterator[Flag]:
        if len(chain) == n - 1:
            yield Flag(n, chain)
            return
        last = chain[-1] if chain else ()
        for w in _extensions(f, last, n):
            yield from rec(chain + (w,))

    yield from rec(())


def _require_flag_family(g: LieGroupData) -> None:
    if g.family not in ("GL", "SL"):
        raise ValueError(f"flag computations are implemented for GL/SL only, not {g.family}")


def fixed_flags(g: LieGroupData, S: Iterable[FqMatrix], bound: int = DEFAULT_FLAG_BOUND) -> list[Flag]:
    """Flags fixed by every x in S.

    The search only extends chains whose members are already invariant, and
    ``bound`` caps the number of subspaces visited.
    """
    _require_flag_family(g)
    S = list(S)
    n, f = g.n, g.field
    visited = 0
    found: list[Flag] = []

    def rec(chain: tuple[Subspace, ...]) -> None:
        nonlocal visited
        if len(chain) == n - 1:
            found.append(Flag(n, chain))
            return
        last = chain[-1] if chain else ()
        for w in _extensions(f, last, n):
            visited += 1
            if visited > bound:
                raise BoundExceeded(f"fixed flag search visited more than {bound} subspaces")
            if all(is_invariant(x, w) for x in S):
                rec(chain + (w,))

    rec(())
    return found


# ----------------------------------------------------------------------
# the subgroup A
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RegularSubgroup:
    group: LieGroupData
    generators: tuple[FqMatrix, ...]
    elements: tuple[FqMatrix, ...]

    @property
    def rank(self) -> int:
        return len(self.generators)


def superdiagonal_nilpotent(g: LieGroupData) -> FqMatrix:
    """J: ones on the superdiagonal, zero elsewhere."""
    n = g.n
    rows = tuple(tuple(1 if j == i + 1 else 0 for j in range(n)) for i in range(n))
    return FqMatrix(rows, g.field)


def _add_scaled(x: FqMatrix, lam: int, y: FqMatrix) -> FqMatrix:
    f = x.field
    return FqMatrix(
        tuple(tuple(f.add(a, f.mul(lam, b)) for a, b in zip(r1, r2)) for r1, r2 in zip(x.rows, y.rows)),
        f,
    )


def check_regular_subgroup(g: LieGroupData, elements: Sequence[FqMatrix], rank: int) -> list[str]:
    """Problems with the claimed A; empty when every invariant holds."""
    problems = []
    ident = g.identity()
    if len(set(elements)) != g.p**rank:
        problems.append(f"|A| = {len(set(elements))}, expected {g.p}^{rank}")
    for x in elements:
        if not g.in_U(x):
            problems.append("element outside U")
            break
    for x, y in itertools.combinations(elements, 2):
        if x @ y != y @ x:
            problems.append("A is not abelian")
            break
    for x in elements:
        if x == ident:
            continue
        if element_order(x) != g.p:
            problems.append(f"element of order {element_order(x)} != p")
            break
        if not is_regular_unipotent(g, x):
            problems.append("nontrivial element is not regular unipotent")
            break
    return problems


def superdiagonal_subgroup(g: LieGroupData) -> tuple[list[FqMatrix], list[FqMatrix]]:
    """(generators, elements) of <I + lambda*J : lambda in the F_p-basis>.

    No condition on n: when n > p this group is abelian but not elementary
    abelian, though it still contains the regular element I + J.
    """
    j = superdiagonal_nilpotent(g)
    gens = [_add_scaled(g.identity(), lam, j) for lam in fp_basis(g.field)]
    elements = sorted(generate_subgroup(gens, g.identity()), key=lambda m: m.rows)
    return gens, elements


def build_regular_subgroup(g: LieGroupData) -> RegularSubgroup:
    """Elementary abelian p-subgroup of rank r with every nontrivial element regular.

    GL/SL with n <= p: generated by I + lambda*J over an F_p-basis lambda.
    Sp with h <= p and r = 1: the cyclic group of prod_s x_{alpha_s}(1).
    """
    p, r = g.p, g.field.r
    h = g.coxeter_number
    if g.family in ("GL", "SL"):
        if g.n > p:
            raise ValueError(f"n = {g.n} > p = {p}: no construction (Coxeter number exceeds p)")
        j = superdiagonal_nilpotent(g)
        gens = tuple(_add_scaled(g.identity(), lam, j) for lam in fp_basis(g.field))
    elif g.family == "Sp":
        if h > p:
            raise ValueError(f"Coxeter number {h} > p = {p}")
        if r != 1:
            raise ValueError("Sp construction is only provided for r = 1")
        x = g.identity()
        for a in g.root_system.simple_roots:
            x = x @ root_subgroup_element(g, a, 1)
        gens = (x,)
    else:  # pragma: no cover - families are validated in build_group
        raise ValueError(g.family)
    elements = tuple(sorted(generate_subgroup(gens, g.identity()), key=lambda m: m.rows))
    problems = check_regular_subgroup(g, elements, len(gens))
    if problems:
        raise RuntimeError(f"constructed subgroup fails verification: {problems}")
    return RegularSubgroup(g, gens, elements)


def _elements_of(A) -> list[FqMatrix]:
    return list(A.elements) if isinstance(A, RegularSubgroup) else list(A)


def composite_iso_check(g: LieGroupData, A, s: int) -> bool:
    """a -> (alpha_s coordinate of a) is a bijection A -> F_q."""
    elems = _elements_of(A)
    for a in elems:
        if not g.in_U(a):
            raise ValueError("A is not contained in U")
    images = [simple_coordinate(g, a, s) for a in elems]
    return len(elems) == g.q and len(set(images)) == g.q


def orbit_decomposition(g: LieGroupData, A, bound: int = DEFAULT_FLAG_BOUND) -> Counter:
    """Multiset {orbit size: count} of A acting on all flags."""
    _require_flag_family(g)
    gens = list(A.generators) if isinstance(A, RegularSubgroup) else _elements_of(A)
    flags = list(enumerate_flags(g.n, g.field, bound))
    index = {fl: i for i, fl in enumerate(flags)}
    perms = [[index[act_on_flag(x, fl)] for fl in flags] for x in gens]
    seen = [False] * len(flags)
    sizes: Counter = Counter()
    for start in range(len(flags)):
        if seen[start]:
            continue
        seen[start] = True
        stack, size = [start], 0
        while stack:
            i = stack.pop()
            size += 1
            for perm in perms:
                j = perm[i]
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        sizes[size] += 1
    return sizes


# ----------------------------------------------------------------------
# height filtration, central series, exponent
# ----------------------------------------------------------------------

def height_filtration(g: LieGroupData) -> list[list[FqMatrix]]:
    """Generators of U_{ht >= k} for k = 1, ..., h (the last one trivial)."""
    h = g.coxeter_number
    out = []
    for k in range(1, h + 1):
        gens = []
        for a in g.positive_roots:
            if sum(a) >= k:
                gens.extend(root_subgroup_generators(g, a))
        out.append(gens)
    return out


def is_central_series(g: LieGroupData, chain: Sequence[Sequence[FqMatrix]], bound: int = DEFAULT_ELEMENT_BOUND) -> bool:
    """Whether the subgroups generated by ``chain`` descend to 1 with
    [U, H_k] inside H_{k+1}.

    Checked on generators: with H_{k+1} normal in U, commuting generator
    images in U/H_{k+1} already force [U, H_k] <= H_{k+1}.
    """
    ident = g.identity()
    u_gens = list(chain[0])
    groups = [generate_subgroup(c, ident, bound) for c in chain]
    if groups[-1] != {ident}:
        return False
    for k in range(len(chain) - 1):
        upper, lower = chain[k], groups[k + 1]
        if any(x not in groups[k] for x in chain[k + 1]):
            return False
        for u in u_gens:
            uinv = u.inverse()
            if any(u @ y @ uinv not in lower for y in chain[k + 1]):
                return False
            if any(commutator(u, x) not in lower for x in upper):
                return False
    return True


def normal_closure(gens: Sequence[FqMatrix], ambient_gens: Sequence[FqMatrix], identity: FqMatrix, bound: int = DEFAULT_ELEMENT_BOUND) -> tuple[list[FqMatrix], set[FqMatrix]]:
    gens = list(gens)
    while True:
        group = generate_subgroup(gens, identity, bound)
        extra = []
        for u in ambient_gens:
            uinv = u.inverse()
            for y in gens:
                c = u @ y @ uinv
                if c not in group and c not in extra:
                    extra.append(c)
        if not extra:
            return gens, group
        gens.extend(extra)


def lower_central_series(g: LieGroupData, bound: int = DEFAULT_ELEMENT_BOUND) -> list[set[FqMatrix]]:
    """gamma_1 = U, gamma_{i+1} = [U, gamma_i], down to the trivial group.

    [U, gamma_i] is the normal closure in U of the commutators of generators.
    """
    ident = g.identity()
    u_gens = height_filtration(g)[0]
    gens, group = list(u_gens), generate_subgroup(u_gens, ident, bound)
    series = [group]
    while len(group) > 1:
        comms = [commutator(u, y) for u in u_gens for y in gens]
        comms = [c for c in dict.fromkeys(comms) if c != ident]
        gens, group = normal_closure(comms, u_gens, ident, bound)
        if group == series[-1]:  # pragma: no cover - U is nilpotent
            raise AssertionError("lower central series stalled")
        series.append(group)
    return series


def nilpotence_class(g: LieGroupData, bound: int = DEFAULT_ELEMENT_BOUND) -> int:
    return len(lower_central_series(g, bound)) - 1


def chevalley_violations(g: LieGroupData, scalars: Sequence[int] | None = None, bound: int = DEFAULT_ELEMENT_BOUND) -> list[tuple[Root, Root, int, int]]:
    """Pairs with [x_a(c), x_b(c')] outside <X_{ia+jb} : i, j > 0>."""
    rs = g.root_system
    f = g.field
    scalars = list(f.elements()) if scalars is None else list(scalars)
    ident = g.identity()
    bad = []
    for a, b in itertools.permutations(g.positive_roots, 2):
        targets = []
        for i in range(1, 4):
            for j in range(1, 4):
                gamma = tuple(i * x + j * y for x, y in zip(a, b))
                if rs.is_root(gamma):
                    targets.append(gamma)
        gens = [x for gamma in targets for x in root_subgroup_generators(g, gamma)]
        sub = generate_subgroup(gens, ident, bound)
        for c in scalars:
            xa = root_subgroup_element(g, a, c)
            for d in scalars:
                if commutator(xa, root_subgroup_element(g, b, d)) not in sub:
                    bad.append((a, b, c, d))
    return bad


def exponent_of_U(g: LieGroupData, bound: int = DEFAULT_ELEMENT_BOUND) -> int:
    """lcm of element orders over U; orders are p-powers, so this is the max."""
    best = 1
    for x in enumerate_U(g, bound):
        best = max(best, element_order(x))
    return best
