"""How the torus acts on each root subgroup.

t x_alpha(1) t^-1 = x_alpha(alpha(t)), and the image of alpha: T -> F_q^x
has index gcd(m, q-1) where m is the divisibility of alpha in the
character lattice of T.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .groups import FqMatrix, LieGroupData, root_subgroup_element, torus_elements
from .rootdata import LatticeKind, Root, RootSystem, divisibility_in_lattice, is_long_root


@dataclass(frozen=True)
class RootActionReport:
    root: Root
    image: frozenset[int]
    index: int
    predicted_divisors: frozenset[int]

    @property
    def predicted_index(self) -> int:
        return max(self.predicted_divisors)


def _conjugate_by_diagonal(t: FqMatrix, x: FqMatrix) -> FqMatrix:
    # (t x t^-1)_{ab} = t_a x_ab / t_b
    f = x.field
    d = [t[i, i] for i in range(t.n)]
    dinv = [f.inv(c) for c in d]
    return FqMatrix(
        tuple(
            tuple(f.mul(f.mul(d[a], v), dinv[b]) if v else 0 for b, v in enumerate(row))
            for a, row in enumerate(x.rows)
        ),
        f,
    )


def character_lattice(g: LieGroupData) -> str:
    """GL has the torus lattice Z^n; SL_n and Sp_2m are simply connected."""
    return "torus-lattice" if g.family == "GL" else LatticeKind.WEIGHT.value


def character_divisibility(g: LieGroupData, alpha: Root) -> int:
    """Divisibility of alpha in the character lattice of this group's torus."""
    if g.family == "GL":
        (a, b, _), *_ = g.root_entries[tuple(alpha)]
        vec = [x - y for x, y in zip(g.basis_weights[a], g.basis_weights[b])]
        out = 0
        for v in vec:
            out = gcd(out, abs(v))
        return out
    return divisibility_in_lattice(g.root_system, alpha, LatticeKind.WEIGHT)


def predicted_index_divisors(rs: RootSystem, lattice: LatticeKind, alpha: Root, q: int) -> frozenset[int]:
    """{n : n | q-1 and alpha divisible by n in the lattice}."""
    m = divisibility_in_lattice(rs, alpha, lattice)
    return frozenset(n for n in range(1, q) if (q - 1) % n == 0 and m % n == 0)


def _divisors_from(m: int, q: int) -> frozenset[int]:
    return frozenset(n for n in range(1, q) if (q - 1) % n == 0 and m % n == 0)


def root_action_image(g: LieGroupData, alpha: Root) -> RootActionReport:
    """Sweep all of T and collect alpha(t) from t x_alpha(1) t^-1."""
    alpha = tuple(alpha)
    x = root_subgroup_element(g, alpha, 1)
    pos = g.root_position(alpha)
    image = set()
    for t in torus_elements(g):
        y = _conjugate_by_diagonal(t, x)
        c = y[pos]
        if y != root_subgroup_element(g, alpha, c):
            raise RuntimeError(f"conjugate of x_{alpha}(1) is not in X_{alpha}")
        image.add(c)
    q = g.q
    if len(image) == 0 or (q - 1) % len(image):
        raise RuntimeError("image is not a subgroup of F_q^x")
    f = g.field
    for a in image:
        for b in image:
            if f.mul(a, f.inv(b)) not in image:
                raise RuntimeError("image is not closed under division")
    return RootActionReport(
        root=alpha,
        image=frozenset(image),
        index=(q - 1) // len(image),
        predicted_divisors=_divisors_from(character_divisibility(g, alpha), q),
    )


def expected_index(g: LieGroupData, alpha: Root) -> int:
    """Family rule: long roots of Sp (including SL_2 = Sp_2) have index gcd(2, q-1)."""
    two = gcd(2, g.q - 1)
    if g.family == "Sp" and is_long_root(g.root_system, alpha):
        return two
    if g.family == "SL" and g.n == 2:
        return two
    return 1


def cross_check_rows(g: LieGroupData) -> list[tuple[RootActionReport, int]]:
    return [(root_action_image(g, a), expected_index(g, a)) for a in g.root_system.roots]


def cross_check(g: LieGroupData) -> bool:
    """Computed index = lattice prediction = family rule, for every root."""
    return all(
        rep.index == rep.predicted_index == want for rep, want in cross_check_rows(g)
    )
