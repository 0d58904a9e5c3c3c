"""Root systems in simple-root coordinates.

Cartan matrix convention: ``cartan[i][j] = <alpha_i^vee, alpha_j>``, so that
column j lists the coordinates of the simple root alpha_j in the basis of
fundamental weights.  Simple roots are numbered as in Bourbaki; in B_n the
last simple root is short, in C_n it is long.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterator

Root = tuple[int, ...]

VALID_TYPES = "ABCDEFG"


class LatticeKind(enum.Enum):
    ROOT = "root-lattice"
    WEIGHT = "weight-lattice"

    @classmethod
    def parse(cls, text: str) -> "LatticeKind":
        for kind in cls:
            if text in (kind.value, kind.name.lower(), kind.value.split("-")[0]):
                return kind
        raise ValueError(f"unknown lattice {text!r}; expected 'root' or 'weight'")


def _check_datum(t: str, n: int) -> None:
    ok = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }.get(t, False)
    if not ok:
        raise ValueError(f"invalid Dynkin datum {t}_{n}")


def cartan_matrix(t: str, n: int) -> tuple[tuple[int, ...], ...]:
    _check_datum(t, n)
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    if t in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if t == "B":
            # alpha_n short: <alpha_n^vee, alpha_{n-1}> = -2
            link(n - 2, n - 1, -1, -2)
        elif t == "C":
            link(n - 2, n - 1, -2, -1)
    elif t == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif t == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif t == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif t == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -3, -1)
    return tuple(tuple(row) for row in a)


@dataclass(frozen=True)
class RootSystem:
    dynkin_type: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def label(self) -> str:
        return f"{self.dynkin_type}{self.rank}"

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(self.simple_root(s) for s in range(1, self.rank + 1))

    @property
    def roots(self) -> tuple[Root, ...]:
        """All of Phi: positive roots followed by their negatives."""
        return self.positive_roots + tuple(neg(a) for a in self.positive_roots)

    def is_root(self, v: Root) -> bool:
        v = tuple(v)
        return v in self._index or neg(v) in self._index

    def is_positive_root(self, v: Root) -> bool:
        return tuple(v) in self._index

    def simple_root(self, s: int) -> Root:
        """Simple root alpha_s, 1-based."""
        if not 1 <= s <= self.rank:
            raise ValueError(f"simple index {s} out of range 1..{self.rank}")
        return tuple(1 if i == s - 1 else 0 for i in range(self.rank))

    def pairing(self, i: int, v: Root) -> int:
        """<alpha_i^vee, v> for 0-based i."""
        return sum(c * x for c, x in zip(self.cartan[i], v))

    def reflect(self, i: int, v: Root) -> Root:
        k = self.pairing(i, v)
        return tuple(x - (k if j == i else 0) for j, x in enumerate(v))


def neg(v: Root) -> Root:
    return tuple(-x for x in v)


def _sort_key(v: Root) -> tuple:
    return (sum(v), v)


def _closure(cartan, n: int) -> list[Root]:
    simple = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                if v == simple[i]:
                    continue
                k = sum(c * x for c, x in zip(cartan[i], v))
                w = tuple(x - (k if j == i else 0) for j, x in enumerate(v))
                if w not in found:
                    found.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(found, key=_sort_key)


@lru_cache(maxsize=None)
def build_root_system(dynkin_type: str, rank: int) -> RootSystem:
    """Positive roots by reflection closure, ordered by (height, lex)."""
    t = dynkin_type.upper()
    cartan = cartan_matrix(t, rank)
    pos = _closure(cartan, rank)
    for v in pos:
        if min(v) < 0 or max(v) <= 0:
            raise AssertionError(f"non-positive vector {v} produced by closure")
    rs = RootSystem(t, rank, cartan, tuple(pos))
    rs._index.update({v: i for i, v in enumerate(pos)})
    # closure check: every simple reflection permutes Phi
    for v in rs.roots:
        for i in range(rank):
            if not rs.is_root(rs.reflect(i, v)):
                raise AssertionError(f"{rs.label} not closed under s_{i + 1}")
    if t == "C":
        col = [cartan[i][rank - 1] for i in range(rank)]
        if any(c % 2 for c in col):
            raise AssertionError("C_n convention: long simple root column must be even")
    return rs


def height(rs: RootSystem, root: Root) -> int:
    if not rs.is_positive_root(root):
        raise ValueError(f"{tuple(root)} is not a positive root of {rs.label}")
    return sum(root)


def coxeter_number(rs: RootSystem) -> int:
    return max(sum(v) for v in rs.positive_roots) + 1


def is_good_prime(rs: RootSystem, p: int) -> bool:
    """No nonzero simple-root coefficient of a positive root is divisible by p."""
    return all(c % p for v in rs.positive_roots for c in v if c)


def weight_coords(rs: RootSystem, root: Root) -> tuple[int, ...]:
    if not rs.is_root(root):
        raise ValueError(f"{tuple(root)} is not a root of {rs.label}")
    return tuple(rs.pairing(i, root) for i in range(rs.rank))


def _gcd(xs) -> int:
    return reduce(gcd, (abs(x) for x in xs), 0)


def divisibility_in_lattice(rs: RootSystem, root: Root, lattice: LatticeKind) -> int:
    """Largest m with root = m*y for y in the given lattice."""
    if not rs.is_root(root):
        raise ValueError(f"{tuple(root)} is not a root of {rs.label}")
    if lattice is LatticeKind.ROOT:
        return _gcd(root)
    return _gcd(weight_coords(rs, root))


# ----------------------------------------------------------------------
# root lengths (not needed for the lattice criterion, only to name roots)
# ----------------------------------------------------------------------

def _simple_lengths(rs: RootSystem) -> list[Fraction]:
    # a_ij |alpha_i|^2 = a_ji |alpha_j|^2 on each edge
    n = rs.rank
    lengths: list[Fraction | None] = [None] * n
    lengths[0] = Fraction(2)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and rs.cartan[i][j] and lengths[j] is None:
                lengths[j] = lengths[i] * rs.cartan[i][j] / rs.cartan[j][i]
                stack.append(j)
    return lengths  # type: ignore[return-value]


def root_norm(rs: RootSystem, root: Root) -> Fraction:
    """Squared length under the invariant form normalized by |alpha_1|^2 = 2."""
    lengths = _simple_lengths(rs)
    n = rs.rank
    total = Fraction(0)
    for i in range(n):
        for j in range(n):
            # (alpha_i, alpha_j) = a_ij |alpha_i|^2 / 2
            total += root[i] * root[j] * rs.cartan[i][j] * lengths[i] / 2
    return total


def is_long_root(rs: RootSystem, root: Root) -> bool:
    """True for roots of maximal length; every root when simply laced."""
    top = max(root_norm(rs, v) for v in rs.positive_roots)
    return root_norm(rs, root) == top


def dynkin_data(max_rank: int = 8) -> Iterator[tuple[str, int]]:
    for t in VALID_TYPES:
        for n in range(1, max_rank + 1):
            try:
                _check_datum(t, n)
            except ValueError:
                continue
            yield t, n


def is_type_c_class(t: str, n: int) -> bool:
    """C_n up to isomorphism: C_n itself, plus B_2 = C_2 and A_1 = C_1."""
    return t == "C" or (t, n) in (("B", 2), ("A", 1))


def weight_divisibility_scan(max_rank: int = 8) -> list[tuple[str, int, Root, int]]:
    """Every (type, rank, root, m) with root divisible by m > 1 in the weight lattice."""
    hits = []
    for t, n in dynkin_data(max_rank):
        rs = build_root_system(t, n)
        for v in rs.roots:
            m = divisibility_in_lattice(rs, v, LatticeKind.WEIGHT)
            if m > 1:
                hits.append((t, n, v, m))
    return hits
