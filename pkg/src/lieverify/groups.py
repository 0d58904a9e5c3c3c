"""Matrix models of GL_n, SL_n and Sp_2m over F_q.

B is upper triangular, T diagonal, U upper unitriangular.  Every root
alpha has a nilpotent matrix X_alpha with X_alpha^2 = 0 and
x_alpha(c) = I + c*X_alpha.

Symplectic form on F_q^{2m}: J = [[0, K], [-K, 0]] with K the m x m
antidiagonal of ones, torus diag(t_1..t_m, t_m^-1..t_1^-1).  Basis vector
a (0-based) carries the torus weight e_{a+1} for a < m and -e_{2m-a} after.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Sequence

from .gfq import FieldTable, fp_basis
from .rootdata import Root, RootSystem, build_root_system, coxeter_number

DEFAULT_ELEMENT_BOUND = 2_000_000

FAMILIES = ("GL", "SL", "Sp")


class BoundExceeded(RuntimeError):
    """An enumeration would exceed the configured budget."""


# ----------------------------------------------------------------------
# matrices
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FqMatrix:
    """Square matrix over F_q; entries are field element codes."""

    rows: tuple[tuple[int, ...], ...]
    field: FieldTable = dc_field(compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.rows[ij[0]][ij[1]]

    @classmethod
    def identity(cls, f: FieldTable, n: int) -> "FqMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), f)

    @classmethod
    def diagonal(cls, f: FieldTable, diag: Sequence[int]) -> "FqMatrix":
        n = len(diag)
        return cls(tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n)), f)

    @classmethod
    def from_entries(cls, f: FieldTable, n: int, entries: dict[tuple[int, int], int]) -> "FqMatrix":
        """Identity plus the given 0-based entries (overwriting)."""
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), c in entries.items():
            rows[i][j] = c
        return cls(tuple(map(tuple, rows)), f)

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        f = self.field
        add, mul = f.add, f.mul
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                s = 0
                for a, b in zip(row, col):
                    if a and b:
                        s = add(s, mul(a, b))
                new.append(s)
            out.append(tuple(new))
        return FqMatrix(tuple(out), f)

    def __pow__(self, e: int) -> "FqMatrix":
        if e < 0:
            return self.inverse() ** (-e)
        result = FqMatrix.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def transpose(self) -> "FqMatrix":
        return FqMatrix(tuple(zip(*self.rows)), self.field)

    def is_identity(self) -> bool:
        return all(x == (1 if i == j else 0) for i, row in enumerate(self.rows) for j, x in enumerate(row))

    def is_upper_unitriangular(self) -> bool:
        return all(
            x == (1 if i == j else 0)
            for i, row in enumerate(self.rows)
            for j, x in enumerate(row)
            if j <= i
        )

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, row in enumerate(self.rows) for j, x in enumerate(row) if i != j)

    def minus_identity(self) -> "FqMatrix":
        f = self.field
        return FqMatrix(
            tuple(tuple(f.sub(x, 1) if i == j else x for j, x in enumerate(row)) for i, row in enumerate(self.rows)),
            f,
        )

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)

    def _eliminate(self) -> tuple[int, "FqMatrix | None"]:
        """Gauss-Jordan on [A | I]; returns (det, inverse or None)."""
        f = self.field
        n = self.n
        a = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.rows)]
        det = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                return 0, None
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = f.neg(det)
            pv = a[c][c]
            det = f.mul(det, pv)
            inv = f.inv(pv)
            a[c] = [f.mul(inv, x) for x in a[c]]
            for i in range(n):
                if i != c and a[i][c]:
                    k = a[i][c]
                    a[i] = [f.sub(x, f.mul(k, y)) for x, y in zip(a[i], a[c])]
        return det, FqMatrix(tuple(tuple(row[n:]) for row in a), f)

    def det(self) -> int:
        return self._eliminate()[0]

    def inverse(self) -> "FqMatrix":
        if self.is_upper_unitriangular():
            return self._unitriangular_inverse()
        det, inv = self._eliminate()
        if inv is None:
            raise ZeroDivisionError("singular matrix")
        return inv

    def _unitriangular_inverse(self) -> "FqMatrix":
        # back substitution; avoids full elimination on the hot path
        f = self.field
        n = self.n
        a = self.rows
        x = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for j in range(n):
            for i in range(j - 1, -1, -1):
                s = 0
                for k in range(i + 1, j + 1):
                    if a[i][k] and x[k][j]:
                        s = f.add(s, f.mul(a[i][k], x[k][j]))
                x[i][j] = f.neg(s)
        return FqMatrix(tuple(map(tuple, x)), f)

    def format(self) -> list[str]:
        return [" ".join(self.field.format(x) for x in row) for row in self.rows]


def commutator(x: FqMatrix, y: FqMatrix) -> FqMatrix:
    """[x, y] = x^-1 y^-1 x y."""
    return x.inverse() @ y.inverse() @ x @ y


def conjugate(g: FqMatrix, x: FqMatrix) -> FqMatrix:
    """g x g^-1."""
    return g @ x @ g.inverse()


def element_order(x: FqMatrix, limit: int | None = None) -> int:
    """Least k >= 1 with x^k = I."""
    ident = FqMatrix.identity(x.field, x.n)
    if x == ident:
        return 1
    if is_unipotent(x):
        p = x.field.p
        k, y = 1, x
        while not y.is_identity():
            y = y**p
            k *= p
        return k
    if x.det() == 0:
        raise ValueError("singular matrix has no order")
    limit = limit or x.field.q ** (x.n * x.n)
    y, k = x, 1
    while not y.is_identity():
        y = y @ x
        k += 1
        if k > limit:  # pragma: no cover - cannot happen for invertible x
            raise RuntimeError("order search exceeded limit")
    return k


def is_unipotent(x: FqMatrix) -> bool:
    """(x - I)^n = 0."""
    n = x.n
    nil = x.minus_identity()
    return (nil**n).is_zero() if n else True


# ----------------------------------------------------------------------
# group data
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LieGroupData:
    family: str
    n: int
    field: FieldTable
    root_system: RootSystem
    # root -> tuple of (row, col, sign) with sign in {1, -1}
    root_entries: dict = dc_field(compare=False, repr=False)
    # simple index s (1-based) -> 0-based matrix position of its coordinate
    simple_root_positions: dict = dc_field(compare=False, repr=False)
    symplectic_form: FqMatrix | None = dc_field(default=None, compare=False, repr=False)
    # torus weight of each basis vector, as a vector in Z^n (GL/SL) or Z^m (Sp)
    basis_weights: tuple = dc_field(default=(), compare=False, repr=False)

    @property
    def label(self) -> str:
        return f"{self.family}_{self.n}(F_{self.field.q})"

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def rank(self) -> int:
        return self.root_system.rank

    @property
    def coxeter_number(self) -> int:
        return coxeter_number(self.root_system)

    @property
    def positive_roots(self) -> tuple[Root, ...]:
        return self.root_system.positive_roots

    def identity(self) -> FqMatrix:
        return FqMatrix.identity(self.field, self.n)

    def root_position(self, alpha: Root) -> tuple[int, int]:
        """Matrix entry that carries the x_alpha coordinate."""
        return self.root_entries[tuple(alpha)][0][:2]

    def character(self, alpha: Root, t: FqMatrix) -> int:
        """alpha(t) for diagonal t, read from the weights of the root position."""
        a, b = self.root_position(alpha)
        f = self.field
        return f.mul(t[a, a], f.inv(t[b, b]))

    def contains(self, x: FqMatrix) -> bool:
        if x.n != self.n or x.det() == 0:
            return False
        if self.family == "SL":
            return x.det() == 1
        if self.family == "Sp":
            j = self.symplectic_form
            return x.transpose() @ j @ x == j
        return True

    def in_U(self, x: FqMatrix) -> bool:
        return x.is_upper_unitriangular() and (self.family != "Sp" or self.contains(x))


def _root_system_for(family: str, n: int) -> RootSystem:
    if family in ("GL", "SL"):
        return build_root_system("A", n - 1)
    m = n // 2
    # Sp_2 = SL_2 and C_1 = A_1
    return build_root_system("C", m) if m >= 2 else build_root_system("A", 1)


def _gl_entries(rs: RootSystem) -> tuple[dict, tuple]:
    n = rs.rank + 1
    entries = {}
    for v in rs.roots:
        nz = [i for i, c in enumerate(v) if c]
        i, j = nz[0], nz[-1] + 1
        if v[nz[0]] > 0:
            entries[v] = ((i, j, 1),)
        else:
            entries[v] = ((j, i, 1),)
    weights = tuple(tuple(1 if k == a else 0 for k in range(n)) for a in range(n))
    return entries, weights


def _sp_basis_weights(m: int) -> tuple:
    out = []
    for a in range(2 * m):
        w = [0] * m
        if a < m:
            w[a] = 1
        else:
            w[2 * m - 1 - a] = -1
        out.append(tuple(w))
    return tuple(out)


def _sp_root_e_vector(rs: RootSystem, v: Root, m: int) -> tuple[int, ...]:
    # alpha_k = e_k - e_{k+1} (k < m), alpha_m = 2 e_m; for m = 1 the A_1 root is 2 e_1
    if m == 1:
        return (2 * v[0],)
    e = [0] * m
    for k, c in enumerate(v):
        if k < m - 1:
            e[k] += c
            e[k + 1] -= c
        else:
            e[m - 1] += 2 * c
    return tuple(e)


def _sp_entries(rs: RootSystem, m: int) -> tuple[dict, tuple]:
    n = 2 * m
    wts = _sp_basis_weights(m)

    def sigma(a: int) -> int:
        # J[a', a] with a' = n-1-a
        return 1 if a >= m else -1

    entries = {}
    for v in rs.roots:
        ev = _sp_root_e_vector(rs, v, m)
        pairs = [
            (a, b)
            for a in range(n)
            for b in range(n)
            if a != b and tuple(x - y for x, y in zip(wts[a], wts[b])) == ev
        ]
        if not pairs:
            raise AssertionError(f"no matrix position for root {v}")
        a, b = min(pairs)
        ap, bp = n - 1 - a, n - 1 - b
        if b == ap:
            entries[v] = ((a, b, 1),)
        else:
            # J X symmetric forces the partner sign -sigma(a) sigma(b)
            entries[v] = ((a, b, 1), (bp, ap, -sigma(a) * sigma(b)))
    return entries, wts


def build_group(family: str, n: int, field: FieldTable) -> LieGroupData:
    """GL_n, SL_n (n >= 2) or Sp_n (n = 2m) over the given field."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if family in ("GL", "SL") and n < 2:
        raise ValueError(f"{family}_n needs n >= 2, got {n}")
    if family == "Sp" and (n < 2 or n % 2):
        raise ValueError(f"Sp_n needs even n >= 2, got {n}")
    rs = _root_system_for(family, n)
    form = None
    if family == "Sp":
        m = n // 2
        entries, weights = _sp_entries(rs, m)
        rows = [[0] * n for _ in range(n)]
        for a in range(n):
            rows[a][n - 1 - a] = 1 if a < m else field.neg(1)
        form = FqMatrix(tuple(map(tuple, rows)), field)
    else:
        entries, weights = _gl_entries(rs)
    simple = {s: entries[rs.simple_root(s)][0][:2] for s in range(1, rs.rank + 1)}
    g = LieGroupData(family, n, field, rs, entries, simple, form, weights)
    _validate_group(g)
    return g


def _validate_group(g: LieGroupData) -> None:
    ident = g.identity()
    gens = torus_generators(g)
    for alpha in g.root_system.roots:
        x = root_subgroup_element(g, alpha, 1)
        if x == ident or not g.contains(x):
            raise AssertionError(f"bad root element for {alpha} in {g.label}")
        for t in gens:
            y = conjugate(t, x)
            c = y[g.root_position(alpha)]
            if y != root_subgroup_element(g, alpha, c) or c != g.character(alpha, t):
                raise AssertionError(f"T does not normalize X_{alpha} in {g.label}")


# ----------------------------------------------------------------------
# root subgroups, torus
# ----------------------------------------------------------------------

def root_subgroup_element(g: LieGroupData, alpha: Root, c: int) -> FqMatrix:
    """x_alpha(c) = I + c X_alpha."""
    alpha = tuple(alpha)
    if not g.root_system.is_root(alpha):
        raise ValueError(f"{alpha} is not a root of {g.root_system.label}")
    f = g.field
    ent = {}
    for a, b, sign in g.root_entries[alpha]:
        ent[(a, b)] = c if sign == 1 else f.neg(c)
    return FqMatrix.from_entries(f, g.n, ent)


def torus_element(g: LieGroupData, params: Sequence[int]) -> FqMatrix:
    f = g.field
    params = list(params)
    if any(t == 0 for t in params):
        raise ValueError("torus parameters must be nonzero")
    if g.family == "Sp":
        m = g.n // 2
        if len(params) != m:
            raise ValueError(f"Sp_{g.n} torus takes {m} parameters")
        diag = params + [f.inv(t) for t in reversed(params)]
    else:
        if len(params) != g.n:
            raise ValueError(f"{g.family}_{g.n} torus takes {g.n} parameters")
        if g.family == "SL":
            prod = 1
            for t in params:
                prod = f.mul(prod, t)
            if prod != 1:
                raise ValueError("SL torus parameters must multiply to 1")
        diag = params
    return FqMatrix.diagonal(f, diag)


def torus_generators(g: LieGroupData) -> list[FqMatrix]:
    f = g.field
    z = f.generator
    if g.q == 2:
        return [g.identity()]
    if g.family == "GL":
        k = g.n
        return [torus_element(g, [z if i == j else 1 for i in range(k)]) for j in range(k)]
    if g.family == "SL":
        k = g.n
        zi = f.inv(z)
        return [
            torus_element(g, [z if i == j else zi if i == j + 1 else 1 for i in range(k)])
            for j in range(k - 1)
        ]
    m = g.n // 2
    return [torus_element(g, [z if i == j else 1 for i in range(m)]) for j in range(m)]


def torus_elements(g: LieGroupData) -> Iterator[FqMatrix]:
    """Every element of T."""
    f = g.field
    units = list(f.nonzero())
    if g.family == "Sp":
        for params in itertools.product(units, repeat=g.n // 2):
            yield torus_element(g, params)
    elif g.family == "GL":
        for params in itertools.product(units, repeat=g.n):
            yield torus_element(g, params)
    else:
        for head in itertools.product(units, repeat=g.n - 1):
            prod = 1
            for t in head:
                prod = f.mul(prod, t)
            yield torus_element(g, list(head) + [f.inv(prod)])


def torus_order(g: LieGroupData) -> int:
    k = {"GL": g.n, "SL": g.n - 1, "Sp": g.n // 2}[g.family]
    return (g.q - 1) ** k


# ----------------------------------------------------------------------
# U and its normal form
# ----------------------------------------------------------------------

def _require_U(g: LieGroupData, x: FqMatrix) -> None:
    if not g.in_U(x):
        raise ValueError(f"matrix is not in U of {g.label}")


def simple_coordinate(g: LieGroupData, x: FqMatrix, s: int) -> int:
    """Image of x in U/U_s = F_q: the entry at the alpha_s position."""
    _require_U(g, x)
    if not 1 <= s <= g.rank:
        raise ValueError(f"simple index {s} out of range 1..{g.rank}")
    return x[g.simple_root_positions[s]]


def in_U_s(g: LieGroupData, x: FqMatrix, s: int) -> bool:
    """x lies in U_s, i.e. its alpha_s coordinate vanishes."""
    return simple_coordinate(g, x, s) == 0


def normal_form(g: LieGroupData, x: FqMatrix) -> dict[Root, int]:
    """Coordinates c_alpha with x = prod x_alpha(c_alpha) in the fixed root order."""
    _require_U(g, x)
    f = g.field
    coords: dict[Root, int] = {}
    rest = x
    for k, layer in itertools.groupby(g.positive_roots, key=sum):
        layer = list(layer)
        cs = [rest[g.root_position(a)] for a in layer]
        for a, c in zip(layer, cs):
            coords[a] = c
        for a, c in zip(layer, cs):
            if c:
                rest = root_subgroup_element(g, a, f.neg(c)) @ rest
    if not rest.is_identity():
        raise AssertionError("normal form elimination did not terminate at I")
    return coords


def from_coordinates(g: LieGroupData, coords: dict[Root, int]) -> FqMatrix:
    x = g.identity()
    for a in g.positive_roots:
        c = coords.get(a, 0)
        if c:
            x = x @ root_subgroup_element(g, a, c)
    return x


def order_of_U(g: LieGroupData) -> int:
    return g.q ** len(g.positive_roots)


def enumerate_U(g: LieGroupData, bound: int = DEFAULT_ELEMENT_BOUND) -> Iterator[FqMatrix]:
    """Every element of U once, as ordered products of root elements."""
    size = order_of_U(g)
    if size > bound:
        raise BoundExceeded(f"|U| = {size} exceeds the element bound {bound}")
    roots = g.positive_roots
    factors = [[root_subgroup_element(g, a, c) for c in g.field.elements()] for a in roots]

    def rec(i: int, prefix: FqMatrix) -> Iterator[FqMatrix]:
        if i == len(roots):
            yield prefix
            return
        for c, y in enumerate(factors[i]):
            yield from rec(i + 1, prefix if c == 0 else prefix @ y)

    yield from rec(0, g.identity())


def generate_subgroup(
    gens: Iterable[FqMatrix], identity: FqMatrix, bound: int = DEFAULT_ELEMENT_BOUND
) -> set[FqMatrix]:
    """Closure of the generators under multiplication (breadth first)."""
    gens = [x for x in gens if x != identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for y in frontier:
            for x in gens:
                z = y @ x
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
                    if len(seen) > bound:
                        raise BoundExceeded(f"subgroup exceeds the element bound {bound}")
        frontier = nxt
    return seen


def root_subgroup_generators(g: LieGroupData, alpha: Root) -> list[FqMatrix]:
    """x_alpha(lambda) for lambda in the F_p-basis; these generate X_alpha."""
    return [root_subgroup_element(g, alpha, lam) for lam in fp_basis(g.field)]


def regular_element(g: LieGroupData) -> FqMatrix:
    """prod_s x_{alpha_s}(1)."""
    x = g.identity()
    for a in g.root_system.simple_roots:
        x = x @ root_subgroup_element(g, a, 1)
    return x
