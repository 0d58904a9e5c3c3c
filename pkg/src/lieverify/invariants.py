"""Invariants of F_q^x (or a subgroup of index d) on H^*(F_q; F_p).

For p odd, H^*(F_q; F_p) = Lambda(a_0..a_{r-1}) (x) F_p[b_0..b_{r-1}] with
|a_i| = 1, |b_i| = 2; for p = 2 it is F_2[b_0..b_{r-1}] with |b_i| = 1.
After extending scalars, lambda in F_q^x scales a_i and b_i by lambda^{p^i},
so a monomial is fixed by the index-d subgroup iff its weight
sum (eps_i + e_i) p^i vanishes modulo (q-1)/d.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .gfq import FieldTable, is_prime, make_field, primitive_element

DEFAULT_DEGREE_BOUND = 24
DEFAULT_MONOMIAL_BOUND = 1_000_000

Key = tuple[tuple[int, ...], tuple[int, ...]]
Element = dict  # Key -> coefficient in 1..p-1


@dataclass(frozen=True)
class GradedInvariantModel:
    p: int
    r: int
    index: int = 1
    sign: int = 1

    def __post_init__(self):
        if not is_prime(self.p) or self.r < 1:
            raise ValueError(f"invalid (p, r) = ({self.p}, {self.r})")
        if self.index < 1:
            raise ValueError("index must be positive")
        if (self.q - 1) % self.index:
            raise ValueError(f"index {self.index} does not divide q-1 = {self.q - 1}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def modulus(self) -> int:
        """Weights are compared modulo (q-1)/d."""
        return (self.q - 1) // self.index

    @property
    def has_exterior(self) -> bool:
        return self.p != 2

    @property
    def poly_degree(self) -> int:
        return 2 if self.has_exterior else 1

    @property
    def weights(self) -> tuple[int, ...]:
        """Weight of a_i and b_i, reduced mod q-1."""
        return tuple((self.sign * self.p**i) % (self.q - 1) if self.q > 2 else 0 for i in range(self.r))


@dataclass(frozen=True)
class Monomial:
    epsilon: tuple[int, ...]
    e: tuple[int, ...]
    coefficient: int = 1

    @property
    def key(self) -> Key:
        return (self.epsilon, self.e)

    def describe(self) -> str:
        parts = [f"a{i}" for i, x in enumerate(self.epsilon) if x]
        ext = "^".join(parts)
        poly = "*".join(f"b{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(self.e) if k)
        body = " (x) ".join(s for s in (ext, poly) if s) or "1"
        return body if self.coefficient == 1 else f"{self.coefficient}*{body}"


def _check_monomial(m: Monomial, model: GradedInvariantModel) -> None:
    if len(m.epsilon) != model.r or len(m.e) != model.r:
        raise ValueError("monomial length does not match r")
    if any(x not in (0, 1) for x in m.epsilon) or any(x < 0 for x in m.e):
        raise ValueError("invalid exponents")
    if not model.has_exterior and any(m.epsilon):
        raise ValueError("no exterior generators when p = 2")


def monomial_degree(m: Monomial, model: GradedInvariantModel) -> int:
    _check_monomial(m, model)
    return sum(m.epsilon) + model.poly_degree * sum(m.e)


def monomial_weight(m: Monomial, model: GradedInvariantModel) -> int:
    """sum (eps_i + e_i) p^i, reduced mod q-1."""
    _check_monomial(m, model)
    if model.q == 2:
        return 0
    return sum((x + y) * w for x, y, w in zip(m.epsilon, m.e, model.weights)) % (model.q - 1)


def is_invariant_monomial(m: Monomial, model: GradedInvariantModel) -> bool:
    return monomial_weight(m, model) % model.modulus == 0


# ----------------------------------------------------------------------
# counting
# ----------------------------------------------------------------------

def _weight_table(model: GradedInvariantModel, max_degree: int) -> list[list[int]]:
    """table[deg][res]: number of monomials of that degree and weight residue."""
    mod = model.modulus
    table = [[0] * mod for _ in range(max_degree + 1)]
    table[0][0] = 1
    ws = [w % mod for w in model.weights]
    if model.has_exterior:
        for w in ws:
            new = [row[:] for row in table]
            for deg in range(max_degree):
                for res, c in enumerate(table[deg]):
                    if c:
                        new[deg + 1][(res + w) % mod] += c
            table = new
    step = model.poly_degree
    for w in ws:
        for deg in range(step, max_degree + 1):
            src = table[deg - step]
            dst = table[deg]
            for res, c in enumerate(src):
                if c:
                    dst[(res + w) % mod] += c
    return table


def invariant_dimension(model: GradedInvariantModel, degree: int) -> int:
    if degree < 0:
        return 0
    return _weight_table(model, degree)[degree][0]


def invariant_dimensions(model: GradedInvariantModel, max_degree: int) -> list[int]:
    table = _weight_table(model, max_degree)
    return [row[0] for row in table]


def first_nonzero_degree(model: GradedInvariantModel) -> int:
    """Least m >= 1 with a nonzero invariant in degree m."""
    if model.q == 2 and model.index != 1:  # pragma: no cover - index must divide q-1 = 1
        raise ValueError("q = 2 requires index 1")
    # b_0^{q-1} is always invariant, so the search terminates by this degree
    limit = model.poly_degree * (model.q - 1)
    top = min(8, limit)
    while True:
        dims = invariant_dimensions(model, top)
        hit = next((m for m in range(1, top + 1) if dims[m]), None)
        if hit is not None:
            return hit
        top = min(2 * top, limit)


def monomials_of_degree(model: GradedInvariantModel, degree: int) -> Iterator[Monomial]:
    r = model.r
    step = model.poly_degree
    eps_choices = itertools.product((0, 1), repeat=r) if model.has_exterior else [(0,) * r]
    for eps in eps_choices:
        rest = degree - sum(eps)
        if rest < 0 or rest % step:
            continue
        total = rest // step
        for e in _compositions(total, r):
            yield Monomial(tuple(eps), e)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for tail in _compositions(total - first, parts - 1):
            yield (first,) + tail


def brute_force_invariant_dimension(
    model: GradedInvariantModel,
    degree: int,
    field: FieldTable | None = None,
    max_degree: int = DEFAULT_DEGREE_BOUND,
    max_monomials: int = DEFAULT_MONOMIAL_BOUND,
) -> int:
    """Fixed-space dimension of a generator of the index-d subgroup, computed
    in F_q itself.

    The generator h = g^d acts on a_i and b_i by the scalar h^{p^i}, obtained
    by iterating Frobenius; a monomial's eigenvalue is the field product of
    its factors' eigenvalues.  The action matrix on the monomial basis is
    this diagonal, and its fixed space is spanned by the eigenvalue-1 rows.
    """
    if degree > max_degree:
        raise ValueError(f"degree {degree} exceeds the oracle bound {max_degree}")
    f = field if field is not None else make_field(model.p, model.r)
    if (f.p, f.r) != (model.p, model.r):
        raise ValueError("field does not match the model")
    h = f.power(primitive_element(f), model.index)
    if model.sign == -1:
        h = f.inv(h)
    gen_scalar = []
    x = h
    for _ in range(model.r):
        gen_scalar.append(x)
        x = f.frobenius(x)

    diagonal = []
    for count, m in enumerate(monomials_of_degree(model, degree)):
        if count >= max_monomials:
            raise ValueError(f"more than {max_monomials} monomials in degree {degree}")
        lam = 1
        for i in range(model.r):
            for _ in range(m.epsilon[i] + m.e[i]):
                lam = f.mul(lam, gen_scalar[i])
        diagonal.append(lam)
    # nullity of (D - I) for diagonal D
    return sum(1 for lam in diagonal if f.sub(lam, 1) == 0)


# ----------------------------------------------------------------------
# explicit classes and the Bockstein
# ----------------------------------------------------------------------

def explicit_generator(model: GradedInvariantModel) -> Monomial:
    """a_0 ^ ... ^ a_{r-1} (x) (b_0 ... b_{r-1})^k with k = (p-3)/2 for d = 2
    and k = p-2 for d = 1; invariance is checked before returning."""
    if not model.has_exterior:
        raise ValueError("explicit generator needs p odd")
    if model.index == 2:
        k = (model.p - 3) // 2
        want = model.r * (model.p - 2)
    elif model.index == 1:
        k = model.p - 2
        want = model.r * (2 * model.p - 3)
    else:
        raise ValueError("explicit generator is defined for index 1 or 2")
    m = Monomial((1,) * model.r, (k,) * model.r)
    if monomial_degree(m, model) != want or not is_invariant_monomial(m, model):
        raise RuntimeError(f"{m.describe()} is not an invariant of degree {want}")
    return m


def as_element(*monomials: Monomial, p: int) -> Element:
    out: Element = {}
    for m in monomials:
        out[m.key] = (out.get(m.key, 0) + m.coefficient) % p
    return {k: c for k, c in out.items() if c}


def element_terms(x: Element) -> list[Monomial]:
    return [Monomial(eps, e, c) for (eps, e), c in sorted(x.items())]


def _require_odd(model: GradedInvariantModel) -> None:
    if not model.has_exterior:
        raise ValueError("the Bockstein is only modelled for p odd")


def bockstein(x: Element, model: GradedInvariantModel) -> Element:
    """Derivation with a_i -> b_i, b_i -> 0 and the graded Leibniz sign."""
    _require_odd(model)
    p = model.p
    out: Element = {}
    for (eps, e), c in x.items():
        on = [i for i, v in enumerate(eps) if v]
        for pos, i in enumerate(on):
            sign = -1 if pos % 2 else 1
            new_eps = tuple(0 if j == i else v for j, v in enumerate(eps))
            new_e = tuple(v + 1 if j == i else v for j, v in enumerate(e))
            key = (new_eps, new_e)
            out[key] = (out.get(key, 0) + sign * c) % p
    return {k: c for k, c in out.items() if c}


def multiply(x: Element, y: Element, model: GradedInvariantModel) -> Element:
    """Graded-commutative product."""
    p = model.p
    out: Element = {}
    for (e1, p1), c1 in x.items():
        for (e2, p2), c2 in y.items():
            if any(a and b for a, b in zip(e1, e2)):
                continue
            # a_i from the right factor pass a_j on the left with j > i
            swaps = sum(1 for i, a in enumerate(e2) if a for j, b in enumerate(e1) if b and j > i)
            key = (tuple(a + b for a, b in zip(e1, e2)), tuple(a + b for a, b in zip(p1, p2)))
            term = c1 * c2 * (-1 if swaps % 2 else 1)
            out[key] = (out.get(key, 0) + term) % p
    return {k: c for k, c in out.items() if c}


def element_degree(x: Element, model: GradedInvariantModel) -> set[int]:
    return {monomial_degree(Monomial(eps, e), model) for eps, e in x}


def is_invariant_element(x: Element, model: GradedInvariantModel) -> bool:
    return all(is_invariant_monomial(Monomial(eps, e), model) for eps, e in x)


def element_weights(x: Element, model: GradedInvariantModel) -> set[int]:
    return {monomial_weight(Monomial(eps, e), model) for eps, e in x}


def random_element(model: GradedInvariantModel, rng: random.Random, terms: int = 4, max_exp: int = 3) -> Element:
    p, r = model.p, model.r
    monos = []
    for _ in range(terms):
        eps = tuple(rng.randint(0, 1) for _ in range(r)) if model.has_exterior else (0,) * r
        e = tuple(rng.randint(0, max_exp) for _ in range(r))
        monos.append(Monomial(eps, e, rng.randint(1, p - 1)))
    return as_element(*monos, p=p)


def bockstein_pair(p: int) -> tuple[Element, Element]:
    """(a b^{p-2}, b^{p-1}) in the r = 1 model."""
    return {((1,), (p - 2,)): 1}, {((0,), (p - 1,)): 1}
