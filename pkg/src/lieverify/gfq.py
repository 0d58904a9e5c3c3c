"""Exact arithmetic in F_q, q = p^r.

Elements are plain integers in ``range(q)``: the base-p digits of an element
are its coordinates in the power basis ``1, t, ..., t^(r-1)`` where ``t`` is a
root of the modulus.  So for F_4 = F_2[t]/(t^2+t+1) the elements are
``0, 1, t (=2), t+1 (=3)``.

Comparing the integer codes is the lexicographic order on coordinate vectors
read from the top coordinate down; this is the order used to pick
deterministic representatives such as the primitive element.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence

MAX_ORDER = 1 << 16
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


# ----------------------------------------------------------------------
# polynomials over F_p, coefficient lists low -> high
# ----------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _monics(p: int, d: int) -> Iterator[list[int]]:
    for code in range(p**d):
        low = [(code // p**i) % p for i in range(d)]
        yield low + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    d = len(poly) - 1
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for g in _monics(p, k):
            if not _poly_rem(poly, g, p):
                return False
    return True


def least_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Least monic irreducible of degree r, ordered by the integer code of
    its lower coefficients."""
    for m in _monics(p, r):
        if is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


_TERM = re.compile(r"^(?:(\d*)\*?)?(x(?:\^(\d+))?)?$")


def parse_polynomial(text: str, p: int) -> tuple[int, ...]:
    """Parse ``"x^2+x+1"`` or a comma list of coefficients (low -> high)."""
    text = text.replace(" ", "")
    if "x" not in text:
        return tuple(int(c) % p for c in text.split(","))
    coeffs: dict[int, int] = {}
    for sign, term in re.findall(r"([+-]?)([^+-]+)", text):
        m = _TERM.match(term)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        c = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            e = 0
        else:
            e = int(m.group(3)) if m.group(3) else 1
        coeffs[e] = (coeffs.get(e, 0) + (-c if sign == "-" else c)) % p
    deg = max(coeffs)
    return tuple(coeffs.get(i, 0) for i in range(deg + 1))


def format_polynomial(poly: Sequence[int]) -> str:
    terms = []
    for e in range(len(poly) - 1, -1, -1):
        c = poly[e]
        if c == 0:
            continue
        mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) or "0"


# ----------------------------------------------------------------------
# the field
# ----------------------------------------------------------------------

class FieldTable:
    """The field F_{p^r} with log/antilog tables.

    Construct through :func:`make_field`.
    """

    def __init__(self, p: int, r: int, modulus: Sequence[int]):
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = tuple(modulus)
        q = self.q

        # full addition table only for small q; larger fields add digitwise
        self._digits = [tuple((x // p**i) % p for i in range(r)) for x in range(q)]
        self._pow = [p**i for i in range(r)]
        self._add_t: list[list[int]] | None = None
        self._neg = [self._encode([(-c) % p for c in self._digits[x]]) for x in range(q)]
        if q <= _TABLE_LIMIT:
            self._add_t = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]

        self.generator = self._find_generator()
        self._exp = [0] * (2 * (q - 1))
        self._log = [0] * q
        x = 1
        for i in range(q - 1):
            self._exp[i] = x
            self._log[x] = i
            x = self._mul_slow(x, self.generator)
        for i in range(q - 1, 2 * (q - 1)):
            self._exp[i] = self._exp[i - (q - 1)]
        if sorted(self._exp[: q - 1]) != list(range(1, q)):
            raise AssertionError("multiplicative group is not cyclic of order q-1")

    def __repr__(self) -> str:
        return f"FieldTable(p={self.p}, r={self.r}, modulus={format_polynomial(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldTable)
            and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.r, self.modulus))

    # -- encoding ------------------------------------------------------
    def _encode(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * w for c, w in zip(coeffs, self._pow))

    def element(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.r:
            raise ValueError(f"expected at most {self.r} coordinates, got {len(coeffs)}")
        return self._encode(coeffs)

    def coeffs(self, x: int) -> tuple[int, ...]:
        return self._digits[x]

    def format(self, x: int) -> str:
        if self.r == 1:
            return str(x)
        return format_polynomial(self._digits[x]).replace("x", "t")

    # -- slow paths used while building tables ---------------------------
    def _add_slow(self, a: int, b: int) -> int:
        p = self.p
        return sum(((da + db) % p) * w for da, db, w in zip(self._digits[a], self._digits[b], self._pow))

    def _mul_slow(self, a: int, b: int) -> int:
        p, r = self.p, self.r
        da, db = self._digits[a], self._digits[b]
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self._encode(_poly_rem(prod, self.modulus, p))

    def _find_generator(self) -> int:
        q = self.q
        if q == 2:
            return 1
        n = q - 1
        exps = [n // f for f in prime_factors(n)]
        for g in range(2, q):
            if all(self._pow_slow(g, e) != 1 for e in exps):
                return g
        raise AssertionError("multiplicative group is not cyclic")  # pragma: no cover

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    # -- arithmetic ----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self._add_t is not None:
            return self._add_t[a][b]
        if self.r == 1:
            return (a + b) % self.p
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse in F_q")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete log to the base :attr:`generator`."""
        if a == 0:
            raise ValueError("log of 0")
        return self._log[a]

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        n = self.q - 1
        k = self._log[a]
        return n // gcd(n, k)

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> F_p -> F_q."""
        return n % self.p


@lru_cache(maxsize=None)
def _cached_field(p: int, r: int, modulus: tuple[int, ...]) -> FieldTable:
    return FieldTable(p, r, modulus)


def make_field(p: int, r: int = 1, modulus: Sequence[int] | str | None = None) -> FieldTable:
    """Build F_{p^r}.

    ``modulus`` is a monic degree-r polynomial, either as coefficients
    (low -> high) or a string like ``"x^2+x+1"``.  When omitted the least
    monic irreducible is used.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if r < 1:
        raise ValueError(f"r={r} must be positive")
    if p**r > MAX_ORDER:
        raise ValueError(f"q={p}^{r} exceeds the supported bound {MAX_ORDER}")
    if modulus is None:
        mod = least_irreducible(p, r)
    else:
        mod = parse_polynomial(modulus, p) if isinstance(modulus, str) else tuple(c % p for c in modulus)
        if len(mod) != r + 1 or mod[-1] != 1:
            raise ValueError(f"modulus {format_polynomial(mod)} is not monic of degree {r}")
        if not is_irreducible(mod, p):
            raise ValueError(f"modulus {format_polynomial(mod)} is reducible over F_{p}")
    return _cached_field(p, r, mod)


def frobenius(f: FieldTable, x: int) -> int:
    """x -> x^p."""
    return f.frobenius(x)


def primitive_element(f: FieldTable) -> int:
    """Least generator of the multiplicative group."""
    return f.generator


def fp_basis(f: FieldTable) -> list[int]:
    """The power basis 1, t, ..., t^(r-1) of F_q over F_p."""
    return [f.p**i for i in range(f.r)]


def power_subgroup(f: FieldTable, d: int) -> frozenset[int]:
    """{x^d : x in F_q^x}, the subgroup of index d."""
    if d < 1 or (f.q - 1) % d:
        raise ValueError(f"d={d} does not divide q-1={f.q - 1}")
    return frozenset(f.power(x, d) for x in f.nonzero())


def order_multiset(f: FieldTable) -> Counter:
    """Multiplicities of multiplicative orders; independent of the modulus."""
    return Counter(f.order(x) for x in f.nonzero())


def all_irreducible_moduli(p: int, r: int) -> list[tuple[int, ...]]:
    return [tuple(m) for m in _monics(p, r) if is_irreducible(m, p)]
