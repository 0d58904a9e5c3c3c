"""The acceptance criteria as runnable checks.

Each ``criterion_*`` function returns a :class:`VerificationReport`; the
CLI's ``verify-all`` and ``tests/test_acceptance.py`` both run these.
"""

from __future__ import annotations

import random
import time
from typing import Callable

from .gfq import all_irreducible_moduli, format_polynomial, is_prime, make_field
from .groups import (
    DEFAULT_ELEMENT_BOUND,
    build_group,
    enumerate_U,
)
from .invariants import (
    GradedInvariantModel,
    bockstein_pair,
    bockstein,
    brute_force_invariant_dimension,
    element_weights,
    explicit_generator,
    first_nonzero_degree,
    invariant_dimensions,
    is_invariant_element,
    monomial_degree,
    is_invariant_monomial,
    random_element,
)
from .report import VerificationReport
from .rootaction import cross_check_rows
from .rootdata import build_root_system, coxeter_number, dynkin_data, is_good_prime, is_long_root, is_type_c_class, weight_divisibility_scan
from .unipotent import (
    DEFAULT_FLAG_BOUND,
    build_regular_subgroup,
    chevalley_violations,
    composite_iso_check,
    exponent_of_U,
    fixed_flags,
    height_filtration,
    is_central_series,
    is_regular_unipotent,
    nilpotence_class,
    orbit_decomposition,
    superdiagonal_subgroup,
)


def _time_claim(rep: VerificationReport, what: str, seconds: float, limit: float) -> None:
    ok = seconds < limit
    rep.claim(f"{what} runs in under {limit:g} s", "within limit", "within limit" if ok else f"{seconds:.1f} s", ok)


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# ----------------------------------------------------------------------

DEGREE_CASES = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (11, 1), (13, 1)]


def criterion_1(**_) -> VerificationReport:
    rep = VerificationReport("criterion-1", "first nonzero invariant degree is r(2p-3) for the full unit group")
    for p, r in DEGREE_CASES:
        t0 = time.perf_counter()
        got = first_nonzero_degree(GradedInvariantModel(p, r, 1))
        dt = time.perf_counter() - t0
        rep.claim(f"p={p} r={r} d=1 first degree", r * (2 * p - 3), got)
        _time_claim(rep, f"p={p} r={r}", dt, 1.0)
    return rep


SP_CASES = [(p, r) for p in (3, 5, 7, 11, 13) for r in (1, 2)]


def criterion_2(**_) -> VerificationReport:
    rep = VerificationReport("criterion-2", "first nonzero invariant degree is r(p-2) for the squares")
    for p, r in SP_CASES:
        model = GradedInvariantModel(p, r, 2)
        want = r * (p - 2)
        rep.claim(f"p={p} r={r} d=2 first degree", want, first_nonzero_degree(model))
        gen = explicit_generator(model)
        rep.claim(
            f"p={p} r={r} generator {gen.describe()} invariant of degree {want}",
            [want, True],
            [monomial_degree(gen, model), is_invariant_monomial(gen, model)],
        )
    return rep


ORACLE_CASES = [(3, 1), (3, 2), (5, 1)]


def criterion_3(**_) -> VerificationReport:
    rep = VerificationReport("criterion-3", "weight counting agrees with the explicit action in F_q")
    t0 = time.perf_counter()
    for p, r in ORACLE_CASES:
        for d in (1, 2):
            model = GradedInvariantModel(p, r, d)
            fast = invariant_dimensions(model, 12)
            slow = [brute_force_invariant_dimension(model, m) for m in range(13)]
            rep.claim(f"p={p} r={r} d={d} dims in degrees 0..12", slow, fast)
    _time_claim(rep, "oracle comparison", time.perf_counter() - t0, 10.0)
    return rep


def criterion_4(seed: int = 0, samples: int = 100, **_) -> VerificationReport:
    rep = VerificationReport("criterion-4", "Bockstein links degrees 2p-3 and 2p-2 when r = 1")
    for p in (3, 5, 7):
        model = GradedInvariantModel(p, 1, 1)
        x, y = bockstein_pair(p)
        bx = bockstein(x, model)
        rep.claim(f"p={p} beta(a b^{p - 2}) = b^{p - 1}", y, bx, bx == y and bool(bx))
        rep.claim(
            f"p={p} both sides invariant",
            [True, True],
            [is_invariant_element(x, model), is_invariant_element(bx, model)],
        )
    rng = random.Random(seed)
    for p in (3, 5, 7):
        for r in (1, 2):
            model = GradedInvariantModel(p, r, 1)
            bad_sq = bad_wt = 0
            for _ in range(samples):
                x = random_element(model, rng)
                bx = bockstein(x, model)
                if bockstein(bx, model):
                    bad_sq += 1
                for mono_key in x:
                    single = {mono_key: 1}
                    b1 = bockstein(single, model)
                    if b1 and element_weights(b1, model) != element_weights(single, model):
                        bad_wt += 1
            rep.claim(f"p={p} r={r} beta^2 = 0 on {samples} random elements", 0, bad_sq)
            rep.claim(f"p={p} r={r} beta preserves weight", 0, bad_wt)
    return rep


EXPONENT_CASES = [("GL", 2, 2, 1), ("GL", 2, 2, 2), ("GL", 3, 3, 1), ("GL", 3, 3, 2), ("GL", 2, 3, 2), ("GL", 3, 5, 1), ("GL", 4, 5, 1), ("Sp", 4, 5, 1)]
EXPONENT_COUNTER = [("GL", 4, 3, 1, 9), ("GL", 3, 2, 1, 4)]


def criterion_5(budget: int = DEFAULT_ELEMENT_BOUND, **_) -> VerificationReport:
    rep = VerificationReport("criterion-5", "U has exponent p when the Coxeter number is at most p")
    t0 = time.perf_counter()
    for fam, n, p, r in EXPONENT_CASES:
        g = build_group(fam, n, make_field(p, r))
        rep.claim(f"{g.label} exponent (h={g.coxeter_number})", p, exponent_of_U(g, budget))
    for fam, n, p, r, want in EXPONENT_COUNTER:
        g = build_group(fam, n, make_field(p, r))
        rep.claim(f"{g.label} exponent (h={g.coxeter_number} > p)", want, exponent_of_U(g, budget))
    _time_claim(rep, "exponent sweep", time.perf_counter() - t0, 30.0)
    return rep


SERIES_CASES = [("GL", 3, 2), ("GL", 3, 3), ("GL", 4, 2), ("GL", 4, 3), ("Sp", 4, 3)]


def criterion_6(budget: int = DEFAULT_ELEMENT_BOUND, **_) -> VerificationReport:
    rep = VerificationReport("criterion-6", "height filtration is a central series; class at most h-1")
    for fam, n, p in SERIES_CASES:
        g = build_group(fam, n, make_field(p))
        h = g.coxeter_number
        rep.claim(f"{g.label} height filtration central", True, is_central_series(g, height_filtration(g), budget))
        rep.claim(f"{g.label} commutator formula violations", 0, len(chevalley_violations(g, bound=budget)))
        cls = nilpotence_class(g, budget)
        rep.claim(f"{g.label} nilpotence class {cls} <= h-1 = {h - 1}", True, cls <= h - 1)
    return rep


REGULAR_CASES = [("GL", 3, 3, 1), ("GL", 3, 3, 2), ("GL", 2, 5, 2), ("GL", 4, 5, 1), ("GL", 5, 5, 1), ("Sp", 4, 5, 1)]


def criterion_7(**_) -> VerificationReport:
    rep = VerificationReport("criterion-7", "rank-r elementary abelian subgroup of regular unipotents")
    for fam, n, p, r in REGULAR_CASES:
        g = build_group(fam, n, make_field(p, r))
        try:
            A = build_regular_subgroup(g)
        except (ValueError, RuntimeError) as exc:
            rep.claim(f"{g.label} subgroup A built", True, str(exc), False)
            continue
        ident = g.identity()
        nontrivial = [x for x in A.elements if x != ident]
        rep.claim(f"{g.label} |A|", p**r, len(A.elements))
        rep.claim(
            f"{g.label} A abelian, exponent p, regular",
            [True, True, True],
            [
                all(x @ y == y @ x for x in A.elements for y in A.elements),
                all((x**p).is_identity() for x in A.elements),
                all(is_regular_unipotent(g, x) for x in nontrivial),
            ],
        )
    return rep


FLAG_CASES = [("GL", 3, 3, 1), ("GL", 3, 2, 2), ("GL", 2, 3, 2), ("GL", 4, 5, 1)]


def criterion_8(flag_budget: int = DEFAULT_FLAG_BOUND, **_) -> VerificationReport:
    rep = VerificationReport("criterion-8", "A maps isomorphically onto U/U_s and fixes a unique flag")
    for fam, n, p, r in REGULAR_CASES:
        g = build_group(fam, n, make_field(p, r))
        A = build_regular_subgroup(g)
        got = [composite_iso_check(g, A, s) for s in range(1, g.rank + 1)]
        rep.claim(f"{g.label} A -> U/U_s bijective for all s", [True] * g.rank, got)
    for fam, n, p, r in FLAG_CASES:
        g = build_group(fam, n, make_field(p, r))
        if n <= p:
            A = build_regular_subgroup(g)
            gens = list(A.generators)
        else:
            gens, _ = superdiagonal_subgroup(g)
            rep.notes.append(
                f"{g.label}: h = {n} > p = {p}, so no elementary abelian A exists; "
                "flag claims use <I + lambda J> instead"
            )
        t0 = time.perf_counter()
        fixed = fixed_flags(g, gens, flag_budget)
        rep.claim(f"{g.label} fixed flags of A", 1, len(fixed))
        rep.claim(f"{g.label} the fixed flag is the standard flag", True, bool(fixed) and fixed[0].is_standard())
        orbits = orbit_decomposition(g, gens, flag_budget)
        rep.claim(f"{g.label} singleton orbits", 1, orbits.get(1, 0))
        rep.claim(f"{g.label} orbit sizes are p-powers", True, all(_is_p_power(s, p) for s in orbits))
        rep.data[f"{g.label} orbit sizes"] = dict(orbits)
        if (n, p, r) == (4, 5, 1):
            _time_claim(rep, f"{g.label} flags", time.perf_counter() - t0, 60.0)
    return rep


def regularity_equivalence_failures(g, budget: int = DEFAULT_ELEMENT_BOUND, flag_budget: int = DEFAULT_FLAG_BOUND) -> int:
    bad = 0
    for x in enumerate_U(g, budget):
        if is_regular_unipotent(g, x) != (len(fixed_flags(g, [x], flag_budget)) == 1):
            bad += 1
    return bad


EQUIV_CASES = [(2, q) for q in (2, 3, 4, 5, 7, 8, 9)] + [(3, q) for q in (2, 3, 4)]


def _field_of_order(q: int):
    for p in range(2, q + 1):
        if is_prime(p):
            r, x = 0, 1
            while x < q:
                x *= p
                r += 1
            if x == q:
                return make_field(p, r)
    raise ValueError(f"{q} is not a prime power")


def criterion_9(budget: int = DEFAULT_ELEMENT_BOUND, flag_budget: int = DEFAULT_FLAG_BOUND, **_) -> VerificationReport:
    rep = VerificationReport("criterion-9", "regular unipotent iff unique fixed point on G/B")
    for n, q in EQUIV_CASES:
        g = build_group("GL", n, _field_of_order(q))
        rep.claim(f"{g.label} mismatches over all of U", 0, regularity_equivalence_failures(g, budget, flag_budget))
    return rep


ROOT_ACTION_GROUPS = (
    [("GL", n, q) for n in (2, 3, 4) for q in (2, 3, 4, 5, 8, 9)]
    + [("SL", 3, 4)]
    + [("Sp", 4, q) for q in (2, 3, 5, 9)]
)


def criterion_10(**_) -> VerificationReport:
    rep = VerificationReport("criterion-10", "torus acts surjectively on root subgroups except Sp long roots")
    for fam, n, q in ROOT_ACTION_GROUPS:
        g = build_group(fam, n, _field_of_order(q))
        rows = cross_check_rows(g)
        expected = {r.root: want for r, want in rows}
        computed = {r.root: r.index for r, _ in rows}
        predicted = {r.root: r.predicted_index for r, _ in rows}
        rep.claim(f"{g.label} index per root", expected, computed, expected == computed == predicted)
    hits = weight_divisibility_scan(8)
    expected = []
    for t, n in dynkin_data(8):
        rs = build_root_system(t, n)
        if is_type_c_class(t, n):
            expected.extend((t, n, v, 2) for v in rs.roots if is_long_root(rs, v))
    rep.claim(
        "weight-lattice divisible roots, rank <= 8, are the long roots of C_n (B_2 = C_2, A_1 = C_1)",
        len(expected),
        len(hits),
        sorted(hits) == sorted(expected),
    )
    return rep


def criterion_11(**_) -> VerificationReport:
    rep = VerificationReport("criterion-11", "Coxeter number at most p forces p good")
    primes = [p for p in range(2, 32) if is_prime(p)]
    bad = []
    for t, n in dynkin_data(8):
        rs = build_root_system(t, n)
        h = coxeter_number(rs)
        for p in primes:
            if h <= p and not is_good_prime(rs, p):
                bad.append(f"{t}{n} p={p}")
    rep.claim("counterexamples over rank <= 8, p <= 31", [], bad)
    return rep


INDEPENDENCE_FIELDS = [(2, 3), (3, 2)]


def criterion_12(**_) -> VerificationReport:
    rep = VerificationReport("criterion-12", "invariant counts do not depend on the chosen modulus")
    for p, r in INDEPENDENCE_FIELDS:
        moduli = all_irreducible_moduli(p, r)[:2]
        indices = [d for d in (1, 2) if (p**r - 1) % d == 0]
        results = []
        for mod in moduli:
            f = make_field(p, r, mod)
            numbers = []
            for d in indices:
                model = GradedInvariantModel(p, r, d)
                dims = [brute_force_invariant_dimension(model, m, field=f) for m in range(13)]
                first = next((m for m in range(1, 13) if dims[m]), None)
                numbers.append({"d": d, "first_degree": first, "dims": dims})
            results.append(numbers)
        names = [format_polynomial(m) for m in moduli]
        rep.claim(f"F_{p**r}: moduli {names[0]} vs {names[1]}", results[0], results[1])
        want = [r * (2 * p - 3)] + ([r * (p - 2)] if 2 in indices else [])
        rep.claim(f"F_{p**r}: first degrees under {names[0]}", want, [x["first_degree"] for x in results[0]])
    return rep


CRITERIA: list[tuple[str, Callable[..., VerificationReport]]] = [
    ("1", criterion_1),
    ("2", criterion_2),
    ("3", criterion_3),
    ("4", criterion_4),
    ("5", criterion_5),
    ("6", criterion_6),
    ("7", criterion_7),
    ("8", criterion_8),
    ("9", criterion_9),
    ("10", criterion_10),
    ("11", criterion_11),
    ("12", criterion_12),
]


def run_all(budget: int = DEFAULT_ELEMENT_BOUND, flag_budget: int = DEFAULT_FLAG_BOUND) -> list[VerificationReport]:
    return [fn(budget=budget, flag_budget=flag_budget) for _, fn in CRITERIA]
