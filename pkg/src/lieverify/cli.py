"""Command line front end: one subcommand per verification.

Exit status: 0 all claims pass, 1 some claim failed, 2 usage or parameter
error (including an exceeded enumeration budget).
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from typing import Callable, Sequence

from . import acceptance
from .gfq import (
    format_polynomial,
    fp_basis,
    frobenius,
    is_prime,
    make_field,
    order_multiset,
    primitive_element,
)
from .groups import DEFAULT_ELEMENT_BOUND, BoundExceeded, build_group
from .invariants import (
    DEFAULT_DEGREE_BOUND,
    GradedInvariantModel,
    as_element,
    bockstein_pair,
    bockstein,
    brute_force_invariant_dimension,
    element_terms,
    explicit_generator,
    first_nonzero_degree,
    invariant_dimensions,
    is_invariant_element,
    random_element,
)
from .report import VerificationReport
from .rootaction import character_lattice, cross_check_rows
from .rootdata import (
    LatticeKind,
    build_root_system,
    coxeter_number,
    divisibility_in_lattice,
    height,
    is_good_prime,
    is_long_root,
    is_type_c_class,
    weight_coords,
)
from .unipotent import (
    DEFAULT_FLAG_BOUND,
    build_regular_subgroup,
    composite_iso_check,
    exponent_of_U,
    fixed_flags,
    flag_count,
    is_regular_unipotent,
    orbit_decomposition,
    superdiagonal_subgroup,
)

BUDGET_ENV = "LIEVERIFY_BUDGET"
FLAG_BUDGET_ENV = "LIEVERIFY_FLAG_BUDGET"


def _group(args):
    return build_group(args.family, args.n, make_field(args.p, args.r))


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_field_info(args) -> VerificationReport:
    f = make_field(args.p, args.r, args.modulus)
    rep = VerificationReport("field-info", "F_q with q = p^r: exact arithmetic and an F_p-basis")
    rep.parameters = {"p": args.p, "r": args.r, "modulus": format_polynomial(f.modulus)}
    g = primitive_element(f)
    rep.data = {
        "q": f.q,
        "primitive_element": f.format(g),
        "fp_basis": [f.format(x) for x in fp_basis(f)],
        "order_multiset": dict(order_multiset(f)),
    }
    rep.claim("primitive element has order q-1", f.q - 1, f.order(g) if f.q > 2 else 1)

    def frob_r(x: int) -> int:
        for _ in range(f.r):
            x = frobenius(f, x)
        return x

    rep.claim("Frobenius^r is the identity", 0, sum(1 for x in f.elements() if frob_r(x) != x))
    return rep


def cmd_root_system(args) -> VerificationReport:
    rs = build_root_system(args.type, args.rank)
    h = coxeter_number(rs)
    rep = VerificationReport("root-system", "positive roots, heights and the Coxeter number")
    rep.parameters = {"type": rs.dynkin_type, "rank": rs.rank}
    primes = [p for p in range(2, 32) if is_prime(p)]
    rep.data = {
        "cartan": [list(row) for row in rs.cartan],
        "positive_roots": [{"root": list(v), "height": height(rs, v)} for v in rs.positive_roots],
        "coxeter_number": h,
        "good_primes": [p for p in primes if is_good_prime(rs, p)],
    }
    rep.claim("|Phi+| = rank * h / 2", rs.rank * h // 2, len(rs.positive_roots))
    rep.claim(
        "h <= p implies p good (p <= 31)",
        [],
        [p for p in primes if h <= p and not is_good_prime(rs, p)],
    )
    return rep


def cmd_divisibility(args) -> VerificationReport:
    rs = build_root_system(args.type, args.rank)
    lattice = LatticeKind.parse(args.lattice)
    rep = VerificationReport("divisibility", "roots divisible in the lattice: only long roots of C_n, by 2")
    rep.parameters = {"type": rs.dynkin_type, "rank": rs.rank, "lattice": lattice.value}
    rows = []
    divisible = []
    for v in rs.roots:
        m = divisibility_in_lattice(rs, v, lattice)
        rows.append({"root": list(v), "weight_coords": list(weight_coords(rs, v)), "divisibility": m})
        if m > 1:
            divisible.append(v)
    rep.data = {"roots": rows}
    if lattice is LatticeKind.ROOT:
        expected = []
    elif is_type_c_class(rs.dynkin_type, rs.rank):
        expected = [v for v in rs.roots if is_long_root(rs, v)]
    else:
        expected = []
    rep.claim("roots with divisibility > 1", [list(v) for v in expected], [list(v) for v in divisible])
    return rep


def cmd_exponent(args) -> VerificationReport:
    g = _group(args)
    h = g.coxeter_number
    rep = VerificationReport("exponent", "U has exponent p when the Coxeter number is at most p")
    rep.parameters = {"family": args.family, "n": args.n, "p": args.p, "r": args.r}
    e = exponent_of_U(g, args.budget)
    rep.data = {"coxeter_number": h, "exponent": e, "order_of_U": g.q ** len(g.positive_roots)}
    if h <= g.p:
        rep.claim("exponent of U", g.p, e)
    else:
        rep.notes.append(f"h = {h} > p = {g.p}: the exponent-p statement does not apply")
        rep.claim("exponent of U is a power of p", True, _is_p_power(e, g.p))
    return rep


def cmd_regular_subgroup(args) -> VerificationReport:
    g = _group(args)
    rep = VerificationReport("regular-subgroup", "elementary abelian rank-r subgroup of regular unipotents")
    rep.parameters = {"family": args.family, "n": args.n, "p": args.p, "r": args.r}
    if g.family == "Sp" and g.field.r > 1:
        rep.notes.append("not constructed: no explicit construction for Sp with r > 1")
        return rep
    A = build_regular_subgroup(g)
    ident = g.identity()
    rep.data = {"generators": [x.format() for x in A.generators], "coxeter_number": g.coxeter_number}
    rep.claim("|A| = p^r", g.p**g.field.r, len(A.elements))
    rep.claim("A abelian", True, all(x @ y == y @ x for x in A.elements for y in A.elements))
    rep.claim("nontrivial elements have order p", True, all((x**g.p).is_identity() for x in A.elements))
    rep.claim(
        "nontrivial elements avoid every U_s",
        True,
        all(is_regular_unipotent(g, x) for x in A.elements if x != ident),
    )
    rep.claim(
        "A -> U/U_s bijective for every simple s",
        [True] * g.rank,
        [composite_iso_check(g, A, s) for s in range(1, g.rank + 1)],
    )
    if g.family in ("GL", "SL"):
        fixed = fixed_flags(g, A.generators, args.flag_budget)
        rep.claim("A fixes exactly one flag", 1, len(fixed))
    return rep


def _acting_group(g, rep):
    if g.n <= g.p:
        return list(build_regular_subgroup(g).generators)
    rep.notes.append(
        f"h = {g.n} > p = {g.p}: no elementary abelian A; acting with <I + lambda J> instead"
    )
    return superdiagonal_subgroup(g)[0]


def cmd_fixed_flags(args) -> VerificationReport:
    g = _group(args)
    rep = VerificationReport("fixed-flags", "A containing regular unipotents has a unique fixed point on G/B")
    rep.parameters = {"family": args.family, "n": args.n, "p": args.p, "r": args.r}
    gens = _acting_group(g, rep)
    fixed = fixed_flags(g, gens, args.flag_budget)
    rep.data = {"fixed_flags": [[[list(row) for row in v] for v in fl.subspaces] for fl in fixed]}
    rep.claim("number of fixed flags", 1, len(fixed))
    rep.claim("fixed flag is the standard flag", True, bool(fixed) and fixed[0].is_standard())
    return rep


def cmd_orbits(args) -> VerificationReport:
    g = _group(args)
    rep = VerificationReport("orbits", "A-orbits on G/B: one fixed point, all other orbits of p-power size")
    rep.parameters = {"family": args.family, "n": args.n, "p": args.p, "r": args.r}
    gens = _acting_group(g, rep)
    orbits = orbit_decomposition(g, gens, args.flag_budget)
    rep.data = {"orbit_sizes": dict(orbits), "flags": flag_count(g.n, g.q)}
    rep.claim("singleton orbits", 1, orbits.get(1, 0))
    rep.claim("orbit sizes are powers of p", True, all(_is_p_power(s, g.p) for s in orbits))
    rep.claim("orbits cover all flags", flag_count(g.n, g.q), sum(s * c for s, c in orbits.items()))
    return rep


def cmd_invariants(args) -> VerificationReport:
    model = GradedInvariantModel(args.p, args.r, args.index)
    rep = VerificationReport("invariants", "dimensions of the invariants of H^*(F_q; F_p) by degree")
    rep.parameters = {"p": args.p, "r": args.r, "index": args.index, "max_degree": args.max_degree}
    dims = invariant_dimensions(model, args.max_degree)
    rep.data = {"dimensions": dims}
    top = min(args.max_degree, DEFAULT_DEGREE_BOUND)
    oracle = [brute_force_invariant_dimension(model, m) for m in range(top + 1)]
    rep.claim(f"weight count equals explicit action, degrees 0..{top}", oracle, dims[: top + 1])
    return rep


def cmd_first_degree(args) -> VerificationReport:
    model = GradedInvariantModel(args.p, args.r, args.index)
    rep = VerificationReport("first-degree", "first nonzero invariant degree: r(2p-3) for d=1, r(p-2) for d=2")
    rep.parameters = {"p": args.p, "r": args.r, "index": args.index}
    got = first_nonzero_degree(model)
    if args.index == 1:
        rep.claim("first nonzero degree", args.r * (2 * args.p - 3), got)
    elif args.index == 2:
        rep.claim("first nonzero degree", args.r * (args.p - 2), got)
    else:
        rep.notes.append("no closed form for this index")
        rep.data = {"first_degree": got}
    if model.has_exterior and args.index in (1, 2):
        gen = explicit_generator(model)
        rep.data = {"generator": gen.describe()}
    return rep


def cmd_bockstein(args) -> VerificationReport:
    model = GradedInvariantModel(args.p, args.r, 1)
    rep = VerificationReport("bockstein", "the Bockstein joins invariant classes in degrees 2p-3 and 2p-2")
    rep.parameters = {"p": args.p, "r": args.r}
    if args.r == 1:
        x, y = bockstein_pair(args.p)
    else:
        x = as_element(explicit_generator(model), p=args.p)
        y = None
    bx = bockstein(x, model)
    rep.data = {
        "source": [m.describe() for m in element_terms(x)],
        "image": [m.describe() for m in element_terms(bx)],
    }
    if y is not None:
        rep.claim("beta(a b^(p-2)) = b^(p-1)", [m.describe() for m in element_terms(y)], rep.data["image"])
    rep.claim("image is a nonzero invariant", [True, True], [bool(bx), is_invariant_element(bx, model)])
    rng = random.Random(args.seed)
    bad = sum(1 for _ in range(100) if bockstein(bockstein(random_element(model, rng), model), model))
    rep.claim("beta^2 = 0 on 100 random elements", 0, bad)
    return rep


def cmd_root_action(args) -> VerificationReport:
    g = _group(args)
    rep = VerificationReport("root-action", "T acts on each root subgroup through a character of index gcd(m, q-1)")
    rep.parameters = {"family": args.family, "n": args.n, "p": args.p, "r": args.r}
    rows = cross_check_rows(g)
    rep.data = {
        "character_lattice": character_lattice(g),
        "roots": [
            {
                "root": list(r.root),
                "index": r.index,
                "predicted": r.predicted_index,
                "image": sorted(g.field.format(c) for c in r.image),
            }
            for r, _ in rows
        ],
    }
    rep.claim(
        "index per root matches the lattice prediction and family rule",
        [want for _, want in rows],
        [r.index for r, _ in rows],
        all(r.index == r.predicted_index == want for r, want in rows),
    )
    return rep


def cmd_verify_all(args) -> VerificationReport:
    rep = VerificationReport("verify-all", "every acceptance criterion")
    rep.parameters = {"budget": args.budget, "flag_budget": args.flag_budget}
    sub = []
    for name, fn in acceptance.CRITERIA:
        r = fn(budget=args.budget, flag_budget=args.flag_budget)
        sub.append(r)
        failed = [c.description for c in r.claims if not c.passed]
        rep.claim(f"criterion {name}: {r.statement}", [], failed)
    rep.data = {"criteria": [r.to_dict() for r in sub]}
    return rep


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{name} must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--budget", type=int, default=_env_int(BUDGET_ENV, DEFAULT_ELEMENT_BOUND), help="group element bound")
    common.add_argument("--flag-budget", type=int, default=_env_int(FLAG_BUDGET_ENV, DEFAULT_FLAG_BOUND), help="flag bound")
    common.add_argument("--timing", action="store_true", help="include elapsed_ms (breaks byte-identical output)")

    parser = argparse.ArgumentParser(prog="lieverify", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = subs.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    def group_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--family", choices=("GL", "SL", "Sp"), required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--r", type=int, default=1)

    sp = add("field-info", cmd_field_info, "field tables")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--modulus", help='e.g. "x^2+x+1"')

    sp = add("root-system", cmd_root_system, "positive roots, heights, Coxeter number, good primes")
    sp.add_argument("--type", required=True, choices=list("ABCDEFG"))
    sp.add_argument("--rank", type=int, required=True)

    sp = add("divisibility", cmd_divisibility, "root divisibility in the root or weight lattice")
    sp.add_argument("--type", required=True, choices=list("ABCDEFG"))
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--lattice", default="weight")

    for name, fn, text in (
        ("exponent", cmd_exponent, "exponent of U"),
        ("regular-subgroup", cmd_regular_subgroup, "build A and check its properties"),
        ("fixed-flags", cmd_fixed_flags, "flags fixed by A"),
        ("orbits", cmd_orbits, "orbit sizes of A on flags"),
        ("root-action", cmd_root_action, "torus action on root subgroups"),
    ):
        group_args(add(name, fn, text))

    sp = add("invariants", cmd_invariants, "invariant dimensions by degree")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--index", type=int, default=1)
    sp.add_argument("--max-degree", type=int, default=12)

    sp = add("first-degree", cmd_first_degree, "first nonzero invariant degree")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--index", type=int, default=1)

    sp = add("bockstein", cmd_bockstein, "Bockstein checks")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)

    add("verify-all", cmd_verify_all, "run every acceptance criterion")
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors this way
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        rep = args.func(args)
    except (ValueError, BoundExceeded, ZeroDivisionError) as exc:
        print(f"lieverify {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.timing:
        rep.elapsed_ms = (time.perf_counter() - t0) * 1000
    out.write((rep.to_table() if args.format == "table" else rep.to_json()) + "\n")
    return 0 if rep.passed else 1


def main() -> None:
    sys.exit(run())
