"""Command-line front end.

Exit codes: 0 everything verified, 1 usage or guard error (or an
unverified result), 2 falsification event (a counterexample file is written).
"""
from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction
from pathlib import Path

from . import report as rep
from .cache import DiskCache
from .coloring import (GuardExceeded, chromatic_number, chromatic_polynomial_value,
                       find_proper_coloring, is_strongly_chromatic_choosable, list_chromatic_number,
                       list_color_function)
from .extremal import FaGuardExceeded, construct_extremal_assignment, delete_fiber, fa_search
from .graphs import GraphError, parse_graph, product_of_complete
from .inequalities import (DEFAULT_PREC, OptInstance, bigsineq_check, karamata_property_check, key_sweep,
                           nis2_check, optlemma_bruteforce, optlemma_closed_form, optlemma_grid,
                           smallsineq_check, smallsineq_polynomial, verify_analytic_facts)
from .lists import ListAssignment, ListError
from .product import CensusGuardExceeded, FalsificationError, certify_or_color
from .suites import certificate_sample, cover_equivalence_exhaustive, lemma_suite

EXIT_OK, EXIT_ERROR, EXIT_FALSIFIED = 0, 1, 2


# -- subcommands ---------------------------------------------------------------------------

def _cache(args):
    return None if args.no_cache else DiskCache(args.cache_dir)


def cmd_chi_list(args, out):
    G = parse_graph(args.expr)
    r = list_chromatic_number(G, guard=args.guard, cache=_cache(args))
    out(f"chi_l({args.expr}) = {r.value}  [chi = {r.lower_bound}; {r.upper_bound_reason}]")
    if r.hard_assignment is not None:
        out(f"uncolourable {r.value - 1}-assignment:")
        out(r.hard_assignment.to_text().rstrip())
    return {"graph": args.expr, "chi_list": r.value, "chi": r.lower_bound, "reason": r.upper_bound_reason,
            "hard_assignment": None if r.hard_assignment is None else r.hard_assignment.to_text()}, True


def cmd_lcf(args, out):
    G = parse_graph(args.expr)
    r = list_color_function(G, args.k, guard=args.guard, cache=_cache(args))
    out(f"P_l({args.expr}, {args.k}) = {r.value}")
    return {"graph": args.expr, "k": args.k, "value": str(r.value),
            "minimizer": r.minimizer.to_text() if r.minimizer else None}, True


def cmd_chromatic(args, out):
    G = parse_graph(args.expr)
    value = chromatic_polynomial_value(G, args.k)
    out(f"P({args.expr}, {args.k}) = {value}")
    return {"graph": args.expr, "k": args.k, "value": str(value), "chi": chromatic_number(G)}, True


def cmd_scc(args, out):
    G = parse_graph(args.expr)
    r = is_strongly_chromatic_choosable(G, guard=args.guard)
    out(f"{args.expr}: {'strongly' if r.value else 'not strongly'} chromatic-choosable ({r.explanation})")
    if r.counterexample is not None:
        out(r.counterexample.to_text().rstrip())
    return {"graph": args.expr, "value": r.value, "chi": r.chromatic_number, "explanation": r.explanation,
            "counterexample": r.counterexample.to_text() if r.counterexample else None}, True


def cmd_fa(args, out):
    G = parse_graph(args.expr)
    r = fa_search(G, args.a, force=args.force)
    out(f"f_{args.a}({args.expr}) = {r.value}  ({r.assignments_examined} canonical X-assignments)")
    return {"graph": args.expr, "a": args.a, "value": str(r.value), "x_lists": r.x_lists.to_text(),
            "fiber_lists": [[sorted(cs) for cs in rows] for rows in r.fiber_lists]}, True


def cmd_witness(args, out):
    H, L, b = construct_extremal_assignment(args.n, args.a)
    out(f"# K_{args.n} □ K_{{{args.a},{b}}}: {H.n} vertices, lists of size {args.n + args.a - 1}")
    out(L.to_text().rstrip())
    result = {"n": args.n, "a": args.a, "b": str(b), "vertices": H.n, "lists": L.to_text()}
    ok = True
    if args.verify:
        cert = certify_or_color(H, L)
        solver = find_proper_coloring(H, L) is None
        deletions = []
        if args.check_deletions:
            for y in range(b):
                H2, L2 = delete_fiber(H, L, y)
                deletions.append(find_proper_coloring(H2, L2) is not None)
        ok = cert.kind == "non-colorable-by-cover" and solver and all(deletions)
        result.update(certificate=cert.kind, solver_uncolourable=solver,
                      deletions_checked=len(deletions), deletions_colourable=sum(deletions))
        out(f"# verify: certificate {cert.kind}; solver finds no colouring: {solver}"
            + (f"; {sum(deletions)}/{len(deletions)} single-fiber deletions colourable" if deletions else ""))
    return result, ok


def cmd_certify(args, out):
    if args.random is not None:
        res = certificate_sample(args.n, args.a, args.b, args.random, seed=args.seed)
        out(f"{args.random} random instances: {res['kinds']}; least bound value {res['min_bound_value']}")
        return res, True
    if args.lists is None:
        raise ListError("certify needs --lists FILE or --random COUNT")
    H = product_of_complete(args.n, args.a, args.b)
    L = ListAssignment.from_text(Path(args.lists).read_text())
    L.check_domain(H)
    cert = certify_or_color(H, L)
    out(f"{cert.kind}; bound value {cert.bound_value}")
    return cert.to_json(), cert.kind != "inconclusive"


def cmd_optlemma(args, out):
    if args.grid:
        r = optlemma_grid(args.n_max, args.k_max, args.c_max)
        out(f"{r['checked']} instances, {len(r['mismatches'])} mismatches")
        if r["mismatches"]:
            raise FalsificationError(f"closed form differs from enumeration at {r['mismatches'][0]}")
        return r, True
    if None in (args.n, args.m, args.k, args.C):
        raise ValueError("optlemma needs --grid or all of --n --m --k --C")
    inst = OptInstance(args.n, args.m, args.k, args.C)
    closed, brute = optlemma_closed_form(inst), optlemma_bruteforce(inst)
    out(f"closed form {closed}, enumeration {brute}")
    if closed != brute:
        raise FalsificationError(f"closed form {closed} != enumeration {brute} at {inst}")
    return {"instance": [inst.n, inst.m, inst.k, inst.C], "value": str(closed)}, True


def cmd_key_sweep(args, out):
    writer = None
    handle = None
    if args.csv:
        handle = sys.stdout if args.csv == "-" else open(args.csv, "w", newline="")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["n", "a", "s", "verdict", "precision_bits", "lhs_lower", "lhs_upper"])
    try:
        r = key_sweep(args.n_max, args.a_max, bits=args.precision, max_bits=args.max_precision,
                      workers=args.workers, on_row=(lambda kv: writer.writerow(kv.row())) if writer else None)
    finally:
        if handle not in (None, sys.stdout):
            handle.close()
    out(f"holds {r['holds']}, fails {r['fails']}, inconclusive {r['inconclusive']}, "
        f"equalities {r['equalities']}, max precision {r['max_precision_bits']} bits")
    if r["fails"]:
        raise FalsificationError(f"key inequality fails at {r['not_holding'][0][:3]}")
    return r, r["inconclusive"] == 0


def cmd_facts(args, out):
    r = verify_analytic_facts(bits=args.precision, grid_step=Fraction(args.step))
    for f in r["facts"]:
        out(f"{'ok  ' if f['holds'] else 'FAIL'} {f['name']} ({f['cells']} cells)")
    bad_poly = [(n, a) for n in range(3, args.a_max + 1) for a in range(max(n, 3), args.a_max + 1)
                if smallsineq_polynomial(n, a) < 0]
    out(f"small-s polynomial nonnegative for 3 <= n <= a <= {args.a_max}: {not bad_poly}")
    if bad_poly:
        raise FalsificationError(f"small-s polynomial negative at {bad_poly[0]}")
    r["polynomial_a_max"] = args.a_max
    return r, r["all_hold"]


def cmd_lemma_suite(args, out):
    suite = lemma_suite(args.count, seed=args.seed)
    out(f"product lemmas: {suite.instances} instances, checks {suite.checks}")
    exhaustive = cover_equivalence_exhaustive()
    out(f"cover equivalence, exhaustive on K_2 □ K_(1,b): {exhaustive}")
    kar = karamata_property_check(args.count, bits=args.precision, seed=args.seed)
    out(f"majorization: {kar['confirmed']}/{kar['samples']} pairs confirmed")
    grid = optlemma_grid(4, 4, 8)
    out(f"box minimum closed form: {grid['checked']} instances, {len(grid['mismatches'])} mismatches")
    spots = [(n, a, s) for n in range(3, 9) for a in range(n, 30) for s in range(a + 1)]
    big = [bigsineq_check(n, a, s) for n, a, s in spots if 100 * s > 73 * (n + a - 2)]
    small = [smallsineq_check(n, a, s) for n, a, s in spots if 100 * s <= 73 * (n + a - 2)]
    two = [nis2_check(a, s) for a in range(2, 60) for s in range(a + 1)]
    out(f"large-s {sum(big)}/{len(big)}, small-s {sum(small)}/{len(small)}, n = 2 {sum(two)}/{len(two)}")
    failures = [name for name, ok in (("karamata", not kar["violations"]), ("optlemma", not grid["mismatches"]),
                                      ("large-s", all(big)), ("small-s", all(small)), ("n=2", all(two))) if not ok]
    if failures:
        raise FalsificationError(f"lemma checks failed: {failures}")
    return {"product": suite.to_json(), "cover_exhaustive": exhaustive,
            "karamata": {k: v for k, v in kar.items() if k != "violations"},
            "optlemma_checked": grid["checked"], "large_s": len(big), "small_s": len(small), "n2": len(two)}, True


COMMANDS = {
    "chi-list": cmd_chi_list, "lcf": cmd_lcf, "chromatic": cmd_chromatic, "scc": cmd_scc, "fa": cmd_fa,
    "witness": cmd_witness, "certify": cmd_certify, "optlemma": cmd_optlemma, "key-sweep": cmd_key_sweep,
    "facts": cmd_facts, "lemma-suite": cmd_lemma_suite,
}


# -- argument parsing ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the JSON report here")
    common.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--precision", type=int, default=DEFAULT_PREC, help="interval precision in bits")
    common.add_argument("--guard", type=int, default=None, help="exhaustive guard on k*|V|")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--dump-dir", default=".", help="where falsification counterexamples go")

    p = argparse.ArgumentParser(prog="listprod", description="List colouring of Cartesian products: exact checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("chi-list", parents=[common], help="list chromatic number")
    s.add_argument("expr")
    s = sub.add_parser("lcf", parents=[common], help="list colour function P_l(G,k)")
    s.add_argument("expr")
    s.add_argument("k", type=int)
    s = sub.add_parser("chromatic", parents=[common], help="chromatic polynomial value P(G,k)")
    s.add_argument("expr")
    s.add_argument("k", type=int)
    s = sub.add_parser("scc", parents=[common], help="strong chromatic-choosability")
    s.add_argument("expr")
    s = sub.add_parser("fa", parents=[common], help="exact f_a(M) for tiny M")
    s.add_argument("expr")
    s.add_argument("a", type=int)
    s.add_argument("--force", action="store_true", help="lift the size guard")
    s = sub.add_parser("witness", parents=[common], help="extremal uncolourable assignment")
    s.add_argument("n", type=int)
    s.add_argument("a", type=int)
    s.add_argument("--verify", action="store_true")
    s.add_argument("--check-deletions", action="store_true", help="with --verify: every one-fiber deletion colours")
    s = sub.add_parser("certify", parents=[common], help="colourability certificate on K_n □ K_{a,b}")
    s.add_argument("n", type=int)
    s.add_argument("a", type=int)
    s.add_argument("b", type=int)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--lists", help="list-assignment file")
    g.add_argument("--random", type=int, metavar="COUNT", help="random disjoint-row instances")
    s = sub.add_parser("optlemma", parents=[common], help="box-constrained product minimum")
    s.add_argument("--grid", action="store_true")
    s.add_argument("--n-max", type=int, default=6)
    s.add_argument("--k-max", type=int, default=6)
    s.add_argument("--c-max", type=int, default=12)
    for name in ("n", "m", "k", "C"):
        s.add_argument(f"--{name}", type=int)
    s = sub.add_parser("key-sweep", parents=[common], help="certify the key inequality on a grid")
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--a-max", type=int, required=True)
    s.add_argument("--max-precision", type=int, default=256)
    s.add_argument("--csv", default="-", help="per-triple CSV path ('-' for stdout, '' to skip)")
    s = sub.add_parser("facts", parents=[common], help="analytic facts and small-s polynomials")
    s.add_argument("--step", default="1/1000")
    s.add_argument("--a-max", type=int, default=500)
    s = sub.add_parser("lemma-suite", parents=[common], help="every lemma property test")
    s.add_argument("--count", type=int, default=1000)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; 2 is reserved for falsifications here
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    if args.command == "key-sweep" and args.json and args.csv == "-":
        args.csv = ""  # stdout carries the JSON report
    text_to_stdout = not args.json and not (args.command == "key-sweep" and args.csv == "-")

    def out(line: str) -> None:
        print(line, file=sys.stdout if text_to_stdout else sys.stderr)

    config = {k: v for k, v in vars(args).items() if k not in ("output", "json", "dump_dir")}
    try:
        result, verified = COMMANDS[args.command](args, out)
    except FalsificationError as exc:
        path = Path(args.dump_dir) / f"falsification-{args.command}.lists"
        path.write_text(exc.dump())
        print(f"FALSIFICATION: {exc}; counterexample written to {path}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (GuardExceeded, CensusGuardExceeded, FaGuardExceeded, GraphError, ListError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = rep.make_report(args.command, config, result, verified)
    if args.output:
        Path(args.output).write_text(rep.dumps(report))
    if args.json:
        sys.stdout.write(rep.dumps(report))
    return EXIT_OK if verified else EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
