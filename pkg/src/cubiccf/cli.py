"""Command line entry point: ``cubiccf <command> ...``.

Exit codes: 0 success or verified, 1 falsified fixture or unbounded status
when ``--expect-bounded`` was given, 2 usage or engine diagnostics.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from . import patterns
from .engine import UNBOUNDED, EngineError, run_expansion
from .gf import GF2, GF4, GF8, field_by_name
from .laurent import Cubic, PrecisionError
from .roots import newton_polygon_roots
from .survey import CI_THRESHOLD, orbit_partition, orbit_representatives, survey

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    """Accept 1000, 1e6, 10**6 and 1_000_000."""
    t = text.replace("_", "").strip()
    try:
        if "**" in t:
            b, e = t.split("**")
            return int(b) ** int(e)
        if "e" in t.lower():
            return int(float(t))
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _field(args, cubic):
    if args.field:
        return field_by_name(args.field)
    for f in (GF2, GF4, GF8):
        if newton_polygon_roots(cubic, f):
            return f
    raise UsageError(f"no Laurent series root of {cubic} over GF(2), GF(4) or GF(8)")


def _root_arg(args):
    if args.lead is not None:
        return args.lead
    return args.root


def _letters_or_digits(p, letters):
    if letters is not None:
        return letters.get(p, p.digits())
    return p.digits()


def cmd_expand(args, out) -> int:
    cubic = Cubic.parse(args.cubic)
    fld = _field(args, cubic)
    letters = None
    if args.letters:
        if fld != GF4:
            raise UsageError("--letters applies to GF(4) expansions only")
        letters = {patterns.letter_poly(ch): ch for ch in patterns.CASE_A_LETTERS}
    pqs_file = open(args.pqs_path, "w") if args.pqs_path else None
    writer = csv.writer(out, lineterminator="\n") if args.format == "csv" else None
    if writer:
        writer.writerow(["index", "quotient", "degree"])

    def sink(i, p):
        tok = _letters_or_digits(p, letters)
        if pqs_file is not None:
            pqs_file.write(tok + "\n")
        if args.format == "plain":
            out.write(tok + "\n")
        elif writer:
            writer.writerow([i, tok, p.deg])
        if i % 4096 == 4095:
            out.flush()

    try:
        rep = run_expansion(cubic, _root_arg(args), args.n, fld, detect=not args.no_detect,
                            probable_threshold=args.threshold or args.n, precision=args.precision,
                            bootstrap=args.bootstrap, sink=sink)
    finally:
        if pqs_file is not None:
            pqs_file.close()
    summary = {
        "cubic": cubic.digits(),
        "field": fld.name,
        "root": str(_root_arg(args)),
        "n": len(rep.values),
        "status": rep.status,
        "ht": rep.ht,
        "pairs": rep.pair_count,
        "pqs_path": args.pqs_path,
    }
    if args.format == "json":
        out.write(json.dumps(summary, sort_keys=True) + "\n")
    elif args.format == "plain":
        out.write(f"# status={rep.status} ht={rep.ht} pairs={rep.pair_count} n={len(rep.values)}\n")
    if args.expect_bounded and rep.status == UNBOUNDED:
        return EXIT_FAIL
    return EXIT_OK


def _survey_rows(rep):
    for r in rep.records:
        if not r.irreducible:
            continue
        for k, x in enumerate(r.roots):
            yield {
                "cubic": r.cubic.digits(),
                "root": k,
                "lead": x.lead,
                "field": x.field.name,
                "status": x.status,
                "ht": x.ht,
                "pairs": x.pairs,
                "orbit": r.orbit_id,
            }


def cmd_survey(args, out) -> int:
    rep = survey(args.max_deg, args.threshold, args.workers)
    rows = list(_survey_rows(rep))
    if args.format == "json":
        out.write(json.dumps({"rows": rows, "footer": rep.footer()}, sort_keys=True, indent=1) + "\n")
    elif args.format == "csv":
        w = csv.DictWriter(out, fieldnames=list(rows[0]) if rows else ["cubic"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    else:
        for r in rep.winners:
            stats = " ".join(f"{x.field.name}:{x.status}" for x in r.roots)
            out.write(f"{r.cubic.digits():<16} orbit {r.orbit_id}  {stats}\n")
        counts = rep.three_gf2_root_counts()
        out.write("three GF(2) roots, by bounded count: "
                  + ", ".join(f"{k}:{counts.get(k, 0)}" for k in range(4)) + "\n")
        out.write(rep.footer() + "\n")
    return EXIT_OK


def cmd_orbits(args, out) -> int:
    rep = survey(args.max_deg, args.threshold, args.workers)
    winners = [r.cubic for r in rep.winners]
    orbits = orbit_partition(winners)
    reps = orbit_representatives(orbits)
    named = {k: v for k, v in (("A", patterns.CASE_A), ("B", patterns.CASE_B), ("C", patterns.CASE_C))}
    for oid in sorted(reps):
        members = sorted((c for c, o in orbits.items() if o == oid), key=lambda c: c.key)
        tags = [name for name, c in named.items() if c in members]
        out.write(f"orbit {oid}: size {len(members)} representative {reps[oid].digits()}"
                  f" case {','.join(tags) or '-'}\n")
        for c in members:
            out.write(f"  {c.digits()}\n")
    return EXIT_OK


def _verdict(out, name, ok, detail="") -> int:
    out.write(f"{'PASS' if ok else 'FAIL'} {name}{': ' + detail if detail else ''}\n")
    return EXIT_OK if ok else EXIT_FAIL


def _first_mismatch(a, b):
    for k, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return k
    return None if len(a) == len(b) else min(len(a), len(b))


def cmd_verify_a(args, out) -> int:
    eng = patterns.case_a_engine(args.n, detect=False).pqs
    gen = patterns.case_a_generate(args.n)
    k = _first_mismatch(eng, gen)
    code = _verdict(out, f"case A recursion vs engine, {args.n} quotients", k is None,
                    "" if k is None else f"first mismatch at {k}")
    m = min(args.fold_n, args.n)
    gf2 = run_expansion(patterns.CASE_A, 0, m, detect=False).pqs
    folded = patterns.fold_to_gf2(gen[:m])
    k2 = _first_mismatch(folded, gf2)
    code2 = _verdict(out, f"case A folding to GF(2), {m} quotients", k2 is None,
                     "" if k2 is None else f"first mismatch at {k2}")
    return max(code, code2)


def cmd_verify_b(args, out) -> int:
    table = patterns.load_case_b_table()
    eng = patterns.case_b_engine(args.n, detect=False)
    digits = eng.digits()
    seeds = list(patterns.CASE_B_SEED + patterns.CASE_B_NEXT)
    code = _verdict(out, "case B seeds", digits[:16] == seeds)
    try:
        derived = patterns.derive_case_b_table(digits)
        ok = derived == table
        detail = f"{len(derived)} rows derived, {len(table)} in fixture"
    except patterns.PatternFalsified as exc:
        ok, detail = False, str(exc)
    code = max(code, _verdict(out, "case B table", ok, detail))
    try:
        gen = patterns.case_b_generate(args.n, table)
        k = _first_mismatch(gen, eng.pqs)
        ok, detail = k is None, "" if k is None else f"first mismatch at {k}"
    except patterns.PatternFalsified as exc:
        ok, detail = False, str(exc)
    return max(code, _verdict(out, f"case B generator vs engine, {args.n} quotients", ok, detail))


def cmd_verify_c(args, out) -> int:
    if args.n > 1000:
        raise UsageError("the Case C table holds 1000 quotients")
    table = patterns.load_case_c_table()[:args.n]
    got = patterns.case_c_engine(args.n, detect=False).digits()
    same = sum(x == y for x, y in zip(got, table))
    return _verdict(out, "case C table", same == args.n, f"{same}/{args.n} tokens")


def cmd_stats(args, out) -> int:
    cubic = Cubic.parse(args.cubic)
    fld = _field(args, cubic)
    rep = run_expansion(cubic, _root_arg(args), args.n, fld, detect=False)
    pqs = rep.pqs
    pals = patterns.palindrome_scan(pqs, 2)
    runs = patterns.alternating_runs(pqs)
    alphabet = set(pqs[1:])
    out.write(f"quotients {len(pqs)}\n")
    out.write(f"distinct quotients after the first {len(alphabet)}\n")
    out.write(f"max degree {max((p.deg for p in pqs), default=0)}\n")
    out.write(f"input-state pairs {rep.pair_count}\n")
    out.write(f"produced per consumed {rep.rate():.4f}\n")
    out.write(f"longest palindrome {max((p[1] for p in pals), default=0)}\n")
    out.write(f"longest degree 1/2 alternation {max((r[1] for r in runs), default=0)}\n")
    if args.case_c and cubic == patterns.CASE_C:
        expected = patterns.case_c_expected_alphabet()
        out.write(f"alphabet equals degree-1 polynomials and their squares: {alphabet == expected}\n")
    step = max(1, len(rep.pairs.growth) // 20)
    for j, count in rep.pairs.growth[::step]:
        out.write(f"pairs after input {j}: {count}\n")
    return EXIT_OK


def cmd_bench(args, out) -> int:
    cubic = Cubic.parse(args.cubic)
    fld = _field(args, cubic)
    times = {}
    for n in (args.n // 10, args.n):
        t0 = time.perf_counter()
        run_expansion(cubic, _root_arg(args), n, fld, detect=False, log_pairs=False)
        times[n] = time.perf_counter() - t0
        out.write(f"n={n} seconds={times[n]:.3f} quotients/s={n / times[n]:.0f}\n")
    ratio = times[args.n] / times[args.n // 10]
    return _verdict(out, "linear scaling", ratio <= 15, f"time ratio {ratio:.2f} for a 10x larger run")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubiccf", description="Continued fractions of cubic Laurent series over GF(2^k).")
    sub = ap.add_subparsers(dest="command", required=True)

    def root_opts(p, n_default):
        p.add_argument("--cubic", default="A", help="A, B, C, D or four digit strings a0,a1,a2,a3")
        p.add_argument("--field", default=None, help="gf2, gf4 or gf8 (default: smallest holding the cubic)")
        p.add_argument("--root", type=int, default=0, help="root index in sorted order")
        p.add_argument("--lead", default=None, help="select the root by leading coefficient digit, or t")
        p.add_argument("--n", type=_int, default=n_default)

    p = sub.add_parser("expand", help="expand one root")
    root_opts(p, 1000)
    p.add_argument("--threshold", type=_int, default=None, help="quotients needed for probable_bounded (default n)")
    p.add_argument("--precision", type=_int, default=512)
    p.add_argument("--bootstrap", type=_int, default=None)
    p.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    p.add_argument("--pqs-path", default=None, help="also stream quotients to this file")
    p.add_argument("--letters", action="store_true", help="print Case A letters a..i where possible")
    p.add_argument("--no-detect", action="store_true")
    p.add_argument("--expect-bounded", action="store_true", help="exit 1 if the detector fires")
    p.set_defaults(func=cmd_expand)

    for name, func, helptext in (("survey", cmd_survey, "classify every low-degree cubic"),
                                 ("orbits", cmd_orbits, "group the bounded cubics into orbits")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--max-deg", type=_int, default=1)
        p.add_argument("--threshold", type=_int, default=CI_THRESHOLD)
        p.add_argument("--workers", type=_int, default=1)
        if name == "survey":
            p.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
        p.set_defaults(func=func)

    p = sub.add_parser("verify-a", help="Case A recursion and folding against the engine")
    p.add_argument("--n", type=_int, default=10**5)
    p.add_argument("--fold-n", type=_int, default=10**4)
    p.set_defaults(func=cmd_verify_a)
    p = sub.add_parser("verify-b", help="Case B seeds, table and generator against the engine")
    p.add_argument("--n", type=_int, default=10**5)
    p.set_defaults(func=cmd_verify_b)
    p = sub.add_parser("verify-c", help="Case C against the tabulated first 1000 quotients")
    p.add_argument("--n", type=_int, default=1000)
    p.set_defaults(func=cmd_verify_c)

    p = sub.add_parser("stats", help="alphabet, palindromes and pair growth of one expansion")
    root_opts(p, 10**4)
    p.set_defaults(func=cmd_stats, case_c=True)

    p = sub.add_parser("bench", help="throughput and linear-scaling check")
    root_opts(p, 10**6)
    p.set_defaults(func=cmd_bench)
    return ap


def run_cli(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, ValueError, EngineError, PrecisionError, patterns.FixtureError) as exc:
        sys.stderr.write(f"cubiccf: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
