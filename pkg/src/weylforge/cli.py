"""Command-line interface: ``weylforge {jsf,decomp,verify,levi,propagate}``.

Exit codes: 0 ok, 2 usage or invalid input, 3 missing decomposition data,
4 branch explosion, 5 scenario verdict differs from the expected table.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .charalg import format_terms, nabla_character
from .decomp import fixture_simple_characters, solve_decomposition
from .errors import BranchExplosion, InconsistentData, MissingDecompositionData, UnknownScenario, WeylforgeError
from .filtrate import EXPECTED, SCENARIOS, parse_scenario, tmc_scenario
from .jantzen import jsf, jsf_in_simple_basis
from .levi import (format_pattern, levi_propagation, merge_patterns, propagation_table,
                   levi_subsystem, restrict_character)
from .rootsys import parse_system

SCHEMA_VERSION = 1

EXIT_OK, EXIT_USAGE, EXIT_MISSING, EXIT_EXPLOSION, EXIT_MISMATCH = 0, 2, 3, 4, 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _weight(rs, text: str, basis_in: str):
    if basis_in == "epsilon":
        vals = [Fraction(x.strip()) for x in text.split(",")]
        return rs.epsilon_to_omega(vals)
    return rs.weight(_ints(text))


def _report(args, system, p, inputs, branches, outcome, t0, **extra) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "system": system, "p": p, "command": args.command,
           "inputs": inputs, "branches": branches, "outcome": outcome,
           "timings_ms": {} if getattr(args, "no_timings", False)
           else {"total": round((time.perf_counter() - t0) * 1000, 3)}}
    doc.update(extra)
    return doc


def _emit(args, doc: dict, text: str, rows: list | None = None, header: list | None = None) -> None:
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=False))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header or ["weight", "coefficient"])
        for r in rows or []:
            w.writerow(r)
        sys.stdout.write(buf.getvalue())
    else:
        print(text)


def _wtxt(w) -> str:
    return ",".join(str(x) for x in w)


# -- commands ---------------------------------------------------------------

def cmd_jsf(args) -> int:
    t0 = time.perf_counter()
    rs = parse_system(args.system)
    lam = _weight(rs, args.weight, args.basis_in)
    s = jsf(rs, lam, args.p)
    inputs = {"lambda": list(lam), "basis": args.basis}
    if args.basis == "chi":
        items = s.items()
        text = format_terms(items, "chi") if items else "0 (empty sum)"
        branches = [{"terms": [[list(w), c] for w, c in items]}]
        rows = [[0, _wtxt(w), c] for w, c in items]
    else:
        known = None if args.no_fixtures else fixture_simple_characters(rs.name, args.p)
        bset = solve_decomposition(rs, lam, args.p, known=known, focus=[lam])
        forms = jsf_in_simple_basis(rs, lam, args.p, bset, s)
        branches = [{"terms": [[list(w), c] for w, c in f.items()]} for f in forms]
        rows = [[i, _wtxt(w), c] for i, f in enumerate(forms) for w, c in f.items()]
        if len(forms) == 1:
            text = format_terms(forms[0].items(), "simple") if forms[0] else "0 (empty sum)"
        else:
            text = "\n".join(f"branch {i}: {format_terms(f.items(), 'simple') or '0'}" for i, f in enumerate(forms))
    doc = _report(args, rs.name, args.p, inputs, branches, "ok", t0)
    _emit(args, doc, text, rows, ["branch", "weight", args.basis])
    return EXIT_OK


def _focus(rs, text: str | None):
    if not text:
        return None
    return [rs.weight(_ints(part)) for part in text.split(";") if part.strip()]


def cmd_decomp(args) -> int:
    t0 = time.perf_counter()
    rs = parse_system(args.system)
    lam = _weight(rs, args.weight, args.basis_in)
    known = None if args.no_fixtures else fixture_simple_characters(rs.name, args.p)
    bset = solve_decomposition(rs, lam, args.p, known=known, focus=_focus(rs, args.focus))
    branches = []
    lines = [f"Delta{lam} in {rs.name}, p={args.p}: {len(bset.branches)} branch(es)"]
    rows = []
    for i, col in enumerate(bset.branches):
        js = bset.jsf_simple_candidates(i)
        jsum = js[0] if len(js) == 1 else None
        branches.append({"column": [[list(w), d] for w, d in col.items()],
                         "sum_formula": None if jsum is None else [[list(w), d] for w, d in jsum.items()]})
        rows.extend([i, _wtxt(w), d] for w, d in col.items())
        if args.branches or len(bset.branches) == 1:
            lines.append(f"branch {i}:")
            lines.append(f"  {'mu':<16} [Delta:L(mu)]  [sum formula:L(mu)]")
            for w, d in col.items():
                j = "?" if jsum is None else jsum.get(w, 0)
                lines.append(f"  {str(w):<16} {d:<13} {j}")
    if not args.branches and len(bset.branches) > 1:
        lines.append("  (use --branches to print every branch)")
    for c in bset.constraints:
        lines.append(f"constraint: {c}")
    for w, vals in bset.undetermined.items():
        lines.append(f"outside focus: [Delta:L{w}] in {set(vals)}")
    if known:
        lines.append("pinned simple characters (literature): " + ", ".join(f"L{w}" for w in rs.sort_desc(known)))
    doc = _report(args, rs.name, args.p, {"lambda": list(lam), "focus": args.focus, "fixtures": not args.no_fixtures},
                  branches, "ok", t0, constraints=bset.constraints,
                  undetermined={_wtxt(k): list(v) for k, v in bset.undetermined.items()})
    _emit(args, doc, "\n".join(lines), rows, ["branch", "weight", "multiplicity"])
    return EXIT_OK


def _run_verify(ids: list[tuple[str, int | None]], workers: int):
    def one(item):
        sid, n = item
        return tmc_scenario(sid, n)
    if len(ids) == 1:
        return [tmc_scenario(ids[0][0], ids[0][1], workers)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            return list(ex.map(one, ids))
    return [one(i) for i in ids]


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    if args.all:
        ids = [parse_scenario(s, args.n) for s in SCENARIOS]
    elif args.scenario:
        ids = [parse_scenario(args.scenario, args.n)]
    else:
        print("verify: give --scenario or --all", file=sys.stderr)
        return EXIT_USAGE
    verdicts = _run_verify(ids, args.workers)
    ok = True
    texts = []
    docs = []
    for (sid, _), v in zip(ids, verdicts):
        expected = EXPECTED[sid]
        match = v.overall == expected and v.extra.get("support_shape", True)
        ok = ok and match
        texts.append(v.report() + f"\n  expected: {expected} -> {'MATCH' if match else 'MISMATCH'}")
        d = v.to_json()
        d["expected"] = expected
        d["matches_expected"] = match
        docs.append(d)
    system = verdicts[0].system if len(verdicts) == 1 else "multiple"
    p = verdicts[0].p if len(verdicts) == 1 else None
    doc = _report(args, system, p, {"scenarios": [v.scenario for v in verdicts]}, docs,
                  "match" if ok else "mismatch", t0)
    rows = [[v.scenario, v.overall, EXPECTED[sid]] for (sid, _), v in zip(ids, verdicts)]
    _emit(args, doc, "\n\n".join(texts), rows, ["scenario", "verdict", "expected"])
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_levi(args) -> int:
    t0 = time.perf_counter()
    rs = parse_system(args.system)
    levi = levi_subsystem(rs, _ints(args.J), one_based=True)
    lam = _weight(rs, args.restrict_nabla, args.basis_in)
    res = restrict_character(nabla_character(rs, lam), levi)
    native = nabla_character(levi.sub, levi.project(lam))
    same = res == native
    lines = [f"Levi subsystem J={[j + 1 for j in levi.J]} of {rs.name}: type {levi.sub.name}, "
             f"Levi simple k -> ambient {[j + 1 for j in levi.index_map]}",
             f"restriction of nabla{lam}: {format_terms(res.items(), 'weight')}",
             f"native nabla{levi.project(lam)} in {levi.sub.name}: {'equal' if same else 'DIFFERENT'}"]
    doc = _report(args, rs.name, None, {"J": list(_ints(args.J)), "lambda": list(lam)},
                  [{"levi_type": levi.sub.name, "index_map": [j + 1 for j in levi.index_map],
                    "character": [[list(w), m] for w, m in res.items()], "native_equal": same}],
                  "ok", t0)
    _emit(args, doc, "\n".join(lines), [[_wtxt(w), m] for w, m in res.items()], ["weight", "multiplicity"])
    return EXIT_OK


def cmd_propagate(args) -> int:
    t0 = time.perf_counter()
    rs = parse_system(args.ambient)
    rows = propagation_table(rs) if args.base == "all" else levi_propagation(args.base, rs)
    if args.merge:
        merged = []
        for p in sorted({r[2] for r in rows}):
            merged.extend((rs.family, rs.rank, p, pat)
                          for pat in merge_patterns([r[3] for r in rows if r[2] == p], p))
        rows = merged
    lines = [f"{fam}{rank} p={p} {format_pattern(pat)}" for fam, rank, p, pat in rows]
    doc = _report(args, rs.name, None, {"base": args.base},
                  [{"family": fam, "rank": rank, "p": p, "pattern": list(pat)} for fam, rank, p, pat in rows],
                  "ok", t0)
    _emit(args, doc, "\n".join(lines), [[f"{fam}{rank}", p, format_pattern(pat)] for fam, rank, p, pat in rows],
          ["system", "p", "pattern"])
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="weylforge", description="Sum formula, decomposition branches and counterexample checks.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, weight_flag=True):
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--no-timings", action="store_true", help="omit timings from JSON (byte-stable output)")
        if weight_flag:
            sp.add_argument("--basis-in", choices=("omega", "epsilon"), default="omega",
                            help="coordinates of weight arguments (epsilon only for B, C, D)")

    sp = sub.add_parser("jsf", help="sum formula for Delta(lambda)")
    sp.add_argument("--system", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--lambda", dest="weight", required=True)
    sp.add_argument("--basis", choices=("chi", "simple"), default="chi")
    sp.add_argument("--no-fixtures", action="store_true", help="ignore shipped literature characters")
    common(sp)
    sp.set_defaults(func=cmd_jsf)

    sp = sub.add_parser("decomp", help="decomposition branches of Delta(lambda)")
    sp.add_argument("--system", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--lambda", dest="weight", required=True)
    sp.add_argument("--branches", action="store_true", help="print every branch table")
    sp.add_argument("--focus", help="semicolon-separated weights to branch on, e.g. '0,3,0;0,0,0'")
    sp.add_argument("--no-fixtures", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_decomp)

    sp = sub.add_parser("verify", help="run counterexample scenarios")
    sp.add_argument("--scenario")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--n", type=int, default=None, help="rank for Bn_prop (default 4)")
    sp.add_argument("--workers", type=int, default=1)
    common(sp, weight_flag=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("levi", help="restrict nabla(lambda) to a Levi subsystem")
    sp.add_argument("--system", required=True)
    sp.add_argument("--J", required=True, help="1-based simple indices, e.g. 2,3")
    sp.add_argument("--restrict-nabla", required=True)
    common(sp)
    sp.set_defaults(func=cmd_levi)

    sp = sub.add_parser("propagate", help="lift a base counterexample through Levi subsystems")
    sp.add_argument("--base", required=True, help="base case id, or 'all'")
    sp.add_argument("--ambient", required=True)
    sp.add_argument("--merge", action="store_true", help="merge rows that differ in one coordinate")
    common(sp, weight_flag=False)
    sp.set_defaults(func=cmd_propagate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MissingDecompositionData, InconsistentData) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MISSING
    except BranchExplosion as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EXPLOSION
    except (UnknownScenario, WeylforgeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
