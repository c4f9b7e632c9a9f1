"""Command-line front end.

Every subcommand prints a short human summary; ``--json PATH`` (``-`` for
stdout) also writes a deterministic report with exact numbers.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone

from . import __version__
from .arith import (beta_of, denominators_from_zero, fraction_dict, number_dict,
                    sturmian_index_term, sturmian_supremum)
from .kernels import BACKEND
from .repetition import (factor_complexity, factor_index, index_in_prefix, max_integer_power,
                         maximal_runs)
from .theory import bispecials_via_T, index_w_n, max_integer_power_theorem, sequence_pair
from .verify import DEFAULT_PREFIX, brute_bispecials, verify_grid
from .words import (BinaryWord, ParryParams, PrefixCapExceeded, abelianize, fixed_point_prefix,
                    max_prefix_cap, read_word, write_word)

CONFIRM_CAP = 2_000_000


class CommandError(Exception):
    """Domain error reported to the user with exit code 1."""


def make_report(command: str, params, results: dict) -> dict:
    return {
        "command": command,
        "params": None if params is None else {"p": params[0], "q": params[1]},
        "results": results,
        "provenance": {"tool": "parryindex", "version": __version__, "backend": BACKEND,
                       "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")},
    }


def dump_report(report: dict, path: str | None) -> None:
    if not path:
        return
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _params(args) -> ParryParams:
    try:
        return ParryParams(args.p, args.q)
    except ValueError as exc:
        raise CommandError(str(exc)) from None


def _prefix(params, length: int) -> BinaryWord:
    try:
        return fixed_point_prefix(params, length, truncate=True)
    except PrefixCapExceeded as exc:
        raise CommandError(str(exc)) from None


def cmd_generate(args) -> tuple[dict, str]:
    params = _params(args)
    word = _prefix(params, args.length)
    write_word(args.out, word)
    counts = abelianize(word)
    results = {"length": len(word), "count0": counts.count0, "count1": counts.count1,
               "out": args.out}
    return results, f"wrote {len(word)} symbols to {args.out}: |w|_0 = {counts.count0}, " \
                     f"|w|_1 = {counts.count1}"


def _confirm_wn(params, n: int, base_len: int):
    pair = sequence_pair(params, n, cap=CONFIRM_CAP)
    if pair.w_word is None or pair.v_word is None:
        return None, None
    length = max(base_len, 4 * len(pair.v_word))
    cap = min(max_prefix_cap(), 64 * len(pair.v_word) + base_len)
    while True:
        prefix = fixed_point_prefix(params, length, truncate=True)
        if pair.v_word.data in prefix.data:
            return index_in_prefix(prefix, pair.w_word), length
        if length >= cap:
            return None, None
        length = min(2 * length, cap)


def _factor_index(params, factor: BinaryWord, base_len: int):
    """Index in prefixes doubled from ``base_len`` until it is stable."""
    cap = max_prefix_cap()
    length = min(base_len, cap)
    previous = None
    while True:
        prefix = fixed_point_prefix(params, length, truncate=True)
        if factor.data not in prefix.data:
            saturated = factor_index(prefix).profile(len(factor)).saturated_up_to \
                if len(factor) < len(prefix) else 0
            if "11" in str(factor) or saturated >= len(factor) or length >= cap:
                raise CommandError(f"{factor} is not a factor of u_beta")
        else:
            result = index_in_prefix(prefix, factor)
            if previous is not None and result.index == previous.index:
                return result, length, True
            if length >= cap:
                return result, length, False
            previous = result
        length = min(2 * length, cap)


def cmd_index(args) -> tuple[dict, str]:
    params = _params(args)
    if args.wn is not None:
        if args.wn < 0:
            raise CommandError("--wn must be nonnegative")
        exact = index_w_n(params, args.wn)
        brute, length = _confirm_wn(params, args.wn, args.prefix_len)
        results = {"mode": "wn", "n": args.wn, "index": number_dict(exact),
                   "confirmed": None if brute is None else brute.index == exact,
                   "brute_force_prefix": length}
        summary = f"ind(w^({args.wn})) = {exact}"
        if brute is not None:
            summary += f" (brute force on {length} symbols: {brute.index})"
        return results, summary
    try:
        factor = BinaryWord(args.factor)
    except ValueError as exc:
        raise CommandError(str(exc)) from None
    if not len(factor):
        raise CommandError("factor must be nonempty")
    result, length, stable = _factor_index(params, factor, args.prefix_len)
    results = {"mode": "factor", "factor": str(factor), "index": number_dict(result.index),
               "witness_start": result.witness_start,
               "lower_bound_only": result.lower_bound_only,
               "prefix_length": length, "stable": stable}
    return results, f"ind({factor}) >= {result.index} (prefix of {length} symbols, " \
                    f"{'stable' if stable else 'not stabilized'})"


def cmd_powers(args) -> tuple[dict, str]:
    if args.input:
        word, params = read_word(args.input), None
    else:
        params = _params(args)
        word = _prefix(params, args.prefix_len)
    if len(word) < 2:
        raise CommandError("need a word of length at least 2")
    k, witness = max_integer_power(word, maximal_runs(word))
    results = {"length": len(word), "k": k, "witness": str(witness)}
    summary = f"max integer power {k}, witness {witness}"
    if params is not None:
        expected = max_integer_power_theorem(params)
        results.update(expected=expected, matches=k == expected)
        summary += f" (expected {expected})"
    return results, summary


def cmd_complexity(args) -> tuple[dict, str]:
    params = _params(args)
    prefix = _prefix(params, args.prefix_len)
    if args.max_n >= len(prefix):
        raise CommandError("--max-n must be below the prefix length")
    profile = factor_complexity(prefix, args.max_n)
    diffs = sorted(set(profile.differences()))
    results = {"max_n": args.max_n, "counts": list(profile.counts),
               "saturated_up_to": profile.saturated_up_to, "differences": diffs}
    return results, f"C(n) for n <= {args.max_n}: saturated up to {profile.saturated_up_to}, " \
                    f"C(n+1) - C(n) in {set(diffs)}"


def cmd_bispecials(args) -> tuple[dict, str]:
    params = _params(args)
    generated = bispecials_via_T(params, args.max_n)
    prefix = _prefix(params, args.prefix_len)
    brute = brute_bispecials(prefix, args.max_n)
    agree = set(generated) == brute
    results = {"max_n": args.max_n, "bispecials": [str(w) for w in generated],
               "matches_enumeration": agree}
    return results, f"{len(generated)} bispecial factors of length <= {args.max_n}; " \
                    f"enumeration {'agrees' if agree else 'DISAGREES'}"


def cmd_verify(args) -> tuple[dict, str]:
    checks = verify_grid(args.grid, prefix_len=args.prefix_len, jobs=args.jobs,
                         inject_fault=args.inject_fault)
    failed = [c for c in checks if not c.passed]
    results = {"grid": args.grid, "checks": [c.as_dict() for c in checks],
               "passed": len(checks) - len(failed), "failed": len(failed)}
    lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name} {c.params or ''}" for c in failed]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return results, "\n".join(lines)


def sturmian_rows(p: int, n_max: int) -> list[dict]:
    params = ParryParams(p, p - 1)
    qs = denominators_from_zero(p, 2 * n_max + 1)
    rows = []
    for n in range(n_max + 1):
        term, ind = sturmian_index_term(p, n), index_w_n(params, n)
        rows.append({"n": n, "q_2n": qs[2 * n], "q_2n+1": qs[2 * n + 1],
                     "sturmian_term": term, "ind_wn": ind, "equal": term == ind})
    return rows


def cmd_sturmian_check(args) -> tuple[dict, str]:
    rows = sturmian_rows(args.p, args.max_n)
    sup = sturmian_supremum(args.p)
    beta, _ = beta_of(ParryParams(args.p, args.p - 1))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "q_2n", "q_2n+1", "sturmian_term", "ind_wn", "equal"])
            for r in rows:
                writer.writerow([r["n"], r["q_2n"], r["q_2n+1"], r["sturmian_term"],
                                 r["ind_wn"], r["equal"]])
    ok = all(r["equal"] for r in rows) and sup == beta + 1
    results = {"rows": [dict(r, sturmian_term=fraction_dict(r["sturmian_term"]),
                             ind_wn=fraction_dict(r["ind_wn"])) for r in rows],
               "supremum": number_dict(sup), "beta_plus_one": number_dict(beta + 1),
               "all_equal": ok}
    lines = [f"{r['n']:>3} {r['q_2n']:>12} {r['q_2n+1']:>12} {str(r['sturmian_term']):>28} "
             f"{'=' if r['equal'] else '!='}" for r in rows]
    lines.append(f"sup = {sup} = beta + 1: {sup == beta + 1}")
    return results, "\n".join(lines)


def _at_least(bound: int):
    def parse(text: str) -> int:
        value = int(text)
        if value < bound:
            raise argparse.ArgumentTypeError(f"must be an integer >= {bound}")
        return value
    return parse


_positive = _at_least(1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parryindex", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, pq=True, help=None):
        sp = sub.add_parser(name, help=help)
        if pq:
            sp.add_argument("--p", type=int, required=True)
            sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
        sp.set_defaults(func=func)
        return sp

    sp = add("generate", cmd_generate, help="write a prefix of u_beta")
    sp.add_argument("--length", type=_positive, required=True)
    sp.add_argument("--out", required=True)

    sp = add("index", cmd_index, help="index of w^(n) or of a factor")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--wn", type=int, metavar="N")
    mode.add_argument("--factor", metavar="WORD")
    sp.add_argument("--prefix-len", type=_positive, default=DEFAULT_PREFIX)

    sp = add("powers", cmd_powers, pq=False, help="maximal integer power in a prefix")
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--prefix-len", "--length", type=_positive, default=DEFAULT_PREFIX)
    sp.add_argument("--in", dest="input", metavar="PATH", help="read the word from a file")

    sp = add("complexity", cmd_complexity, help="factor complexity of a prefix")
    sp.add_argument("--prefix-len", type=_positive, default=DEFAULT_PREFIX)
    sp.add_argument("--max-n", type=_positive, default=500)

    sp = add("bispecials", cmd_bispecials, help="bispecial factors via T")
    sp.add_argument("--max-n", type=_positive, default=100)
    sp.add_argument("--prefix-len", type=_positive, default=DEFAULT_PREFIX)

    sp = add("verify", cmd_verify, pq=False, help="run the grid verification suite")
    sp.add_argument("--grid", type=_at_least(2), required=True, metavar="PMAX")
    sp.add_argument("--prefix-len", type=_positive, default=DEFAULT_PREFIX)
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    sp = add("sturmian-check", cmd_sturmian_check, pq=False,
             help="compare with the Sturmian index formula (q = p - 1)")
    sp.add_argument("--p", type=_at_least(2), required=True)
    sp.add_argument("--max-n", type=_at_least(0), default=20)
    sp.add_argument("--csv", metavar="PATH")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "powers" and not args.input and (args.p is None or args.q is None):
        parser.error("powers needs --p and --q or --in")
    try:
        results, summary = args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    params = (args.p, args.q) if getattr(args, "q", None) is not None else (
        (args.p, args.p - 1) if args.command == "sturmian-check" else None)
    report = make_report(args.command, params, results)
    if args.json != "-":
        print(summary)
    dump_report(report, args.json)
    if args.command == "verify" and results["failed"]:
        return 1
    if args.command == "sturmian-check" and not results["all_equal"]:
        return 1
    return 0
