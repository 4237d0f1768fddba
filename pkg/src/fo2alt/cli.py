"""Command-line interface.

Exit codes: 0 success or true, 1 false for predicate commands, 2 usage or
parse error, 3 inconclusive (level scan hit the variable bound, or a
quotient did not stabilise).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .analysis import analyze_dfa
from .automata import AutomatonError, compile_language
from .congruences import LEFT, RIGHT, CongruenceQuery, QuotientNotStable, cong_equivalent, quotient_monoid
from .monoid import DEFAULT_MAX_VARS, MonoidError, format_table, read_table, satisfies_identity
from .rankers import RankerClassSpec, RankerError, agree_on_rankers, eval_ranker, parse_ranker, wi_equivalent
from .terms import TermSyntaxError, parse_term

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

# errors that mean "the input was malformed"
_INPUT_ERRORS = (AutomatonError, RankerError, TermSyntaxError, MonoidError, OSError)


class UsageError(Exception):
    pass


def emit(payload: dict, out=None) -> None:
    out = out or sys.stdout
    out.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")


def _report(command: str, args: argparse.Namespace, keys, **body) -> dict:
    echo = {k: getattr(args, k) for k in keys}
    return {"version": __version__, "command": command, "input": echo, **body}


def parse_class_spec(text: str, alphabet, n_max=None) -> RankerClassSpec:
    """`SHAPE:m,n` for the _mn shapes, `SHAPE:m` for the unbounded-depth shapes."""
    shape, sep, params = text.partition(":")
    if not sep:
        raise UsageError(f"class spec {text!r} must look like SHAPE:m,n or SHAPE:m")
    try:
        nums = [int(x) for x in params.split(",")]
    except ValueError:
        raise UsageError(f"class spec {text!r}: bounds must be integers") from None
    if len(nums) == 2:
        m, n = nums
    elif len(nums) == 1:
        m, n = nums[0], None
    else:
        raise UsageError(f"class spec {text!r}: expected one or two bounds")
    return RankerClassSpec(shape.strip(), m, n, tuple(sorted(set(alphabet))), n_max)


# --- commands ----------------------------------------------------------------


def format_analysis(d: dict) -> str:
    lv = d["level"]
    interval = lv["alternation_interval"]
    lines = [
        f"fo2alt {d['version']}",
        f"input: {d['input']}",
        f"minimal DFA states: {d['minimal_dfa_size']}",
        f"syntactic monoid size: {d['monoid_size']}",
        f"language alphabet: {''.join(d['language_alphabet']) or '(empty)'}",
        "varieties: " + ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in d["varieties"].items()),
        f"FO2 definable: {'yes' if lv['fo2_definable'] else 'no'}",
    ]
    for row in lv["scanned"]:
        lines.append(f"  m={row['m']}: R_m {'yes' if row['R'] else 'no'}, L_m {'yes' if row['L'] else 'no'}")
    if interval:
        lo, hi = interval
        lines.append(f"alternation level in [{lo}, {hi}]")
    elif lv["inconclusive"]:
        lines.append("alternation level: inconclusive (raise --max-vars)")
    lines.append(f"join diagnostic (advisory): {'holds' if d['join_diagnostic'] else 'fails'}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    source = args.regex if args.regex is not None else args.dfa
    dfa = compile_language(source, alphabet=args.alphabet, is_file=args.dfa is not None)
    echo = {"regex": args.regex, "dfa": args.dfa, "alphabet": args.alphabet, "max_vars": args.max_vars}
    report = analyze_dfa(dfa, input_echo=echo, max_vars=args.max_vars)
    payload = report.to_dict()
    payload["command"] = "analyze"
    if args.json:
        emit(payload)
    else:
        print(format_analysis(payload))
    return EXIT_INCONCLUSIVE if report.inconclusive else EXIT_OK


def cmd_ranker_eval(args) -> int:
    r = parse_ranker(args.ranker, alphabet=args.alphabet)
    out = eval_ranker(args.word, r)
    emit(_report("ranker eval", args, ("word", "ranker", "alphabet"), result=out.to_dict()))
    return EXIT_OK


def cmd_ranker_agree(args) -> int:
    alphabet = args.alphabet if args.alphabet is not None else sorted(set(args.u) | set(args.v))
    spec = parse_class_spec(args.cls, alphabet, args.n_max)
    agree = agree_on_rankers(args.u, args.v, spec, mode=args.mode)
    emit(_report("ranker agree", args, ("u", "v", "cls", "mode", "alphabet", "n_max"), agree=agree))
    return EXIT_OK if agree else EXIT_FALSE


def cmd_equiv(args) -> int:
    if not 1 <= args.m <= args.n:
        raise UsageError(f"need 1 <= m <= n, got m={args.m}, n={args.n}")
    if args.mode in ("plain", "condensed"):
        result = wi_equivalent(args.u, args.v, args.m, args.n, mode=args.mode, alphabet=args.alphabet)
    else:
        side = RIGHT if args.mode == "cong-right" else LEFT
        result = cong_equivalent(args.u, args.v, CongruenceQuery(args.m, args.n, side))
    if args.json:
        emit(_report("equiv", args, ("u", "v", "m", "n", "mode", "alphabet"), equivalent=result))
    else:
        print("true" if result else "false")
    return EXIT_OK if result else EXIT_FALSE


def cmd_monoid_identity(args) -> int:
    M = read_table(args.table)
    check = satisfies_identity(M, parse_term(args.lhs), parse_term(args.rhs), max_vars=args.max_vars)
    witness = None
    if not check.holds:
        witness = {
            "assignment": {f"x{k}": M.label(v) for k, v in check.counterexample.items()},
            "elements": {f"x{k}": v for k, v in check.counterexample.items()},
            "lhs": check.lhs_value,
            "rhs": check.rhs_value,
        }
    emit(_report("monoid identity", args, ("table", "lhs", "rhs"), holds=check.holds, counterexample=witness))
    return EXIT_OK if check.holds else EXIT_FALSE


def cmd_monoid_quotient(args) -> int:
    q = CongruenceQuery(args.m, args.n, args.side)
    try:
        quot = quotient_monoid(args.alphabet, q, length_cap=args.length_cap)
    except QuotientNotStable as exc:
        emit(_report("monoid quotient", args, ("alphabet", "m", "n", "side", "length_cap"), error=str(exc)))
        return EXIT_INCONCLUSIVE
    M = quot.monoid
    text = format_table(M)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    if args.format == "table":
        sys.stdout.write(text)
    else:
        emit(
            _report(
                "monoid quotient",
                args,
                ("alphabet", "m", "n", "side", "length_cap"),
                size=M.size,
                identity=M.identity,
                representatives=list(quot.representatives),
                generators={lbl: g for lbl, g in M.generators},
                table=M.table.tolist(),
            )
        )
    return EXIT_OK


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fo2alt", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="decide the alternation level of a regular language")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--regex", help="regular expression (letters, [..], |, *, +, parentheses)")
    src.add_argument("--dfa", help="DFA file")
    a.add_argument("--alphabet", help="declared alphabet, e.g. abc (default: letters of the regex)")
    a.add_argument("--json", action="store_true", help="emit a JSON report")
    a.add_argument("--max-vars", type=int, default=DEFAULT_MAX_VARS, help="variable bound for identity checks")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("ranker", help="evaluate rankers or compare words on a ranker class")
    rsub = r.add_subparsers(dest="ranker_command", required=True)
    re_ = rsub.add_parser("eval")
    re_.add_argument("--word", required=True)
    re_.add_argument("--ranker", required=True, help="e.g. Xa.Yb.Xc")
    re_.add_argument("--alphabet")
    re_.set_defaults(func=cmd_ranker_eval)
    ra = rsub.add_parser("agree")
    ra.add_argument("--u", required=True)
    ra.add_argument("--v", required=True)
    ra.add_argument("--class", dest="cls", required=True, help="SHAPE:m,n or SHAPE:m, e.g. uRX_mn:2,3")
    ra.add_argument("--mode", choices=("defined", "condensed"), default="defined")
    ra.add_argument("--alphabet")
    ra.add_argument("--n-max", type=int, help="depth cap for the unbounded-depth shapes")
    ra.set_defaults(func=cmd_ranker_agree)

    e = sub.add_parser("equiv", help="FO2 / condensed-congruence equivalence of two words")
    e.add_argument("--u", required=True)
    e.add_argument("--v", required=True)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--mode", choices=("plain", "condensed", "cong-right", "cong-left"), default="plain")
    e.add_argument("--alphabet")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_equiv)

    mo = sub.add_parser("monoid", help="identity checks and congruence quotients")
    msub = mo.add_subparsers(dest="monoid_command", required=True)
    mi = msub.add_parser("identity")
    mi.add_argument("--table", required=True, help="monoid table file")
    mi.add_argument("--lhs", required=True, help="omega-term, e.g. 'x1^w x1'")
    mi.add_argument("--rhs", required=True)
    mi.add_argument("--max-vars", type=int, default=DEFAULT_MAX_VARS)
    mi.set_defaults(func=cmd_monoid_identity)
    mq = msub.add_parser("quotient")
    mq.add_argument("--alphabet", required=True)
    mq.add_argument("--m", type=int, required=True)
    mq.add_argument("--n", type=int, required=True)
    mq.add_argument("--side", choices=(RIGHT, LEFT), default=RIGHT)
    mq.add_argument("--length-cap", type=int, default=12)
    mq.add_argument("--format", choices=("json", "table"), default="json")
    mq.add_argument("--out", help="also write the table file here")
    mq.set_defaults(func=cmd_monoid_quotient)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fo2alt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _INPUT_ERRORS as exc:
        print(f"fo2alt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:  # e.g. invalid query bounds
        print(f"fo2alt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
