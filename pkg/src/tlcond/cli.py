"""Command-line front end.

Subcommands: ``prob`` (exact probability of an expression), ``series``
(CSV of time-indexed probabilities), ``machine`` (DOT export), ``taut``
(weak-tautology check) and ``indep`` (independence check).

Exit codes: 0 success, 1 input error, 2 mathematically undefined result.
"""
from __future__ import annotations

import argparse
import re
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional

from . import cea
from .automata import compile_cond, is_counter_free, minimize, to_dot
from .markov import (MarkovChain3, PeriodicChainError, ProbAssignment,
                     asymptotic, chain_from_machine, pr_n, pr_n_ratio)
from .syntax import (ParseError, algebra, formula_events, parse_cea,
                     parse_cond)

OK, INPUT_ERROR, UNDEFINED = 0, 1, 2

_CEA_CHOICES = ("tl", "sac", "gnw", "sch", "ps")
_EMBEDDINGS = ("first", "reverse", "sparse")


class _InputError(Exception):
    pass


def _decimal_12(x: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 40
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return str(d.quantize(Decimal("1.000000000000")))


def _load_dist(path: Optional[str], fallback_events: tuple[str, ...]) -> ProbAssignment:
    if path is None:
        return ProbAssignment.independent(
            algebra(fallback_events),
            {e: Fraction(1, 2) for e in fallback_events})
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return ProbAssignment.from_text(fh.read())
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise _InputError(f"bad distribution file {path}: {exc}") from None


def _expr_machine(kind: str, embedding: str, text: str, alg):
    """Parse per the selected algebra and compile the (raw) machine."""
    if kind == "tl":
        return compile_cond(parse_cond(text, alg), alg)
    if kind == "ps":
        e = parse_cea(text, alg, dialect="flat")
        if embedding == "first":
            return cea.first_machine(e, alg)
        return compile_cond(cea.embed_ps(e, embedding), alg)
    e = parse_cea(text, alg, dialect="full" if kind in ("sac", "gnw") else "flat")
    c = cea.simple_to_cond(cea.reduce_present(e, alg, kind))
    return compile_cond(c, alg)


def _expr_chain(kind: str, embedding: str, text: str,
                p: ProbAssignment) -> MarkovChain3:
    return chain_from_machine(
        minimize(_expr_machine(kind, embedding, text, p.alg)), p)


def cmd_prob(args) -> int:
    p = _load_dist(args.dist, _expr_events(args.expr))
    if args.cea == "tl":
        value = asymptotic(_expr_chain("tl", args.embedding, args.expr, p))
    elif args.cea == "ps":
        e = parse_cea(args.expr, p.alg, dialect="flat")
        value = cea.prob_ps(e, p, args.embedding)
    else:
        e = parse_cea(args.expr, p.alg,
                      dialect="full" if args.cea in ("sac", "gnw") else "flat")
        value = cea.prob_present(e, p, args.cea)
    if value is None:
        print("undefined")
        return UNDEFINED
    print(f"{value} ({_decimal_12(value)})")
    return OK


def cmd_series(args) -> int:
    p = _load_dist(args.dist, _expr_events(args.expr))
    ch = _expr_chain(args.cea, args.embedding, args.expr, p)
    print("n,p1,p0,pbot,ratio")
    for n in range(1, args.n + 1):
        p1, p0, pbot = pr_n(ch, n)
        ratio = pr_n_ratio(ch, n)
        print(f"{n},{p1},{p0},{pbot},{'undef' if ratio is None else ratio}")
    return OK


def cmd_machine(args) -> int:
    m = _expr_machine(args.cea, args.embedding, args.expr,
                      algebra(_expr_events(args.expr)))
    if args.minimize:
        m = minimize(m)
    if args.check_counter_free:
        print(f"counter-free: {'yes' if is_counter_free(m) else 'no'}",
              file=sys.stderr)
    print(to_dot(m))
    return OK


def cmd_taut(args) -> int:
    e = parse_cea(args.expr, None, dialect=args.dialect)
    ok, witness = cea.weak_tautology(e, args.cea, dialect=args.dialect,
                                     variable_cap=args.max_vars)
    if ok:
        print("weak-tautology: yes")
    else:
        assignment = " ".join(f"{k}={v}" for k, v in sorted(witness.items()))
        print(f"weak-tautology: no ({assignment})")
    return OK


def cmd_indep(args) -> int:
    events = tuple(dict.fromkeys(_expr_events(args.left) + _expr_events(args.right)))
    p = _load_dist(args.dist, events)
    left = parse_cond(args.left, p.alg)
    right = parse_cond(args.right, p.alg)
    if args.mode == "present":
        ok, checks = cea.present_indep(left, right, p, args.n)
        print(f"independent: {'yes' if ok else 'no'}")
        for chk in checks:
            if not chk["holds"]:
                def show(v):
                    return "undef" if v is None else str(v)
                print(f"  fails {chk['eq']}: lhs={show(chk['lhs'])} "
                      f"rhs={show(chk['rhs'])}")
    else:
        ok, witness = cea.strong_indep(left, right, p)
        print(f"independent: {'yes' if ok else 'no'}")
        if witness:
            print(f"  {witness}")
    return OK


def _expr_events(text: str) -> tuple[str, ...]:
    try:
        return tuple(sorted(formula_events(parse_cond(text, None))))
    except ParseError:
        pass
    try:
        return tuple(sorted(formula_events(parse_cea(text, algebra(
            _idents_of(text))))))
    except (ParseError, ValueError):
        return tuple(sorted(_idents_of(text)))


def _idents_of(text: str) -> tuple[str, ...]:
    keywords = {"true", "false", "not", "and", "or", "S", "Y", "O", "H"}
    found = dict.fromkeys(t for t in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", text)
                          if t not in keywords)
    return tuple(found)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="tlcond",
        description="three-valued temporal conditionals and their exact probabilities")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, dist=True):
        p.add_argument("--expr", required=True, help="expression text")
        p.add_argument("--cea", choices=_CEA_CHOICES, default="tl",
                       help="interpretation: direct conditional (tl), a "
                            "present-tense algebra, or the product space (ps)")
        p.add_argument("--embedding", choices=_EMBEDDINGS, default="first",
                       help="product-space interpretation (with --cea ps)")
        if dist:
            p.add_argument("--dist", help="distribution file (default: every "
                                          "event independent with probability 1/2)")

    p = sub.add_parser("prob", help="exact probability of an expression")
    common(p)
    p.set_defaults(fn=cmd_prob)

    p = sub.add_parser("series", help="CSV of time-indexed probabilities")
    common(p)
    p.add_argument("--n", type=int, required=True, help="last time index")
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("machine", help="DOT export of the compiled machine")
    common(p, dist=False)
    p.add_argument("--minimize", action="store_true")
    p.add_argument("--check-counter-free", action="store_true")
    p.set_defaults(fn=cmd_machine)

    p = sub.add_parser("taut", help="weak-tautology check over variables")
    p.add_argument("--expr", required=True)
    p.add_argument("--cea", choices=("sac", "gnw"), required=True)
    p.add_argument("--dialect", choices=("flat", "pure-conditional", "full"),
                   default="full")
    p.add_argument("--max-vars", type=int, default=cea.DEFAULT_VARIABLE_CAP)
    p.set_defaults(fn=cmd_taut)

    p = sub.add_parser("indep", help="independence of two conditionals")
    p.add_argument("--mode", choices=("present", "strong"), required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--dist")
    p.add_argument("--n", type=int, default=None,
                   help="fixed time for --mode present (default: the limit)")
    p.set_defaults(fn=cmd_indep)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except PeriodicChainError as exc:
        print(f"undefined ({exc})")
        return UNDEFINED
    except (_InputError, ParseError, ValueError, KeyError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
