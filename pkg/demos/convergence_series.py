#!/usr/bin/env python3
"""Watch time-indexed probabilities approach their exact limit.

Every row is exact rational arithmetic; the limit comes from absorption
probabilities and stationary distributions, not from iterating far enough.
"""
from fractions import Fraction

from tlcond import (algebra, asymptotic, chain_from_machine, compile_cond,
                    minimize, parse_cond, pr_n, pr_n_ratio)
from tlcond.markov import ProbAssignment

alg = algebra("a b")
p = ProbAssignment.independent(alg, {"a": Fraction(1, 2), "b": Fraction(1, 2)})

for text in ["((not b) S (a and b) | O b)",   # undefined until the first b
             "(a S b | O a)",
             "(O (a and b and not Y O b) | true)"]:
    c = parse_cond(text, alg)
    ch = chain_from_machine(minimize(compile_cond(c, alg)), p)
    limit = asymptotic(ch)
    print(f"\n{text}   (limit: {limit})")
    print("   n   p1        p0        pbot      ratio")
    for n in (1, 2, 3, 4, 6, 10, 16):
        p1, p0, pbot = pr_n(ch, n)
        ratio = pr_n_ratio(ch, n)
        gap = "exact" if ratio == limit else f"off by {float(abs(ratio - limit)):.2e}"
        print(f"  {n:2d}   {str(p1):9s} {str(p0):9s} {str(pbot):9s} "
              f"{str(ratio):9s} ({gap})")
