#!/usr/bin/env python3
"""Independence of conditionals, two strengths.

Present-tense independence asks only that the time-n verdicts be independent
random variables; it is decided by four equalities between probabilities.
Strong independence asks that the whole processes come from independent
chains; it is decided on the minimal machines' joint chain.  A conditional
and its one-step-delayed copy separate the two notions.
"""
from fractions import Fraction

from tlcond import algebra, parse_cond, present_indep, strong_indep
from tlcond.markov import ProbAssignment

alg4 = algebra("a b c d")
half4 = ProbAssignment.independent(alg4, {e: Fraction(1, 2) for e in "abcd"})

c1 = parse_cond("(a|b)", alg4)
c2 = parse_cond("(c|d)", alg4)
print("(a|b) vs (c|d), disjoint independent generators:")
print("  present:", present_indep(c1, c2, half4)[0])
print("  strong: ", strong_indep(c1, c2, half4)[0])

alg = algebra("a b")
half = ProbAssignment.independent(alg, {"a": Fraction(1, 2), "b": Fraction(1, 2)})

now = parse_cond("(a|true)", alg)
delayed = parse_cond("(Y a|Y true)", alg)
print("\n(a|true) vs its one-step delay (Y a|Y true):")
ok, checks = present_indep(now, delayed, half, n=3)
print("  present at time 3:", ok)
ok, witness = strong_indep(now, delayed, half)
print("  strong:           ", ok)
print("  witness:          ", witness)

print("\nA conditional against itself fails already at present tense:")
ok, checks = present_indep(now, now, half)
print("  present:", ok)
for chk in checks:
    if not chk["holds"]:
        print(f"  fails {chk['eq']}: lhs={chk['lhs']} rhs={chk['rhs']}")
