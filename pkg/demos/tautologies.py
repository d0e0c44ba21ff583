#!/usr/bin/env python3
"""Weak tautologies of the three-valued algebras.

A weak tautology never evaluates to 0, whatever three-valued values its
variables take.  There are no strong tautologies (never anything but 1):
every connective maps all-undefined to undefined, so the all-undefined
valuation defeats any candidate.
"""
from tlcond import Value3, eval_cea_valuation, parse_cea, weak_tautology

CANDIDATES = [
    "(p|p)",            # conditioning a thing on itself
    "p or ~p",          # excluded middle
    "~(p and ~p)",      # non-contradiction
    "((p|q) | q)",      # nested conditioning
    "p",                # not a tautology: p = 0 refutes it
    "(p | ~p)",
]

for text in CANDIDATES:
    e = parse_cea(text, None)
    verdicts = {}
    for which in ("sac", "gnw"):
        ok, witness = weak_tautology(e, which)
        verdicts[which] = "yes" if ok else f"no  (refuted by {witness})"
    print(f"{text:14s} sac: {verdicts['sac']:26s} gnw: {verdicts['gnw']}")

print("\nPure-conditional expressions cannot tell the two algebras apart: "
      "collapsing 1 and ⊥\nturns both conditioning operators into classical "
      "reverse implication.")

e = parse_cea("((p|q) | (q|p))", None, dialect="pure-conditional")
for which in ("sac", "gnw"):
    print(f"  ((p|q) | (q|p)) under {which}: {weak_tautology(e, which)[0]}")

bottom = {"p": Value3.UNDEF, "q": Value3.UNDEF}
e = parse_cea("(p|p) or ~(q and p)", None)
print(f"\nAll-undefined valuation on '(p|p) or ~(q and p)': "
      f"{eval_cea_valuation(e, bottom, 'sac')} under sac - "
      "hence no strong tautologies.")
