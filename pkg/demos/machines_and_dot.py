#!/usr/bin/env python3
"""Compile conditionals to Moore machines, minimize them, export DOT.

A machine reads one atom (a complete assignment to the basic events) per
time step and emits 0, 1 or ⊥ after each letter.  Minimization gives the
unique smallest machine computing the same verdict sequence.
"""
from tlcond import (algebra, compile_cond, is_counter_free, minimize,
                    parse_cond, to_dot)

alg = algebra("a b")

for text in ["(a | b)",
             "(O (a and b and not Y O b) | true)",   # first defined value was 1
             "((not b) S (a and b) | O b)"]:         # most recent defined value
    c = parse_cond(text, alg)
    raw = compile_cond(c, alg)
    small = minimize(raw)
    print(f"{text}:  {raw.n_states} states compiled, "
          f"{small.n_states} minimized, "
          f"counter-free: {is_counter_free(small)}")

c = parse_cond("(O (a and b and not Y O b) | true)", alg)
m = minimize(compile_cond(c, alg))

print("\nRun on the word {} {a} {a b}  (b first happens at step 3, with a):")
letters = [0b00, 0b01, 0b11]
print("  outputs:", " ".join(v.symbol for v in m.run(letters)))

print("\nDOT of the minimized three-state machine:\n")
print(to_dot(m, name="first_resolution"))
