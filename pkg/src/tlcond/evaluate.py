"""Reference semantics: temporal formulas and conditionals on finite words.

This module is the slow, definitional evaluator.  The since-operator is
computed straight from its defining clause (an existential past witness with
an all-between condition), so it stays independent of the automaton pipeline
that the test suite checks against it.
"""
from __future__ import annotations

from dataclasses import dataclass

from .syntax import (And, Atom, CondObject, Const, EventAlgebra, Iff, Implies,
                     Not, Or, Prev, Since, TLFormula)
from .trivalue import Value3


@dataclass(frozen=True)
class Word:
    """A nonempty sequence of atoms of an event algebra."""

    alg: EventAlgebra
    letters: tuple[int, ...]

    def __post_init__(self):
        if len(self.letters) == 0:
            raise ValueError("a word must have at least one letter")
        for a in self.letters:
            if not 0 <= a < self.alg.num_atoms:
                raise ValueError(f"atom {a} out of range")

    def __len__(self) -> int:
        return len(self.letters)


def word(alg: EventAlgebra, letters) -> Word:
    return Word(alg, tuple(letters))


def reverse_word(w: Word) -> Word:
    return Word(w.alg, w.letters[::-1])


def eval_tl(w: Word, pos: int, f: TLFormula, _memo=None) -> bool:
    """Satisfaction of ``f`` at position ``pos`` of ``w`` (0-based)."""
    if not 0 <= pos < len(w):
        raise IndexError(f"position {pos} out of range for a word of length {len(w)}")
    if _memo is None:
        _memo = {}

    def ev(t: int, g: TLFormula) -> bool:
        key = (t, g)
        hit = _memo.get(key)
        if hit is not None:
            return hit
        if isinstance(g, Atom):
            v = bool(w.letters[t] >> w.alg.index(g.name) & 1)
        elif isinstance(g, Const):
            v = g.value
        elif isinstance(g, Not):
            v = not ev(t, g.child)
        elif isinstance(g, And):
            v = ev(t, g.left) and ev(t, g.right)
        elif isinstance(g, Or):
            v = ev(t, g.left) or ev(t, g.right)
        elif isinstance(g, Implies):
            v = (not ev(t, g.left)) or ev(t, g.right)
        elif isinstance(g, Iff):
            v = ev(t, g.left) == ev(t, g.right)
        elif isinstance(g, Prev):
            v = t > 0 and ev(t - 1, g.child)
        elif isinstance(g, Since):
            v = any(ev(s, g.right) and all(ev(u, g.left) for u in range(s + 1, t + 1))
                    for s in range(t, -1, -1))
        else:
            raise TypeError(f"not a temporal formula: {g!r}")
        _memo[key] = v
        return v

    return ev(pos, f)


def value_at(w: Word, pos: int, c: CondObject, _memo=None) -> Value3:
    """Three-valued verdict of a conditional at a position of a word."""
    if _memo is None:
        _memo = {}
    if not eval_tl(w, pos, c.den, _memo):
        return Value3.UNDEF
    return Value3.from_bool(eval_tl(w, pos, c.num, _memo))


def eval_cond(w: Word, c: CondObject) -> Value3:
    """Verdict of a conditional at the last position of a word."""
    return value_at(w, len(w) - 1, c)


def cond_output(w: Word, c: CondObject) -> list[Value3]:
    """Verdicts over all nonempty prefixes of ``w`` (one per position)."""
    memo: dict = {}
    return [value_at(w, pos, c, memo) for pos in range(len(w))]
