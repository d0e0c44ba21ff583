"""The conditional event algebras as interpretations.

Present-tense algebras (SAC, GNW, Sch) reduce any expression to one simple
conditional and take a ratio of event probabilities.  The product-space
algebra is past-tense: an expression is translated to a temporal conditional
object by one of three interpretations

* ``first``   - each (a|b) becomes "the historically first defined value of
                (a|b) was 1", conditioned on true;
* ``reverse`` - each (a|b) becomes "the most recent defined value was 1"
                (not-b since a-and-b), conditioned on true;
* ``sparse``  - the reverse numerator, but conditioned on at least one
                argument being currently defined or never yet defined;

and its probability is the limiting probability of that conditional object's
Markov chain.  All three give the same number for every expression and every
distribution.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal, Optional

from . import markov, syntax, trivalue
from .automata import MooreMachine3, compile_cond, minimize, product
from .markov import ProbAssignment, asymptotic, chain_from_machine, pr_n_ratio
from .syntax import (And, CeaAnd, CeaCond, CeaExpr, CeaNeg, CeaOr, CeaSimple,
                     CeaVar, CondObject, EventAlgebra, Not, Or, Prev, Since,
                     TLFormula, TRUE, collect_simples)
from .trivalue import ConnectiveId, Value3, apply_binary, apply_unary

Algebra = Literal["sac", "gnw", "sch"]
Embedding = Literal["first", "reverse", "sparse"]

DEFAULT_VARIABLE_CAP = 8


# ---------------------------------------------------------------------------
# Present-tense algebras


@dataclass(frozen=True)
class SimpleConditional:
    """Normal form (yes | defined) of a present-tense conditional: the set of
    atoms where it is 1 and the set where it is defined."""

    alg: EventAlgebra
    yes_set: int
    def_set: int

    def __post_init__(self):
        if self.yes_set & ~self.def_set:
            raise ValueError("yes_set must be contained in def_set")

    def value_at(self, atom: int) -> Value3:
        if not self.def_set >> atom & 1:
            return Value3.UNDEF
        return Value3.from_bool(bool(self.yes_set >> atom & 1))


def _event_mask(f: TLFormula, alg: EventAlgebra) -> int:
    from .evaluate import Word, eval_tl
    mask = 0
    for atom in range(alg.num_atoms):
        if eval_tl(Word(alg, (atom,)), 0, f):
            mask |= 1 << atom
    return mask


def _value_of_simple(s: CeaSimple, alg: EventAlgebra, atom: int) -> Value3:
    from .evaluate import Word, eval_tl
    w = Word(alg, (atom,))
    if not eval_tl(w, 0, s.den_event):
        return Value3.UNDEF
    return Value3.from_bool(eval_tl(w, 0, s.num_event))


def reduce_present(e: CeaExpr, alg: EventAlgebra, which: Algebra) -> SimpleConditional:
    """Pointwise reduction of an expression to one simple conditional."""
    conns = trivalue.ALGEBRA_CONNECTIVES[which]

    def value(x: CeaExpr, atom: int) -> Value3:
        if isinstance(x, CeaSimple):
            return _value_of_simple(x, alg, atom)
        if isinstance(x, CeaNeg):
            return apply_unary(conns["not"], value(x.child, atom))
        if isinstance(x, CeaAnd):
            return apply_binary(conns["and"], value(x.left, atom), value(x.right, atom))
        if isinstance(x, CeaOr):
            return apply_binary(conns["or"], value(x.left, atom), value(x.right, atom))
        if isinstance(x, CeaCond):
            if "cond" not in conns:
                raise ValueError(
                    f"re-conditioning is not supported in the {which} algebra")
            return apply_binary(conns["cond"], value(x.left, atom), value(x.right, atom))
        if isinstance(x, CeaVar):
            raise ValueError(f"variable {x.name!r} has no event semantics")
        raise TypeError(f"not a conditional expression node: {x!r}")

    yes = defined = 0
    for atom in range(alg.num_atoms):
        v = value(e, atom)
        if v is Value3.TRUE:
            yes |= 1 << atom
        if v.is_defined:
            defined |= 1 << atom
    return SimpleConditional(alg, yes, defined)


def reduce_syntactic(e: CeaExpr, alg: EventAlgebra, which: Algebra) -> SimpleConditional:
    """Reduction by the rewriting rules on pairs of simple conditionals
    (cross-check for :func:`reduce_present`; and/or/~ only)."""

    def rec(x: CeaExpr) -> SimpleConditional:
        if isinstance(x, CeaSimple):
            den = _event_mask(x.den_event, alg)
            num = _event_mask(x.num_event, alg) & den
            return SimpleConditional(alg, num, den)
        if isinstance(x, CeaNeg):
            s = rec(x.child)
            return SimpleConditional(alg, s.def_set & ~s.yes_set, s.def_set)
        if isinstance(x, (CeaAnd, CeaOr)):
            l, r = rec(x.left), rec(x.right)
            y1, d1, y2, d2 = l.yes_set, l.def_set, r.yes_set, r.def_set
            z1, z2 = d1 & ~y1, d2 & ~y2
            if isinstance(x, CeaAnd):
                if which == "sac":
                    yes = (y1 & y2) | (y1 & ~d2) | (y2 & ~d1)
                    return SimpleConditional(alg, yes, d1 | d2)
                if which == "gnw":
                    return SimpleConditional(alg, y1 & y2, z1 | z2 | (y1 & y2))
                return SimpleConditional(alg, y1 & y2, d1 & d2)
            if which == "sac":
                return SimpleConditional(alg, y1 | y2, d1 | d2)
            if which == "gnw":
                return SimpleConditional(alg, y1 | y2, y1 | y2 | (d1 & d2))
            return SimpleConditional(alg, (y1 | y2) & d1 & d2, d1 & d2)
        raise ValueError("syntactic reduction handles and/or/~ only")

    return rec(e)


def prob_present(e: CeaExpr, p: ProbAssignment, which: Algebra) -> Optional[Fraction]:
    """Probability of 1 among defined atoms; None when never defined."""
    s = reduce_present(e, p.alg, which)
    den = p.of_event(s.def_set)
    if den == 0:
        return None
    return p.of_event(s.yes_set) / den


def simple_to_cond(s: SimpleConditional) -> CondObject:
    """View a present-tense simple conditional as a conditional object."""
    return CondObject(_mask_formula(s.yes_set, s.alg), _mask_formula(s.def_set, s.alg))


def _mask_formula(mask: int, alg: EventAlgebra) -> TLFormula:
    if mask == alg.full_event:
        return TRUE
    if mask == 0:
        return syntax.FALSE
    minterms = []
    for atom in range(alg.num_atoms):
        if not mask >> atom & 1:
            continue
        lits: list[TLFormula] = []
        for i, name in enumerate(alg.events):
            lit = syntax.Atom(name)
            lits.append(lit if atom >> i & 1 else Not(lit))
        term = lits[0]
        for lit in lits[1:]:
            term = And(term, lit)
        minterms.append(term)
    out = minterms[0]
    for term in minterms[1:]:
        out = Or(out, term)
    return out


# ---------------------------------------------------------------------------
# Product-space interpretations


def first_resolution(a: TLFormula, b: TLFormula) -> TLFormula:
    """True once (a|b) has resolved and its first defined value was 1:
    O(a and b and not Y O b)."""
    return syntax.once(And(And(a, b), Not(Prev(syntax.once(b)))))


def latest_resolution(a: TLFormula, b: TLFormula) -> TLFormula:
    """True when the most recent defined value of (a|b) was 1: !b S (a and b)."""
    return Since(Not(b), And(a, b))


def _require_flat(e: CeaExpr):
    if syntax.has_reconditioning(e):
        raise ValueError("the product-space algebra has no re-conditioning")
    if any(isinstance(x, CeaVar) for x in _walk_nodes(e)):
        raise ValueError("expression has variable leaves; events required")


def _walk_nodes(e: CeaExpr):
    yield e
    if isinstance(e, CeaNeg):
        yield from _walk_nodes(e.child)
    elif isinstance(e, (CeaAnd, CeaOr, CeaCond)):
        yield from _walk_nodes(e.left)
        yield from _walk_nodes(e.right)


def _map_leaves(e: CeaExpr, leaf: Callable[[CeaSimple], TLFormula]) -> TLFormula:
    if isinstance(e, CeaSimple):
        return leaf(e)
    if isinstance(e, CeaNeg):
        return Not(_map_leaves(e.child, leaf))
    if isinstance(e, CeaAnd):
        return And(_map_leaves(e.left, leaf), _map_leaves(e.right, leaf))
    if isinstance(e, CeaOr):
        return Or(_map_leaves(e.left, leaf), _map_leaves(e.right, leaf))
    raise TypeError(f"unexpected node in a flat expression: {e!r}")


def embed_ps(e: CeaExpr, which: Embedding) -> CondObject:
    """Translate a flat expression to a conditional object."""
    _require_flat(e)
    if which == "first":
        num = _map_leaves(e, lambda s: first_resolution(s.num_event, s.den_event))
        return CondObject(num, TRUE)
    if which == "reverse":
        num = _map_leaves(e, lambda s: latest_resolution(s.num_event, s.den_event))
        return CondObject(num, TRUE)
    if which == "sparse":
        num = _map_leaves(e, lambda s: latest_resolution(s.num_event, s.den_event))
        guards = [Or(s.den_event, Not(syntax.once(s.den_event)))
                  for s in collect_simples(e)]
        den = guards[0]
        for g in guards[1:]:
            den = Or(den, g)
        return CondObject(num, den)
    raise ValueError(f"unknown interpretation {which!r}")


def _classical_combiner(e: CeaExpr) -> Callable[[tuple[Value3, ...]], Value3]:
    """Two-valued evaluation of the expression skeleton over leaf outputs."""
    leaves = collect_simples(e)
    positions: dict[int, int] = {}
    counter = itertools.count()

    def build(x: CeaExpr):
        if isinstance(x, CeaSimple):
            i = next(counter)
            return lambda vals: vals[i] is Value3.TRUE
        if isinstance(x, CeaNeg):
            f = build(x.child)
            return lambda vals: not f(vals)
        if isinstance(x, CeaAnd):
            f, g = build(x.left), build(x.right)
            return lambda vals: f(vals) and g(vals)
        if isinstance(x, CeaOr):
            f, g = build(x.left), build(x.right)
            return lambda vals: f(vals) or g(vals)
        raise TypeError(f"unexpected node: {x!r}")

    fn = build(e)
    assert next(counter) == len(leaves)

    def combine(vals: tuple[Value3, ...]) -> Value3:
        return Value3.from_bool(fn(vals))

    return combine


def first_machine(e: CeaExpr, alg: EventAlgebra) -> MooreMachine3:
    """Product of the per-conditional first-resolution machines with the
    expression's classical combination as label (not yet minimized)."""
    _require_flat(e)
    parts = [minimize(compile_cond(
        CondObject(first_resolution(s.num_event, s.den_event), TRUE), alg))
        for s in collect_simples(e)]
    return product(parts, _classical_combiner(e))


def cond_asymptotic(c: CondObject, alg: EventAlgebra,
                    p: ProbAssignment) -> Optional[Fraction]:
    """Compile, minimize, weight and take the limit."""
    m = minimize(compile_cond(c, alg))
    return asymptotic(chain_from_machine(m, p))


def prob_ps(e: CeaExpr, p: ProbAssignment,
            which: Embedding = "first") -> Optional[Fraction]:
    """Product-space probability of a flat expression."""
    alg = p.alg
    if which == "first":
        m = minimize(first_machine(e, alg))
        return asymptotic(chain_from_machine(m, p))
    return cond_asymptotic(embed_ps(e, which), alg, p)


# ---------------------------------------------------------------------------
# Independence


def lift_defined(c: CondObject) -> CondObject:
    """The definedness indicator of a conditional: (denominator | true)."""
    return CondObject(c.den, TRUE)


def _sch_and_ratio(m1: MooreMachine3, m2: MooreMachine3, p: ProbAssignment,
                   n: Optional[int]) -> Optional[Fraction]:
    comb = product([m1, m2],
                   lambda vals: apply_binary(ConnectiveId.AND_SCH, *vals))
    ch = chain_from_machine(comb, p)
    return asymptotic(ch) if n is None else pr_n_ratio(ch, n)


def _ratio(m: MooreMachine3, p: ProbAssignment, n: Optional[int]) -> Optional[Fraction]:
    ch = chain_from_machine(m, p)
    return asymptotic(ch) if n is None else pr_n_ratio(ch, n)


def present_indep(c1: CondObject, c2: CondObject, p: ProbAssignment,
                  n: Optional[int] = None) -> tuple[bool, list[dict]]:
    """The four-equation independence test at time ``n`` (or in the limit).

    Each equation compares the conditional probability of a strict
    conjunction against the product of the factors' probabilities, with the
    definedness lift substituted for either or both sides; an equation with
    both sides undefined counts as satisfied.  Returns the verdict plus a
    per-equation report.
    """
    alg = p.alg
    u1, u2 = lift_defined(c1), lift_defined(c2)
    machines = {x: minimize(compile_cond(x, alg)) for x in (c1, c2, u1, u2)}
    singles = {x: _ratio(machines[x], p, n) for x in (c1, c2, u1, u2)}

    checks = []
    ok = True
    for tag, (x, y) in (("i1", (c1, c2)), ("i2", (c1, u2)),
                        ("i3", (u1, c2)), ("i4", (u1, u2))):
        lhs = _sch_and_ratio(machines[x], machines[y], p, n)
        fx, fy = singles[x], singles[y]
        rhs = None if fx is None or fy is None else fx * fy
        holds = lhs == rhs  # None == None covers the both-undefined convention
        checks.append({"eq": tag, "lhs": lhs, "rhs": rhs, "holds": holds})
        ok = ok and holds
    return ok, checks


def strong_indep(c1: CondObject, c2: CondObject,
                 p: ProbAssignment) -> tuple[bool, Optional[str]]:
    """Whether the two conditionals are projections of stochastically
    independent chains: the minimal machines' joint chain must factorize
    at the start and at every positively reachable state pair."""
    alg = p.alg
    m1 = minimize(compile_cond(c1, alg))
    m2 = minimize(compile_cond(c2, alg))

    masks = [a & b for a in m1.classes for b in m2.classes if a & b]
    mass = []
    loc1 = []
    loc2 = []
    for mk in masks:
        rep = (mk & -mk).bit_length() - 1
        mass.append(p.of_event(mk))
        loc1.append(m1.class_of_atom[rep])
        loc2.append(m2.class_of_atom[rep])

    def row1(q):
        out = {}
        for c, w in enumerate(mass):
            if w:
                t = m1.delta[q][loc1[c]]
                out[t] = out.get(t, markov.ZERO) + w
        return out

    def row2(q):
        out = {}
        for c, w in enumerate(mass):
            if w:
                t = m2.delta[q][loc2[c]]
                out[t] = out.get(t, markov.ZERO) + w
        return out

    def row_joint(q1, q2):
        out = {}
        for c, w in enumerate(mass):
            if w:
                key = (m1.delta[q1][loc1[c]], m2.delta[q2][loc2[c]])
                out[key] = out.get(key, markov.ZERO) + w
        return out

    def factorizes(joint, marg1, marg2, where) -> Optional[str]:
        for t1 in marg1:
            for t2 in marg2:
                if joint.get((t1, t2), markov.ZERO) != marg1[t1] * marg2[t2]:
                    return (f"{where}: joint mass of pair ({t1},{t2}) is "
                            f"{joint.get((t1, t2), markov.ZERO)}, product is "
                            f"{marg1[t1] * marg2[t2]}")
        return None

    init_joint = row_joint(m1.initial, m2.initial)
    witness = factorizes(init_joint, row1(m1.initial), row2(m2.initial), "start")
    if witness:
        return False, witness

    seen = set(init_joint)
    todo = list(init_joint)
    while todo:
        q1, q2 = todo.pop()
        joint = row_joint(q1, q2)
        witness = factorizes(joint, row1(q1), row2(q2), f"pair ({q1},{q2})")
        if witness:
            return False, witness
        for pair in joint:
            if pair not in seen:
                seen.add(pair)
                todo.append(pair)
    return True, None


# ---------------------------------------------------------------------------
# Weak tautologies


def weak_tautology(e: CeaExpr, which: Algebra, dialect: str = "full",
                   variable_cap: int = DEFAULT_VARIABLE_CAP
                   ) -> tuple[bool, Optional[dict[str, Value3]]]:
    """Exhaustively check that no valuation makes the expression false.

    Returns (True, None) or (False, counterexample valuation).
    """
    if which not in ("sac", "gnw"):
        raise ValueError("tautology checking targets the sac and gnw algebras")
    syntax._check_dialect(e, dialect)
    names = sorted({x.name for x in _walk_nodes(e) if isinstance(x, CeaVar)})
    if len(names) > variable_cap:
        raise ValueError(f"{len(names)} variables exceed the cap {variable_cap}")
    for combo in itertools.product(
            (Value3.FALSE, Value3.TRUE, Value3.UNDEF), repeat=len(names)):
        valuation = dict(zip(names, combo))
        if trivalue.eval_cea_valuation(e, valuation, which) is Value3.FALSE:
            return False, valuation
    return True, None
