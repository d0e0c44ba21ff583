"""Exact probabilities: distributions over atoms, chains from machines, and
time-indexed / limiting probabilities by rational linear algebra.

Everything is a ``fractions.Fraction``; no floating point enters any result.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .automata import MooreMachine3
from .syntax import EventAlgebra, TLFormula, algebra
from .trivalue import Value3

ZERO = Fraction(0)
ONE = Fraction(1)


class PeriodicChainError(RuntimeError):
    """A reachable closed class is periodic: the limit may not exist."""


class SingularMatrixError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Distributions over atoms


@dataclass(frozen=True)
class ProbAssignment:
    """An exact probability distribution on the atoms of an event algebra."""

    alg: EventAlgebra
    mass: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.mass) != self.alg.num_atoms:
            raise ValueError("one mass per atom required")
        if any(m < 0 for m in self.mass):
            raise ValueError("negative mass")
        if sum(self.mass) != 1:
            raise ValueError("masses must sum to exactly 1")

    def of_event(self, mask: int) -> Fraction:
        """Probability of a set of atoms (bitmask over atom indices)."""
        total = ZERO
        rest = mask
        while rest:
            low = rest & -rest
            total += self.mass[low.bit_length() - 1]
            rest ^= low
        return total

    def of_formula(self, f: TLFormula) -> Fraction:
        from .evaluate import Word, eval_tl
        total = ZERO
        for atom in range(self.alg.num_atoms):
            if self.mass[atom] and eval_tl(Word(self.alg, (atom,)), 0, f):
                total += self.mass[atom]
        return total

    @staticmethod
    def independent(alg: EventAlgebra, probs: dict[str, Fraction]) -> "ProbAssignment":
        """Product distribution from one marginal per basic event."""
        missing = set(alg.events) - set(probs)
        if missing:
            raise ValueError(f"missing marginals for: {sorted(missing)}")
        unknown = set(probs) - set(alg.events)
        if unknown:
            raise ValueError(f"marginals for unknown events: {sorted(unknown)}")
        mass = []
        for atom in range(alg.num_atoms):
            m = ONE
            for i, name in enumerate(alg.events):
                p = Fraction(probs[name])
                m *= p if atom >> i & 1 else 1 - p
            mass.append(m)
        return ProbAssignment(alg, tuple(mass))

    @staticmethod
    def uniform(alg: EventAlgebra) -> "ProbAssignment":
        share = Fraction(1, alg.num_atoms)
        return ProbAssignment(alg, (share,) * alg.num_atoms)

    @staticmethod
    def from_text(text: str) -> "ProbAssignment":
        """Parse the line-oriented distribution format.

        ``events: a b c`` then either one ``atom {a c}: 3/8`` line per atom
        (all 2^n atoms, masses summing to 1) or a single
        ``independent: a=1/2 b=1/3`` line.
        """
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or not lines[0].startswith("events:"):
            raise ValueError("distribution file must start with 'events: ...'")
        alg_ = algebra(lines[0][len("events:"):].strip())
        body = lines[1:]
        if len(body) == 1 and body[0].startswith("independent:"):
            probs = {}
            for item in body[0][len("independent:"):].split():
                name, _, value = item.partition("=")
                if not value:
                    raise ValueError(f"malformed marginal {item!r}")
                probs[name] = Fraction(value)
            return ProbAssignment.independent(alg_, probs)
        mass = [None] * alg_.num_atoms
        pat = re.compile(r"atom\s*\{([^}]*)\}\s*:\s*(\S+)$")
        for ln in body:
            m = pat.fullmatch(ln)
            if not m:
                raise ValueError(f"malformed distribution line: {ln!r}")
            atom = 0
            for name in m.group(1).split():
                atom |= 1 << alg_.index(name)
            if mass[atom] is not None:
                raise ValueError(f"atom {alg_.atom_text(atom)} listed twice")
            mass[atom] = Fraction(m.group(2))
        absent = [alg_.atom_text(a) for a, v in enumerate(mass) if v is None]
        if absent:
            raise ValueError(f"atoms not covered: {' '.join(absent)}")
        return ProbAssignment(alg_, tuple(mass))


# ---------------------------------------------------------------------------
# Chains


@dataclass(frozen=True)
class MarkovChain3:
    """Stochastic matrix with an initial distribution and three-valued labels.

    State k of the chain is the machine state reached after k+1 input
    letters: the first transition is folded into the initial distribution,
    matching the convention that a machine emits nothing in its start state.
    """

    init: tuple[Fraction, ...]
    trans: tuple[tuple[Fraction, ...], ...]
    labels: tuple[Value3, ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(self.init) != n or len(self.trans) != n:
            raise ValueError("inconsistent chain dimensions")
        if sum(self.init) != 1:
            raise ValueError("initial distribution must sum to 1")
        for row in self.trans:
            if len(row) != n or sum(row) != 1:
                raise ValueError("every transition row must sum to exactly 1")

    @property
    def n_states(self) -> int:
        return len(self.labels)


def chain_from_machine(m: MooreMachine3, p: ProbAssignment) -> MarkovChain3:
    if m.alg.events != p.alg.events:
        raise ValueError("machine and distribution use different event algebras")
    class_mass = [ZERO] * len(m.classes)
    for atom in range(m.alg.num_atoms):
        w = p.mass[atom]
        if w:
            class_mass[m.class_of_atom[atom]] += w
    n = m.n_states
    rows = []
    for q in range(n):
        row = [ZERO] * n
        for c, t in enumerate(m.delta[q]):
            if class_mass[c]:
                row[t] += class_mass[c]
        rows.append(tuple(row))
    init = [ZERO] * n
    for c, t in enumerate(m.delta[m.initial]):
        if class_mass[c]:
            init[t] += class_mass[c]
    return MarkovChain3(tuple(init), tuple(rows), tuple(m.labels))


def _step(dist: Sequence[Fraction], trans) -> list[Fraction]:
    n = len(dist)
    out = [ZERO] * n
    for i, w in enumerate(dist):
        if w:
            row = trans[i]
            for j in range(n):
                if row[j]:
                    out[j] += w * row[j]
    return out


def pr_n(ch: MarkovChain3, n: int) -> tuple[Fraction, Fraction, Fraction]:
    """Probability that the value at time n is 1 / 0 / undefined (n >= 1)."""
    if n < 1:
        raise ValueError("time index starts at 1")
    dist = list(ch.init)
    for _ in range(n - 1):
        dist = _step(dist, ch.trans)
    buckets = {Value3.TRUE: ZERO, Value3.FALSE: ZERO, Value3.UNDEF: ZERO}
    for w, lab in zip(dist, ch.labels):
        buckets[lab] += w
    return buckets[Value3.TRUE], buckets[Value3.FALSE], buckets[Value3.UNDEF]


def pr_n_ratio(ch: MarkovChain3, n: int) -> Optional[Fraction]:
    """Conditional probability of 1 among defined values at time n; None
    when the value is undefined almost surely."""
    p1, p0, _ = pr_n(ch, n)
    if p1 + p0 == 0:
        return None
    return p1 / (p1 + p0)


# ---------------------------------------------------------------------------
# Exact linear algebra


def solve_linear(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    """Solve A X = B exactly by Gaussian elimination with exact pivoting."""
    n = len(a)
    m = [list(map(Fraction, row_a)) + list(map(Fraction, row_b))
         for row_a, row_b in zip(a, b)]
    width = len(m[0]) if m else 0
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
        inv = ONE / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                row, prow = m[r], m[col]
                for c in range(col, width):
                    if prow[c]:
                        row[c] -= factor * prow[c]
    return [row[n:] for row in m]


def absorbing_solve(q_block: list[list[Fraction]],
                    r_block: list[list[Fraction]]) -> list[list[Fraction]]:
    """Absorption probabilities B = (Id - Q)^-1 R for an absorbing chain
    split into a transient block Q and a transient-to-absorbing block R."""
    n = len(q_block)
    if any(len(row) != n for row in q_block) or len(r_block) != n:
        raise ValueError("Q must be square with one R row per transient state")
    id_minus_q = [[(ONE if i == j else ZERO) - q_block[i][j] for j in range(n)]
                  for i in range(n)]
    return solve_linear(id_minus_q, [list(row) for row in r_block])


# ---------------------------------------------------------------------------
# Limiting behavior


def _sccs(n: int, adj: list[list[int]]) -> list[list[int]]:
    """Strongly connected components (iterative Tarjan), in discovery order."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for k in range(pi, len(adj[v])):
                w = adj[v][k]
                if index[w] == -1:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def _class_period(members: list[int], adj_in_class: dict[int, list[int]]) -> int:
    """gcd of cycle lengths of a strongly connected graph."""
    start = members[0]
    level = {start: 0}
    queue = [start]
    g = 0
    i = 0
    while i < len(queue):
        u = queue[i]
        i += 1
        for v in adj_in_class[u]:
            if v not in level:
                level[v] = level[u] + 1
                queue.append(v)
            else:
                g = gcd(g, level[u] + 1 - level[v])
    return abs(g)


def stationary_distribution(trans: Sequence[Sequence[Fraction]],
                            members: list[int]) -> dict[int, Fraction]:
    """Stationary law of an irreducible closed class (pi P = pi, sum = 1)."""
    k = len(members)
    pos = {s: i for i, s in enumerate(members)}
    # (P^T - Id) pi = 0 with the last equation replaced by sum(pi) = 1
    a = [[trans[members[j]][members[i]] - (ONE if i == j else ZERO)
          for j in range(k)] for i in range(k)]
    a[k - 1] = [ONE] * k
    b = [[ZERO] for _ in range(k - 1)] + [[ONE]]
    x = solve_linear(a, b)
    return {s: x[pos[s]][0] for s in members}


def limiting_label_masses(ch: MarkovChain3) -> dict[Value3, Fraction]:
    """Limit of the state distribution, aggregated by label.

    Transient mass vanishes; each reachable closed class is required to be
    aperiodic (otherwise the limit may not exist and the call fails loudly).
    """
    n = ch.n_states
    adj = [[j for j in range(n) if ch.trans[i][j] > 0] for i in range(n)]
    sccs = _sccs(n, adj)
    comp_of = [0] * n
    for ci, comp in enumerate(sccs):
        for s in comp:
            comp_of[s] = ci
    closed = []
    for ci, comp in enumerate(sccs):
        members = set(comp)
        if all(t in members for s in comp for t in adj[s]):
            closed.append(ci)
    closed_set = set(closed)
    transient = [s for s in range(n) if comp_of[s] not in closed_set]

    # absorption probability per closed class
    absorb = {ci: ZERO for ci in closed}
    for s in range(n):
        if ch.init[s] and comp_of[s] in closed_set:
            absorb[comp_of[s]] += ch.init[s]
    if any(ch.init[s] for s in transient):
        tpos = {s: i for i, s in enumerate(transient)}
        q_block = [[ch.trans[s][t] for t in transient] for s in transient]
        r_block = [[sum((ch.trans[s][t] for t in range(n)
                         if comp_of[t] == ci), ZERO) for ci in closed]
                   for s in transient]
        b = absorbing_solve(q_block, r_block)
        for s in transient:
            if ch.init[s]:
                for k, ci in enumerate(closed):
                    absorb[ci] += ch.init[s] * b[tpos[s]][k]

    masses = {Value3.TRUE: ZERO, Value3.FALSE: ZERO, Value3.UNDEF: ZERO}
    for ci in closed:
        if absorb[ci] == 0:
            continue
        comp = sccs[ci]
        inside = {s: [t for t in adj[s] if comp_of[t] == ci] for s in comp}
        if _class_period(comp, inside) != 1:
            raise PeriodicChainError(
                "a reachable closed class is periodic; the limit may not exist")
        pi = stationary_distribution(ch.trans, comp)
        for s in comp:
            masses[ch.labels[s]] += absorb[ci] * pi[s]
    return masses


def asymptotic(ch: MarkovChain3) -> Optional[Fraction]:
    """Exact limit of ``pr_n_ratio``; None when the defined mass vanishes."""
    masses = limiting_label_masses(ch)
    defined = masses[Value3.TRUE] + masses[Value3.FALSE]
    if defined == 0:
        return None
    return masses[Value3.TRUE] / defined
