"""Deterministic three-valued Moore machines compiled from conditionals.

A machine reads atoms of an event algebra and emits the label of the state
reached after every letter; the initial state's label is never emitted.
Transitions are stored per *letter class*: atoms that every state treats
identically share one class, which keeps products of many small machines far
below the raw ``states x atoms`` table size.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .syntax import (And, Atom, CondObject, Const, EventAlgebra, Iff, Implies,
                     Not, Or, Prev, Since, TLFormula)
from .trivalue import Value3


class MonoidSizeError(RuntimeError):
    """The transition monoid grew past the configured cap."""


@dataclass
class MooreMachine3:
    alg: EventAlgebra
    initial: int
    labels: list[Value3]          # state -> emitted value
    delta: list[list[int]]        # state -> class index -> state
    classes: list[int]            # class index -> atom bitmask
    class_of_atom: list[int]      # atom -> class index

    @property
    def n_states(self) -> int:
        return len(self.labels)

    def step(self, state: int, atom: int) -> int:
        return self.delta[state][self.class_of_atom[atom]]

    def run(self, letters: Iterable[int]) -> list[Value3]:
        """Output sequence on a word (one value per letter)."""
        q = self.initial
        out = []
        for a in letters:
            q = self.step(q, a)
            out.append(self.labels[q])
        return out

    @property
    def initial_is_entered(self) -> bool:
        return any(t == self.initial for row in self.delta for t in row)

    def validate(self) -> None:
        n = self.n_states
        assert 0 <= self.initial < n
        assert len(self.delta) == n
        assert all(len(row) == len(self.classes) for row in self.delta)
        assert all(0 <= t < n for row in self.delta for t in row)
        covered = 0
        for mask in self.classes:
            assert mask and covered & mask == 0, "classes must partition the atoms"
            covered |= mask
        assert covered == self.alg.full_event
        assert len(self.class_of_atom) == self.alg.num_atoms
        for atom in range(self.alg.num_atoms):
            assert self.classes[self.class_of_atom[atom]] >> atom & 1

    @staticmethod
    def from_atom_table(alg: EventAlgebra, labels: Sequence[Value3],
                        delta_by_atom: Sequence[Sequence[int]],
                        initial: int) -> "MooreMachine3":
        """Build a machine from a full state x atom transition table."""
        classes, class_of_atom = _classes_from_columns(
            alg.num_atoms, lambda atom: tuple(row[atom] for row in delta_by_atom))
        reps = [_lowest_atom(mask) for mask in classes]
        delta = [[row[rep] for rep in reps] for row in delta_by_atom]
        m = MooreMachine3(alg, initial, list(labels), delta, classes, class_of_atom)
        m.validate()
        return m


def _lowest_atom(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _classes_from_columns(num_atoms: int, column_key) -> tuple[list[int], list[int]]:
    """Group atoms whose key agrees; returns (class masks, atom -> class)."""
    by_key: dict = {}
    order: list = []
    for atom in range(num_atoms):
        key = column_key(atom)
        if key not in by_key:
            by_key[key] = len(order)
            order.append(0)
        order[by_key[key]] |= 1 << atom
    masks = sorted(order, key=_lowest_atom)
    class_of_atom = [0] * num_atoms
    for idx, mask in enumerate(masks):
        rest = mask
        while rest:
            low = rest & -rest
            class_of_atom[low.bit_length() - 1] = idx
            rest ^= low
    return masks, class_of_atom


# ---------------------------------------------------------------------------
# Compilation
#
# A state is the vector of truth values of all subformulas of the numerator
# and denominator at the current position.  Each past-time subformula's new
# value is local: Y f takes f's previous value, f S g takes g's current value
# or (f's current value and the previous value of f S g).  The start state is
# the all-false vector, which encodes exactly the position-zero clauses
# (no predecessor for Y, no earlier witness for S).


def _subformulas(forms: Sequence[TLFormula]) -> list[TLFormula]:
    index: dict[TLFormula, int] = {}
    out: list[TLFormula] = []

    def walk(f: TLFormula):
        if f in index:
            return
        if isinstance(f, (Not, Prev)):
            walk(f.child)
        elif isinstance(f, (And, Or, Implies, Iff, Since)):
            walk(f.left)
            walk(f.right)
        elif not isinstance(f, (Atom, Const)):
            raise TypeError(f"not a temporal formula: {f!r}")
        index[f] = len(out)
        out.append(f)

    for f in forms:
        walk(f)
    return out


def compile_cond(c: CondObject, alg: EventAlgebra) -> MooreMachine3:
    """Compile a conditional object into a Moore machine computing it."""
    subs = _subformulas([c.num, c.den])
    index = {f: i for i, f in enumerate(subs)}

    # One update opcode per subformula, evaluated in topological order.
    ops = []
    for f in subs:
        if isinstance(f, Atom):
            ops.append(("atom", alg.index(f.name), 0))
        elif isinstance(f, Const):
            ops.append(("const", f.value, 0))
        elif isinstance(f, Not):
            ops.append(("not", index[f.child], 0))
        elif isinstance(f, And):
            ops.append(("and", index[f.left], index[f.right]))
        elif isinstance(f, Or):
            ops.append(("or", index[f.left], index[f.right]))
        elif isinstance(f, Implies):
            ops.append(("imp", index[f.left], index[f.right]))
        elif isinstance(f, Iff):
            ops.append(("iff", index[f.left], index[f.right]))
        elif isinstance(f, Prev):
            ops.append(("prev", index[f.child], 0))
        else:  # Since
            ops.append(("since", index[f.left], index[f.right]))

    support = [alg.index(name) for name in
               sorted({f.name for f in subs if isinstance(f, Atom)},
                      key=alg.index)]
    classes, class_of_atom = _classes_from_columns(
        alg.num_atoms,
        lambda atom: tuple(atom >> b & 1 for b in support))
    reps = [_lowest_atom(mask) for mask in classes]

    num_idx, den_idx = index[c.num], index[c.den]
    nsubs = len(subs)

    def advance(vec: tuple, atom: int) -> tuple:
        new = [False] * nsubs
        for i, (kind, a, b) in enumerate(ops):
            if kind == "atom":
                v = bool(atom >> a & 1)
            elif kind == "const":
                v = a
            elif kind == "not":
                v = not new[a]
            elif kind == "and":
                v = new[a] and new[b]
            elif kind == "or":
                v = new[a] or new[b]
            elif kind == "imp":
                v = (not new[a]) or new[b]
            elif kind == "iff":
                v = new[a] == new[b]
            elif kind == "prev":
                v = vec[a]
            else:  # since
                v = new[b] or (new[a] and vec[i])
            new[i] = v
        return tuple(new)

    def label_of(vec: tuple) -> Value3:
        if not vec[den_idx]:
            return Value3.UNDEF
        return Value3.from_bool(vec[num_idx])

    start = (False,) * nsubs
    state_ids = {start: 0}
    vectors = [start]
    delta: list[list[int]] = []
    frontier = [start]
    while frontier:
        next_frontier = []
        for vec in frontier:
            row = []
            for rep in reps:
                nxt = advance(vec, rep)
                tid = state_ids.get(nxt)
                if tid is None:
                    tid = len(vectors)
                    state_ids[nxt] = tid
                    vectors.append(nxt)
                    next_frontier.append(nxt)
                row.append(tid)
            delta.append(row)
        frontier = next_frontier

    labels = [label_of(vec) for vec in vectors]
    m = MooreMachine3(alg, 0, labels, delta, classes, class_of_atom)
    return _renumber_canonical(m)


# ---------------------------------------------------------------------------
# Product


def product(ms: Sequence[MooreMachine3],
            combine: Callable[[tuple[Value3, ...]], Value3]) -> MooreMachine3:
    """Coordinate-wise product; labels are ``combine`` of component labels."""
    if not ms:
        raise ValueError("product of zero machines")
    alg = ms[0].alg
    for m in ms[1:]:
        if m.alg.events != alg.events:
            raise ValueError("product requires machines over one alphabet")

    masks = list(ms[0].classes)
    for m in ms[1:]:
        masks = [a & b for a in masks for b in m.classes if a & b]
    masks.sort(key=_lowest_atom)
    reps = [_lowest_atom(mask) for mask in masks]
    class_of_atom = [0] * alg.num_atoms
    for idx, mask in enumerate(masks):
        rest = mask
        while rest:
            low = rest & -rest
            class_of_atom[low.bit_length() - 1] = idx
            rest ^= low
    # per machine: joint class -> its own class index
    local = [[m.class_of_atom[rep] for rep in reps] for m in ms]

    start = tuple(m.initial for m in ms)
    state_ids = {start: 0}
    tuples = [start]
    delta: list[list[int]] = []
    frontier = [start]
    deltas = [m.delta for m in ms]
    k = len(ms)
    while frontier:
        next_frontier = []
        for tup in frontier:
            row = []
            for jc in range(len(masks)):
                nxt = tuple(deltas[i][tup[i]][local[i][jc]] for i in range(k))
                tid = state_ids.get(nxt)
                if tid is None:
                    tid = len(tuples)
                    state_ids[nxt] = tid
                    tuples.append(nxt)
                    next_frontier.append(nxt)
                row.append(tid)
            delta.append(row)
        frontier = next_frontier

    labels = [combine(tuple(ms[i].labels[tup[i]] for i in range(k)))
              for tup in tuples]
    for v in labels:
        if not isinstance(v, Value3):
            raise ValueError("combine must return a truth value")
    return MooreMachine3(alg, 0, labels, delta, masks, class_of_atom)


# ---------------------------------------------------------------------------
# Minimization
#
# States are merged when they emit identical output sequences on every word
# *and* carry the same label, since an entered state's label is emitted on
# arrival.  The one exception is an initial state that no transition enters:
# its label is never emitted, so it may be folded into any state with the
# same successor behavior.


def minimize(m: MooreMachine3) -> MooreMachine3:
    n = m.n_states
    entered = m.initial_is_entered
    states = list(range(n))
    consider = states if entered else [q for q in states if q != m.initial]

    block: dict[int, int] = {}
    label_ids: dict[Value3, int] = {}
    for q in consider:
        block[q] = label_ids.setdefault(m.labels[q], len(label_ids))
    n_blocks = len(label_ids)

    while True:
        sig_ids: dict = {}
        new_block: dict[int, int] = {}
        for q in consider:
            sig = (block[q], tuple(block[t] for t in m.delta[q]))
            new_block[q] = sig_ids.setdefault(sig, len(sig_ids))
        if len(sig_ids) == n_blocks:
            block = new_block
            break
        block = new_block
        n_blocks = len(sig_ids)

    reps: list[int] = [-1] * n_blocks
    for q in consider:
        if reps[block[q]] == -1:
            reps[block[q]] = q

    if entered:
        initial_block = block[m.initial]
    else:
        want = tuple(block[t] for t in m.delta[m.initial])
        match = next((b for b in range(n_blocks)
                      if tuple(block[t] for t in m.delta[reps[b]]) == want), None)
        if match is not None:
            initial_block = match
        else:
            # keep the start state; its (never emitted) label is preserved
            block[m.initial] = n_blocks
            reps.append(m.initial)
            initial_block = n_blocks
            n_blocks += 1

    labels = [m.labels[reps[b]] for b in range(n_blocks)]
    delta = [[block[t] for t in m.delta[reps[b]]] for b in range(n_blocks)]

    out = MooreMachine3(m.alg, initial_block, labels, delta,
                        list(m.classes), list(m.class_of_atom))
    out = _prune_reachable(out)
    out = _compress_classes(out)
    return _renumber_canonical(out)


def _prune_reachable(m: MooreMachine3) -> MooreMachine3:
    seen = {m.initial}
    todo = [m.initial]
    while todo:
        q = todo.pop()
        for t in m.delta[q]:
            if t not in seen:
                seen.add(t)
                todo.append(t)
    if len(seen) == m.n_states:
        return m
    order = sorted(seen)
    remap = {q: i for i, q in enumerate(order)}
    return MooreMachine3(m.alg, remap[m.initial],
                         [m.labels[q] for q in order],
                         [[remap[t] for t in m.delta[q]] for q in order],
                         list(m.classes), list(m.class_of_atom))


def _compress_classes(m: MooreMachine3) -> MooreMachine3:
    merged: dict[tuple, int] = {}
    masks: list[int] = []
    for c in range(len(m.classes)):
        col = tuple(m.delta[q][c] for q in range(m.n_states))
        idx = merged.get(col)
        if idx is None:
            merged[col] = len(masks)
            masks.append(m.classes[c])
        else:
            masks[idx] |= m.classes[c]
    pairs = sorted(zip(masks, merged.keys()), key=lambda p: _lowest_atom(p[0]))
    masks = [p[0] for p in pairs]
    cols = [p[1] for p in pairs]
    class_of_atom = [0] * m.alg.num_atoms
    for idx, mask in enumerate(masks):
        rest = mask
        while rest:
            low = rest & -rest
            class_of_atom[low.bit_length() - 1] = idx
            rest ^= low
    delta = [[cols[c][q] for c in range(len(masks))] for q in range(m.n_states)]
    return MooreMachine3(m.alg, m.initial, list(m.labels), delta, masks,
                         class_of_atom)


def _renumber_canonical(m: MooreMachine3) -> MooreMachine3:
    """Breadth-first renumbering (class order) for deterministic output."""
    order = [m.initial]
    seen = {m.initial}
    i = 0
    while i < len(order):
        for t in m.delta[order[i]]:
            if t not in seen:
                seen.add(t)
                order.append(t)
        i += 1
    remap = {q: i for i, q in enumerate(order)}
    out = MooreMachine3(m.alg, 0,
                        [m.labels[q] for q in order],
                        [[remap[t] for t in m.delta[q]] for q in order],
                        list(m.classes), list(m.class_of_atom))
    out.validate()
    return out


def canonical_key(m: MooreMachine3):
    """A machine invariant: equal keys = isomorphic machines (the label of a
    never-entered initial state is ignored)."""
    num_atoms = m.alg.num_atoms
    order = [m.initial]
    seen = {m.initial}
    i = 0
    while i < len(order):
        q = order[i]
        for atom in range(num_atoms):
            t = m.step(q, atom)
            if t not in seen:
                seen.add(t)
                order.append(t)
        i += 1
    remap = {q: i for i, q in enumerate(order)}
    labels = [m.labels[q] for q in order]
    if not m.initial_is_entered:
        labels[0] = None
    delta = tuple(tuple(remap[m.step(q, atom)] for atom in range(num_atoms))
                  for q in order)
    return len(order), tuple(labels), delta


def isomorphic(m1: MooreMachine3, m2: MooreMachine3) -> bool:
    if m1.alg.events != m2.alg.events:
        return False
    return canonical_key(m1) == canonical_key(m2)


# ---------------------------------------------------------------------------
# Counter-freeness
#
# A machine has a counter when some word cyclically permutes s > 1 distinct
# states.  Equivalently the transition monoid is aperiodic: every element t
# satisfies t^k = t^(k+1) for some k <= number of states.


def is_counter_free(m: MooreMachine3, monoid_cap: int = 100_000) -> bool:
    n = m.n_states
    gens = {tuple(m.delta[q][c] for q in range(n)) for c in range(len(m.classes))}
    monoid = set(gens)
    frontier = list(gens)
    while frontier:
        if len(monoid) > monoid_cap:
            raise MonoidSizeError(
                f"transition monoid exceeded {monoid_cap} elements")
        nxt = []
        for t in frontier:
            for g in gens:
                comp = tuple(t[g[q]] for q in range(n))
                if comp not in monoid:
                    monoid.add(comp)
                    nxt.append(comp)
        frontier = nxt

    for t in monoid:
        cur = t
        for _ in range(n):
            nxt = tuple(cur[t[q]] for q in range(n))
            if nxt == cur:
                break
            cur = nxt
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# DOT export


def _implicant_text(bits: dict[int, bool], alg: EventAlgebra) -> str:
    if not bits:
        return "true"
    parts = []
    for i in sorted(bits):
        parts.append(alg.events[i] if bits[i] else "!" + alg.events[i])
    return "&".join(parts)


def event_text(mask: int, alg: EventAlgebra) -> str:
    """Readable boolean description of an atom set (greedy implicant cover)."""
    if mask == alg.full_event:
        return "true"
    if mask == 0:
        return "false"
    nev = len(alg.events)
    # merge step of the classic minimization: terms are (fixed-bit dict)
    terms = [frozenset((i, bool(atom >> i & 1)) for i in range(nev))
             for atom in range(alg.num_atoms) if mask >> atom & 1]
    primes: list[frozenset] = []
    current = set(terms)
    while current:
        merged = set()
        used = set()
        lst = sorted(current, key=sorted)
        for i, t1 in enumerate(lst):
            for t2 in lst[i + 1:]:
                diff = t1 ^ t2
                if len(diff) == 2 and len({lit[0] for lit in diff}) == 1:
                    merged.add(t1 & t2)
                    used.add(t1)
                    used.add(t2)
        primes.extend(t for t in lst if t not in used)
        current = merged

    def covers(term: frozenset, atom: int) -> bool:
        return all((atom >> i & 1) == int(v) for i, v in term)

    remaining = {atom for atom in range(alg.num_atoms) if mask >> atom & 1}
    chosen = []
    for term in sorted(primes, key=lambda t: (len(t), sorted(t))):
        hit = {a for a in remaining if covers(term, a)}
        if hit:
            chosen.append(term)
            remaining -= hit
        if not remaining:
            break
    return " | ".join(_implicant_text(dict(t), alg) for t in chosen)


def to_dot(m: MooreMachine3, name: str = "machine") -> str:
    """GraphViz text; parallel edges between two states are merged and the
    merged edge is labeled by the union of their letters."""
    lines = [f'digraph "{name}" {{', "  rankdir=LR;",
             '  __start [shape=point, label=""];']
    for q in range(m.n_states):
        lines.append(f'  q{q} [shape=circle, label="{m.labels[q].symbol}"];')
    lines.append(f"  __start -> q{m.initial};")
    for q in range(m.n_states):
        by_target: dict[int, int] = {}
        for c, t in enumerate(m.delta[q]):
            by_target[t] = by_target.get(t, 0) | m.classes[c]
        for t in sorted(by_target):
            label = event_text(by_target[t], m.alg).replace('"', r'\"')
            lines.append(f'  q{q} -> q{t} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines)
