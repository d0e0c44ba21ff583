"""Shared test helper: exhaustive machine-vs-clause-semantics comparison."""
from tlcond import CondObject, MooreMachine3
from tlcond.oracle import TraceEval
from tlcond.syntax import EventAlgebra


def outputs_match_everywhere(m: MooreMachine3, c: CondObject,
                             alg: EventAlgebra, max_len: int) -> bool:
    """Compare the machine's emitted label with the clause-level verdict on
    every word of length <= max_len (one shared prefix walk)."""
    tr = TraceEval([c.num, c.den], alg)
    atoms = range(alg.num_atoms)

    def walk(state: int, depth: int) -> bool:
        for atom in atoms:
            tr.push(atom)
            nxt = m.step(state, atom)
            if m.labels[nxt] is not tr.value(c):
                return False
            if depth + 1 < max_len and not walk(nxt, depth + 1):
                return False
            tr.pop()
        return True

    return walk(m.initial, 0)
