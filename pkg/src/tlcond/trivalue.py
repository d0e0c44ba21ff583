"""Three-valued kernel: truth values and the present-tense connective tables.

The logic has three truth values: false (0), true (1) and undefined (⊥).
Connectives come in families named after the algebras they belong to
(SAC = Schay/Adams/Calabrese, GNW = Goodman/Nguyen/Walker, Sch = Schay's
strict pair), plus the two re-conditioning operators and the auxiliary
``sqcap`` connective definable inside SAC.
"""
from __future__ import annotations

import enum
from typing import Mapping


class Value3(enum.Enum):
    """A truth value of the three-valued logic."""

    FALSE = 0
    TRUE = 1
    UNDEF = 2

    @property
    def symbol(self) -> str:
        return ("0", "1", "⊥")[self.value]

    def __str__(self) -> str:
        return self.symbol

    @staticmethod
    def from_bool(b: bool) -> "Value3":
        return Value3.TRUE if b else Value3.FALSE

    @property
    def is_defined(self) -> bool:
        return self is not Value3.UNDEF


FALSE3 = Value3.FALSE
TRUE3 = Value3.TRUE
UNDEF3 = Value3.UNDEF

_F, _T, _U = FALSE3, TRUE3, UNDEF3


class ConnectiveId(enum.Enum):
    """Identifier of a fixed connective table."""

    AND_SAC = "and_sac"
    OR_SAC = "or_sac"
    AND_GNW = "and_gnw"
    OR_GNW = "or_gnw"
    AND_SCH = "and_sch"
    OR_SCH = "or_sch"
    NOT0 = "not0"
    COND_SAC = "cond_sac"
    COND_GNW = "cond_gnw"
    SQCAP = "sqcap"


# Binary tables, indexed [x.value][y.value] with rows/columns ordered 0, 1, ⊥.
#
# SAC treats ⊥ as a two-sided identity of both ∧ and ∨ ("if any argument
# becomes defined, act"); GNW is min/max under the order 0 < ⊥ < 1 ("apparent
# evidence for 0 reports 0", otherwise doubt stays doubt); Sch is strict, ⊥
# absorbs.  The conditioning operators return ⊥ whenever the condition is 0,
# pass the first argument through when it is 1, and differ on an undefined
# condition: SAC passes x through, GNW keeps 0 but turns 1 into ⊥.
_BINARY_TABLES: Mapping[ConnectiveId, tuple] = {
    ConnectiveId.AND_SAC: (
        (_F, _F, _F),
        (_F, _T, _T),
        (_F, _T, _U),
    ),
    ConnectiveId.OR_SAC: (
        (_F, _T, _F),
        (_T, _T, _T),
        (_F, _T, _U),
    ),
    ConnectiveId.AND_GNW: (
        (_F, _F, _F),
        (_F, _T, _U),
        (_F, _U, _U),
    ),
    ConnectiveId.OR_GNW: (
        (_F, _T, _U),
        (_T, _T, _T),
        (_U, _T, _U),
    ),
    ConnectiveId.AND_SCH: (
        (_F, _F, _U),
        (_F, _T, _U),
        (_U, _U, _U),
    ),
    ConnectiveId.OR_SCH: (
        (_F, _T, _U),
        (_T, _T, _U),
        (_U, _U, _U),
    ),
    ConnectiveId.COND_SAC: (
        (_U, _F, _F),
        (_U, _T, _T),
        (_U, _U, _U),
    ),
    ConnectiveId.COND_GNW: (
        (_U, _F, _F),
        (_U, _T, _U),
        (_U, _U, _U),
    ),
    # sqcap is the SAC term [x∨(y∧(x∨¬y))]∧[y∨(x∧(y∨¬x))]; the hard-coded
    # table below is cross-checked against that expansion in the test suite.
    ConnectiveId.SQCAP: (
        (_F, _F, _F),
        (_F, _T, _F),
        (_F, _F, _U),
    ),
}

_UNARY_TABLES: Mapping[ConnectiveId, tuple] = {
    ConnectiveId.NOT0: (_T, _F, _U),
}


def apply_unary(conn: ConnectiveId, x: Value3) -> Value3:
    """Apply a unary connective (only NOT0 exists)."""
    try:
        table = _UNARY_TABLES[conn]
    except KeyError:
        raise ValueError(f"{conn.name} is not a unary connective") from None
    return table[x.value]


def apply_binary(conn: ConnectiveId, x: Value3, y: Value3) -> Value3:
    """Apply a binary connective table to a pair of truth values."""
    try:
        table = _BINARY_TABLES[conn]
    except KeyError:
        raise ValueError(f"{conn.name} is not a binary connective") from None
    return table[x.value][y.value]


def sqcap_term(x: Value3, y: Value3) -> Value3:
    """Evaluate the defining SAC term of sqcap directly (reference for tests)."""
    land = ConnectiveId.AND_SAC
    lor = ConnectiveId.OR_SAC

    def neg(v: Value3) -> Value3:
        return apply_unary(ConnectiveId.NOT0, v)

    def a(u: Value3, v: Value3) -> Value3:
        return apply_binary(land, u, v)

    def o(u: Value3, v: Value3) -> Value3:
        return apply_binary(lor, u, v)

    left = o(x, a(y, o(x, neg(y))))
    right = o(y, a(x, o(y, neg(x))))
    return a(left, right)


# Connective selection for the two algebras that support re-conditioning.
ALGEBRA_CONNECTIVES = {
    "sac": {
        "and": ConnectiveId.AND_SAC,
        "or": ConnectiveId.OR_SAC,
        "not": ConnectiveId.NOT0,
        "cond": ConnectiveId.COND_SAC,
    },
    "gnw": {
        "and": ConnectiveId.AND_GNW,
        "or": ConnectiveId.OR_GNW,
        "not": ConnectiveId.NOT0,
        "cond": ConnectiveId.COND_GNW,
    },
    "sch": {
        "and": ConnectiveId.AND_SCH,
        "or": ConnectiveId.OR_SCH,
        "not": ConnectiveId.NOT0,
        # Schay's system has no conditioning operator.
    },
}


class UnboundVariableError(ValueError):
    def __init__(self, name: str):
        super().__init__(f"unbound variable: {name}")
        self.name = name


def eval_cea_valuation(expr, valuation: Mapping[str, Value3], algebra: str) -> Value3:
    """Evaluate a conditional expression over variables under a valuation.

    ``expr`` is a ``syntax.CeaExpr`` whose leaves are variables; ``algebra``
    selects which connective family interprets and/or/~/| ("sac" or "gnw").
    """
    from . import syntax  # deferred; the kernel stays import-light

    conns = ALGEBRA_CONNECTIVES[algebra]

    def walk(e) -> Value3:
        if isinstance(e, syntax.CeaVar):
            try:
                return valuation[e.name]
            except KeyError:
                raise UnboundVariableError(e.name) from None
        if isinstance(e, syntax.CeaNeg):
            return apply_unary(conns["not"], walk(e.child))
        if isinstance(e, syntax.CeaAnd):
            return apply_binary(conns["and"], walk(e.left), walk(e.right))
        if isinstance(e, syntax.CeaOr):
            return apply_binary(conns["or"], walk(e.left), walk(e.right))
        if isinstance(e, syntax.CeaCond):
            if "cond" not in conns:
                raise ValueError(f"algebra {algebra!r} has no conditioning operator")
            return apply_binary(conns["cond"], walk(e.left), walk(e.right))
        if isinstance(e, syntax.CeaSimple):
            raise ValueError("expression mixes events with variables; "
                             "valuation semantics needs variable leaves only")
        raise TypeError(f"not a conditional expression node: {e!r}")

    return walk(expr)
