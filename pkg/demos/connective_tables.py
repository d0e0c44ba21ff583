#!/usr/bin/env python3
"""Walk through the three-valued connective families.

Three ways to conjoin partially-defined verdicts: act on whatever is defined
(sac), stay cautious unless falsity is evident (gnw), or insist both sides be
defined (sch).  The same choice exists for disjunction, and two operators
extend conditioning itself to three-valued arguments.
"""
from tlcond import ConnectiveId, Value3, apply_binary, apply_unary

VALUES = (Value3.FALSE, Value3.TRUE, Value3.UNDEF)


def show(conn):
    print(f"\n{conn.name.lower()}   (rows = left argument, columns = right)")
    print("      " + "   ".join(v.symbol for v in VALUES))
    for x in VALUES:
        cells = "   ".join(apply_binary(conn, x, y).symbol for y in VALUES)
        print(f"  {x.symbol}   {cells}")


print("negation:", {v.symbol: apply_unary(ConnectiveId.NOT0, v).symbol
                    for v in VALUES})

for conn in (ConnectiveId.AND_SAC, ConnectiveId.AND_GNW, ConnectiveId.AND_SCH,
             ConnectiveId.OR_SAC, ConnectiveId.OR_GNW, ConnectiveId.OR_SCH):
    show(conn)

print("\nConditioning: value of x given y.  Both operators are undefined on "
      "an impossible condition;\nthey differ when the condition itself is "
      "undefined.")
show(ConnectiveId.COND_SAC)
show(ConnectiveId.COND_GNW)

print("\nsqcap, the definable 'joint truth' connective of the sac family: "
      "1 exactly when both\narguments are 1, otherwise 0 (undefined only on "
      "two undefined arguments).")
show(ConnectiveId.SQCAP)
