# Sign conventions relating diagonal derivative combinations to g and T.
#
# Order 2: LL = RR = -LR = -RL = g.
# Order 3: for every mark string P, sym(P - swap(P)) = SKEWNESS_SIGNS[P] * T
# with T := sym(LLR - RRL). Differentiating the diagonal restrictions of the
# order-2 entries gives sym(LLL) + sym(LLR) = sym(RRR) + sym(RRL) = -(sym(LRR) + sym(LLR)) = dg,
# hence sym(LLL - RRR) = -T and sym(LRR - RLL) = -T.
from __future__ import annotations

from typing import Final

from twopoint.diff.patterns import all_marks

__all__ = ("METRIC_SIGNS", "SKEWNESS_SIGNS", "Q1_TERMS", "Q2_TERMS", "skewness_sign")


def skewness_sign(marks: str) -> int:
    """Sign of sym(P - swap(P)) relative to T for a length-3 mark string P."""
    if len(marks) != 3 or set(marks) - {"L", "R"}:
        raise ValueError(f"Expected a length-3 mark string, got {marks!r}")
    return -1 if marks.count("R") % 2 == 0 else 1


METRIC_SIGNS: Final[dict[str, int]] = {"LL": 1, "RR": 1, "LR": -1, "RL": -1}
"""Mapping of (order-2 marks): (sign relative to g)."""

SKEWNESS_SIGNS: Final[dict[str, int]] = {
    "LLL": -1,
    "LLR": 1,
    "LRL": 1,
    "RLL": 1,
    "LRR": -1,
    "RLR": -1,
    "RRL": -1,
    "RRR": 1,
}
"""Mapping of (order-3 marks P): (sign of P - swap(P) relative to T)."""

assert SKEWNESS_SIGNS == {m: skewness_sign(m) for m in all_marks(3)}

Q1_TERMS: Final[tuple[tuple[str, str], ...]] = (
    ("LRRL", "RLLR"),
    ("LRRR", "RLLL"),
    ("LRLL", "RLRR"),
    ("LRLR", "RLRL"),
)
Q2_TERMS: Final[tuple[tuple[str, str], ...]] = (
    ("LLLL", "RRRR"),
    ("LLLR", "RRRL"),
    ("LLRL", "RRLR"),
    ("LLRR", "RRLL"),
)
