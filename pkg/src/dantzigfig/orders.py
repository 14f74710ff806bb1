"""Term-order comparators on nonnegative integer vectors.

Three total orders are provided: plain lex, graded lex and graded reverse
lex. Coordinate comparison runs right to left (highest index first); the
graded orders compare total degree first and fall back to the lex verdict
(grlex) or its reverse (grevlex) on ties.
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class OrderKind(Enum):
    LEX = "lex"
    GRLEX = "grlex"
    GREVLEX = "grevlex"


class LengthMismatch(ValueError):
    """Vectors of different lengths are not comparable."""


def _check_lengths(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise LengthMismatch(f"lengths {len(x)} vs {len(y)}")


def compare_lex(x: Sequence[int], y: Sequence[int]) -> Ordering:
    """Lexicographic comparison scanning from the last coordinate down.

    The first differing coordinate (highest index) decides.
    """
    _check_lengths(x, y)
    for xi, yi in zip(reversed(x), reversed(y)):
        if xi != yi:
            return Ordering.LESS if xi < yi else Ordering.GREATER
    return Ordering.EQUAL


def compare_graded(kind: OrderKind, x: Sequence[int], y: Sequence[int]) -> Ordering:
    """Graded comparison: total degree first, then a lex tie-break.

    GRLEX keeps the lex verdict on degree ties; GREVLEX reverses it.
    """
    _check_lengths(x, y)
    if kind not in (OrderKind.GRLEX, OrderKind.GREVLEX):
        raise ValueError(f"not a graded order: {kind}")
    dx, dy = sum(x), sum(y)
    if dx != dy:
        return Ordering.LESS if dx < dy else Ordering.GREATER
    tie = compare_lex(x, y)
    if kind is OrderKind.GRLEX or tie is Ordering.EQUAL:
        return tie
    return Ordering.LESS if tie is Ordering.GREATER else Ordering.GREATER


def is_initial_segment_member(
    kind: OrderKind, x: Sequence[int], theta: Sequence[int]
) -> bool:
    """True iff x lies in the initial segment {y >= 0 : y <= theta} of the order."""
    if any(v < 0 for v in x):
        raise ValueError("x must be nonnegative")
    return compare_graded(kind, x, theta) in (Ordering.LESS, Ordering.EQUAL)
