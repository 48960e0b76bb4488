"""Closed-form word length on H3 and transition combinatorics of H3 words.

The word length of c^z b^y a^x with respect to {a, b, a^-1, b^-1} is given by
Blachère's case analysis.  The cases overlap on their boundaries; we evaluate
them in the fixed order I.1, I.2.1, I.2.2, II.1, II.2 and take the first whose
side conditions hold.  ``applicable_cases`` exposes every branch so the test
suite can confirm they agree wherever they overlap.
"""

from __future__ import annotations

import enum
from math import isqrt
from typing import Iterable, Sequence

from .groups import H3, evaluate_word, h3_inv, h3_mul

__all__ = [
    "CaseTag",
    "Transition",
    "applicable_cases",
    "ceil_2sqrt",
    "ceil_div",
    "classify_transitions",
    "commutator_power_nongeodesic",
    "h3_dist",
    "h3_norm",
    "h3_norm_case",
    "reverse_transitions",
]


class CaseTag(str, enum.Enum):
    I1 = "I1"
    I21 = "I21"
    I22 = "I22"
    II1 = "II1"
    II2 = "II2"


def ceil_2sqrt(t: int) -> int:
    """Smallest k with k*k >= 4t, i.e. ceil(2 sqrt(t)), computed exactly."""
    if t < 0:
        raise ValueError(f"ceil_2sqrt needs t >= 0, got {t}")
    r = isqrt(4 * t)
    return r if r * r == 4 * t else r + 1


def ceil_div(p: int, q: int) -> int:
    """ceil(p / q) for q > 0."""
    return -(-p // q)


def _ceil_min_ratio(az: int, ax: int, ay: int) -> int:
    # ceil(min(|z/x|, |z/y|)) with |z/0| = +inf; ceil and min commute here.
    return min(ceil_div(az, v) for v in (ax, ay) if v)


def applicable_cases(g: Sequence[int]) -> dict[CaseTag, int]:
    """Every branch of the formula whose side conditions hold at ``g``, with its value."""
    x, y, z = g
    ax, ay, az = abs(x), abs(y), abs(z)
    sq = max(ax * ax, ay * ay)
    sign = x * y * z
    out: dict[CaseTag, int] = {}
    has_ratio = ax != 0 or ay != 0
    if sign >= 0:
        if sq <= az:
            out[CaseTag.I1] = 2 * ceil_2sqrt(az) - ax - ay
        if sq >= az and ax * ay >= az:
            out[CaseTag.I21] = ax + ay
        if sq >= az and ax * ay <= az and has_ratio:
            out[CaseTag.I22] = 2 * _ceil_min_ratio(az, ax, ay) + abs(ax - ay)
    if sign <= 0:
        if sq <= az + ax * ay:
            out[CaseTag.II1] = 2 * ceil_2sqrt(az + ax * ay) - ax - ay
        if sq >= az + ax * ay and has_ratio:
            out[CaseTag.II2] = 2 * _ceil_min_ratio(az, ax, ay) + ax + ay
    return out


def h3_norm_case(g: Sequence[int]) -> tuple[int, CaseTag]:
    """Word length d(e, g) together with the branch that produced it."""
    x, y, z = g
    ax, ay, az = abs(x), abs(y), abs(z)
    sq = max(ax * ax, ay * ay)
    if x * y * z >= 0:
        if sq <= az:
            return 2 * ceil_2sqrt(az) - ax - ay, CaseTag.I1
        if ax * ay >= az:
            return ax + ay, CaseTag.I21
        return 2 * _ceil_min_ratio(az, ax, ay) + abs(ax - ay), CaseTag.I22
    if sq <= az + ax * ay:
        return 2 * ceil_2sqrt(az + ax * ay) - ax - ay, CaseTag.II1
    return 2 * _ceil_min_ratio(az, ax, ay) + ax + ay, CaseTag.II2


def h3_norm(g: Sequence[int]) -> int:
    return h3_norm_case(g)[0]


def h3_dist(g: Sequence[int], h: Sequence[int]) -> int:
    """Left-invariant word metric d(g, h) = |g^-1 h|."""
    return h3_norm(h3_mul(h3_inv(g), h))


class Transition(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


# Each positive pair represents c times the element of its reversal.
_POSITIVE = frozenset({"ab", "bA", "AB", "Ba"})
_NEGATIVE = frozenset(p[::-1] for p in _POSITIVE)


def classify_transitions(word: str) -> list[tuple[int, Transition]]:
    out = []
    for i in range(len(word) - 1):
        pair = word[i : i + 2]
        if pair in _POSITIVE:
            kind = Transition.POSITIVE
        elif pair in _NEGATIVE:
            kind = Transition.NEGATIVE
        else:
            kind = Transition.NEUTRAL
        out.append((i, kind))
    return out


def reverse_transitions(word: str, positions: Iterable[int]) -> str:
    """Swap the letters of each transition ``word[p:p+2]`` for p in ``positions``."""
    pos = sorted(set(positions))
    for p in pos:
        if not 0 <= p < len(word) - 1:
            raise ValueError(f"transition index {p} out of range for a word of length {len(word)}")
    for p, q in zip(pos, pos[1:]):
        if q - p < 2:
            raise ValueError(f"transitions at {p} and {q} overlap")
    letters = list(word)
    for p in pos:
        letters[p], letters[p + 1] = letters[p + 1], letters[p]
    return "".join(letters)


def commutator_power_nongeodesic(i: int, j: int, n: int) -> bool:
    """Does (a^i b^j a^-i b^-j)^n fail to be geodesic?

    Returns True iff the word length 2n(i+j) strictly exceeds the word length
    of the element it represents (a power of c).
    """
    if min(i, j, n) < 1:
        raise ValueError("i, j and n must be positive")
    block = "a" * i + "b" * j + "A" * i + "B" * j
    g = evaluate_word(H3, block * n)
    return 2 * n * (i + j) > h3_norm(g)

