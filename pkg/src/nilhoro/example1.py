"""A class-3 nilpotent group on two generators, in exponent normal form.

The group is generated by a and b with c = [a, b], g = [a, c], h = [b, c],
where g and h are central.  Every element is uniquely g^i h^j c^k b^l a^m,
stored as the 5-tuple (i, j, k, l, m).

Multiplication uses closed-form exponent polynomials obtained by collecting
with the rules ab -> bac, ac -> cag, bc -> cbh.  They are cross-checked in
the test suite against a second, geometric route (``staircase_exponents``)
and against the defining relations.
"""

from __future__ import annotations

from itertools import combinations
from typing import NamedTuple, Sequence

from .groups import Group, evaluate_word
from .oracle import Norm, bfs_norm

__all__ = [
    "EXAMPLE1",
    "Ex1Element",
    "G_ELEM",
    "H_ELEM",
    "eta_excess",
    "ex1_inv",
    "ex1_mul",
    "lemma_perm_check",
    "staircase_exponents",
]


class Ex1Element(NamedTuple):
    i: int
    j: int
    k: int
    l: int  # noqa: E741 - the exponent of b
    m: int

    def to_json(self) -> dict[str, int]:
        return self._asdict()


def _c2(n: int) -> int:
    return n * (n - 1) // 2


def ex1_mul(u: Sequence[int], v: Sequence[int]) -> Ex1Element:
    i, j, k, l, m = u
    i2, j2, k2, l2, m2 = v
    # Moving a^m past c^k2 b^l2 produces g^(m k2) and, through b^l2, c^(m l2)
    # plus g^(l2 C(m+1, 2)) and h^(m C(l2+1, 2)); moving b^l past c^k2 and
    # past the new c^(m l2) gives h^(l k2) and h^(l m l2).
    return Ex1Element(
        i + i2 + m * k2 + l2 * _c2(m + 1),
        j + j2 + l * k2 + m * _c2(l2 + 1) + l * m * l2,
        k + k2 + m * l2,
        l + l2,
        m + m2,
    )


def ex1_inv(u: Sequence[int]) -> Ex1Element:
    i, j, k, l, m = u
    r = Ex1Element(0, 0, 0, 0, -m)
    for factor in ((0, 0, 0, -l, 0), (0, 0, -k, 0, 0), (-i, -j, 0, 0, 0)):
        r = ex1_mul(r, factor)
    return r


EXAMPLE1 = Group(
    "example1",
    Ex1Element(0, 0, 0, 0, 0),
    {
        "a": Ex1Element(0, 0, 0, 0, 1),
        "A": Ex1Element(0, 0, 0, 0, -1),
        "b": Ex1Element(0, 0, 0, 1, 0),
        "B": Ex1Element(0, 0, 0, -1, 0),
    },
    ex1_mul,
    ex1_inv,
    make=lambda c: Ex1Element(*c),
    fields=Ex1Element._fields,
)

G_ELEM = Ex1Element(1, 0, 0, 0, 0)
H_ELEM = Ex1Element(0, 1, 0, 0, 0)


def staircase_exponents(word: str) -> tuple[int, int, int]:
    """(i, j, k) of a positive word read off its lattice path.

    Draw the word as a path from the origin, b stepping right and a stepping
    up.  k counts the unit squares below the path, j sums the x-coordinates
    of their upper-right corners and i sums the y-coordinates.
    """
    bad = sorted(set(word) - {"a", "b"})
    if bad:
        raise ValueError(f"staircase_exponents takes words over {{a, b}} only, got {''.join(bad)!r}")
    x = y = 0
    i = j = k = 0
    for ch in word:
        if ch == "a":
            y += 1
        else:
            # the column [x, x+1] has y squares, corners (x+1, 1..y)
            x += 1
            k += y
            j += y * x
            i += y * (y + 1) // 2
    return i, j, k


def _balanced_words(l: int):  # noqa: E741
    n = 2 * l
    for a_pos in combinations(range(n), l):
        chars = ["b"] * n
        for p in a_pos:
            chars[p] = "a"
        yield "".join(chars)


def lemma_perm_check(l: int, max_l: int = 7) -> tuple[bool, str | None]:  # noqa: E741
    """Among words with l a's and l b's and the same k as (ab)^l, is i - j largest only at (ab)^l?

    Returns (True, None) when every other such word w has
    (i_w - i0) - (j_w - j0) > 0, else (False, w) for the first offender.
    """
    if not 1 <= l <= max_l:
        raise ValueError(f"need 1 <= l <= {max_l}, got {l}")
    base = "ab" * l
    i0, j0, k0 = staircase_exponents(base)
    for w in _balanced_words(l):
        if w == base:
            continue
        i, j, k = staircase_exponents(w)
        if k == k0 and (i - i0) - (j - j0) <= 0:
            return False, w
    return True, None


def eta_excess(l: int, norm: Norm | None = None) -> int:  # noqa: E741
    """d(g, (ab)^l) - d(e, (ab)^l) from the BFS oracle, with g = [a, c]."""
    if l < 1:
        raise ValueError("l must be positive")
    norm = bfs_norm(EXAMPLE1) if norm is None else norm
    target = evaluate_word(EXAMPLE1, "ab" * l)
    base = norm(target)
    if base != 2 * l:
        raise AssertionError(f"(ab)^{l} has length {base}, expected {2 * l}")
    return norm(ex1_mul(ex1_inv(G_ELEM), target)) - base
