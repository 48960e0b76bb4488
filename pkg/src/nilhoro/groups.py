"""Exact arithmetic for the discrete Heisenberg group and for Z^d.

Elements are plain tuples (``NamedTuple`` subclasses where the coordinates
have names), so they hash, compare and serialise without ceremony.  Python
integers are unbounded, which matters: the central coordinate of H3 grows
quadratically along a path.
"""

from __future__ import annotations

import string
from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from typing import Callable, NamedTuple, Sequence

__all__ = [
    "AlphabetError",
    "Group",
    "H3",
    "H3Element",
    "evaluate_word",
    "get_group",
    "h3_inv",
    "h3_mul",
    "parse_word",
    "zd_group",
]


class AlphabetError(ValueError):
    """A word uses a letter the group does not know."""


class H3Element(NamedTuple):
    """The element c^z b^y a^x, i.e. the matrix [[1, x, z], [0, 1, y], [0, 0, 1]]."""

    x: int
    y: int
    z: int

    def __mul__(self, other):  # type: ignore[override]
        return h3_mul(self, other)

    def inverse(self) -> "H3Element":
        return h3_inv(self)

    def matrix(self) -> list[list[int]]:
        return [[1, self.x, self.z], [0, 1, self.y], [0, 0, 1]]

    def to_json(self) -> dict[str, int]:
        return {"x": self.x, "y": self.y, "z": self.z}


def h3_mul(g: Sequence[int], h: Sequence[int]) -> H3Element:
    return H3Element(g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1])


def h3_inv(g: Sequence[int]) -> H3Element:
    x, y, z = g
    return H3Element(-x, -y, x * y - z)


class Group:
    """A finitely generated group with a symmetric, lettered generating set.

    ``generators`` maps single-character letters to elements.  Lowercase
    letters are generators, the matching uppercase letter is the inverse.
    Elements must be hashable tuples in a unique normal form; that tuple is
    the canonical key used by the BFS oracle.
    """

    def __init__(
        self,
        name: str,
        identity: tuple,
        generators: dict[str, tuple],
        mul: Callable[[tuple, tuple], tuple],
        inv: Callable[[tuple], tuple],
        make: Callable[[Sequence[int]], tuple] = tuple,
        fields: Sequence[str] | None = None,
    ):
        self.name = name
        self.identity = identity
        self.generators = dict(generators)
        self.mul = mul
        self.inv = inv
        self.make = make
        self.fields = tuple(fields) if fields else tuple(f"v{i}" for i in range(len(identity)))
        for letter, g in self.generators.items():
            partner = letter.swapcase()
            if partner not in self.generators or self.generators[partner] != inv(g):
                raise ValueError(f"generating set of {name} is not symmetric at {letter!r}")

    def __repr__(self) -> str:
        return f"Group({self.name!r})"

    @property
    def letters(self) -> list[str]:
        """Letters in canonical (ASCII) order."""
        return sorted(self.generators)

    def key(self, g) -> tuple:
        return tuple(g)

    def element(self, coords: Sequence[int]):
        if len(coords) != len(self.identity):
            raise ValueError(f"{self.name} elements have {len(self.identity)} coordinates, got {len(coords)}")
        return self.make([int(c) for c in coords])

    def parse_element(self, text: str):
        try:
            coords = [int(part) for part in text.split(",")]
        except ValueError:
            raise ValueError(f"cannot parse element {text!r}: expected comma-separated integers") from None
        return self.element(coords)

    def to_json(self, g) -> dict[str, int]:
        return dict(zip(self.fields, g))


def parse_word(group: Group, text: str) -> str:
    """Validate ``text`` as a word over the group's alphabet and return it."""
    bad = sorted({ch for ch in text if ch not in group.generators})
    if bad:
        raise AlphabetError(f"letters {''.join(bad)!r} are not in the alphabet of {group.name} ({''.join(group.letters)})")
    return text


def evaluate_word(group: Group, word: str):
    """Left-to-right product of the letters of ``word``."""
    g = group.identity
    gens = group.generators
    mul = group.mul
    for ch in word:
        try:
            s = gens[ch]
        except KeyError:
            raise AlphabetError(f"letter {ch!r} is not in the alphabet of {group.name}") from None
        g = mul(g, s)
    return g


H3 = Group(
    "h3",
    H3Element(0, 0, 0),
    {
        "a": H3Element(1, 0, 0),
        "A": H3Element(-1, 0, 0),
        "b": H3Element(0, 1, 0),
        "B": H3Element(0, -1, 0),
    },
    h3_mul,
    h3_inv,
    make=lambda c: H3Element(*c),
    fields=("x", "y", "z"),
)


def _lattice_index_is_one(vectors: list[tuple[int, ...]], d: int) -> bool:
    # The vectors generate Z^d iff the gcd of all d x d minors is 1.
    from math import gcd

    g = 0
    for rows in combinations(vectors, d):
        g = gcd(g, _det(rows))
        if g == 1:
            return True
    return False


def _det(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(v) for v in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return int(det)


def zd_group(d: int, gens: Sequence[Sequence[int]]) -> Group:
    """Z^d under addition with the given symmetric generating set.

    Each pair {v, -v} gets one letter: the first member met in ``gens`` is
    lowercase (a, b, c, ...), its negation uppercase.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    vecs = [tuple(int(c) for c in v) for v in gens]
    if any(len(v) != d for v in vecs):
        raise ValueError(f"every generator must have {d} coordinates")
    zero = (0,) * d
    if zero in vecs:
        raise ValueError("the zero vector is not a generator")
    distinct = list(dict.fromkeys(vecs))
    letters: dict[str, tuple] = {}
    seen: set[tuple] = set()
    names = iter(string.ascii_lowercase)
    for v in distinct:
        if v in seen:
            continue
        neg = tuple(-c for c in v)
        if neg not in distinct:
            raise ValueError(f"generating set is not symmetric: {v} present but {neg} missing")
        try:
            letter = next(names)
        except StopIteration:
            raise ValueError("too many generators for the a..z alphabet") from None
        letters[letter] = v
        letters[letter.upper()] = neg
        seen.update((v, neg))
    if not _lattice_index_is_one(distinct, d):
        raise ValueError(f"generators do not span Z^{d}")

    def mul(g, h):
        return tuple(p + q for p, q in zip(g, h))

    def inv(g):
        return tuple(-p for p in g)

    return Group(f"z{d}", zero, letters, mul, inv)


@lru_cache(maxsize=None)
def standard_zd(d: int) -> Group:
    basis = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return zd_group(d, basis + [tuple(-c for c in v) for v in basis])


def get_group(name: str) -> Group:
    """Look up a built-in group: ``h3``, ``example1`` or ``z<d>`` (standard generators)."""
    if name == "h3":
        return H3
    if name == "example1":
        from .example1 import EXAMPLE1

        return EXAMPLE1
    if name.startswith("z") and name[1:].isdigit() and int(name[1:]) >= 1:
        return standard_zd(int(name[1:]))
    raise ValueError(f"unknown group {name!r}; choose h3, example1 or z<d>")
