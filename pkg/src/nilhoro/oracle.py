"""Brute-force ground truth from breadth-first search of the Cayley graph.

Nothing in here knows any closed-form formula; everything is derived from
``Group.mul`` and the generating set.  A ball of radius R answers distance
queries exactly up to R by lookup and up to 2R by meeting in the middle
(every geodesic of length <= 2R splits into two halves of length <= R).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from .groups import Group, evaluate_word

log = logging.getLogger(__name__)

__all__ = [
    "BudgetExceeded",
    "DistanceBall",
    "HorofunctionSnapshot",
    "bfs_ball",
    "bfs_norm",
    "default_budget",
    "geodesic_words_to",
    "horofunction_snapshot",
    "is_geodesic_word",
    "oracle_dist",
    "prefix_elements",
    "rejoin_witness",
]

Norm = Callable[[tuple], int]

DEFAULT_BUDGETS = {"h3": 12, "example1": 8}
ZD_BUDGET = 20


class BudgetExceeded(RuntimeError):
    """The requested computation needs a larger ball than the budget allows."""


def default_budget(group: Group) -> int:
    return DEFAULT_BUDGETS.get(group.name, ZD_BUDGET)


@dataclass(frozen=True, eq=False)
class DistanceBall:
    group: Group
    radius: int
    distances: Mapping[tuple, int]
    _memo: dict = field(default_factory=dict, repr=False)
    _order: list = field(default_factory=list, repr=False)

    def __len__(self) -> int:
        return len(self.distances)

    def __contains__(self, g) -> bool:
        return tuple(g) in self.distances

    def __getitem__(self, g) -> int:
        return self.distances[tuple(g)]

    def get(self, g, default=None):
        return self.distances.get(tuple(g), default)

    def sphere(self, r: int) -> list:
        return sorted(g for g, d in self.distances.items() if d == r)

    def elements(self) -> list:
        """All elements ordered by distance, then canonical key."""
        if not self._order:
            self._order.extend(sorted(self.distances, key=lambda g: (self.distances[g], g)))
        return list(self._order)

    def distance(self, g, reach: int | None = None) -> int | None:
        """Exact d(e, g) if it is at most ``reach`` (default 2 * radius), else None."""
        reach = 2 * self.radius if reach is None else min(reach, 2 * self.radius)
        key = tuple(g)
        d = self.distances.get(key)
        if d is not None:
            return d if d <= reach else None
        if reach <= self.radius:
            return None
        found, searched = self._memo.get(key, (None, self.radius))
        if found is None and searched < reach:
            found = self._meet_in_middle(key, reach)
            self._memo[key] = (found, reach)
        return found if found is not None and found <= reach else None

    def _meet_in_middle(self, g, reach: int) -> int | None:
        # A geodesic of length d > R passes through some v with |v| = d - R and
        # |v^-1 g| = R, so splits with |v| <= reach - R are all we need.  Once
        # a candidate d is known, only |v| < d - R can still improve on it.
        group, dist, R = self.group, self.distances, self.radius
        mul, inv = group.mul, group.inv
        best = None
        if not self._order:
            self.elements()
        for v in self._order:
            dv = dist[v]
            if dv > reach - R or (best is not None and dv >= best - R):
                break
            du = dist.get(tuple(mul(g, inv(v))))
            if du is not None and (best is None or du + dv < best):
                best = du + dv
        return best

    def rows(self) -> list[tuple]:
        """(element, distance) rows in deterministic order."""
        return [(g, self.distances[g]) for g in self.elements()]


@lru_cache(maxsize=16)
def _build_ball(group: Group, radius: int) -> DistanceBall:
    dist = {group.identity: 0}
    frontier = [group.identity]
    gens = [group.generators[s] for s in group.letters]
    mul = group.mul
    for r in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for s in gens:
                h = mul(g, s)
                if h not in dist:
                    dist[h] = r
                    nxt.append(h)
        frontier = nxt
    log.debug("ball %s radius %d: %d elements", group.name, radius, len(dist))
    return DistanceBall(group, radius, MappingProxyType(dist))


def bfs_ball(group: Group, radius: int, budget: int | None = None) -> DistanceBall:
    if radius < 0:
        raise ValueError("radius must be non-negative")
    budget = default_budget(group) if budget is None else budget
    if radius > budget:
        raise BudgetExceeded(f"radius {radius} exceeds the {group.name} budget of {budget}")
    return _build_ball(group, radius)


def bfs_norm(group: Group, budget: int | None = None) -> Norm:
    """Exact word length for elements within twice the budget radius.

    Raises BudgetExceeded beyond that reach; no estimate is ever returned.
    """
    budget = default_budget(group) if budget is None else budget
    ball = bfs_ball(group, budget, budget)

    def norm(g) -> int:
        d = ball.distance(g)
        if d is None:
            raise BudgetExceeded(f"{tuple(g)} lies beyond distance {2 * budget} in {group.name}")
        return d

    return norm


def oracle_dist(group: Group, g, max_radius: int, budget: int | None = None) -> int | None:
    """BFS distance d(e, g) if it is at most ``max_radius``, else None."""
    budget = default_budget(group) if budget is None else budget
    if max_radius <= budget:
        return bfs_ball(group, max_radius, budget).get(g)
    if max_radius > 2 * budget:
        raise BudgetExceeded(f"max_radius {max_radius} exceeds twice the {group.name} budget of {budget}")
    ball = bfs_ball(group, (max_radius + 1) // 2, budget)
    return ball.distance(g, max_radius)


def prefix_elements(group: Group, word: str) -> list:
    """Elements represented by the prefixes of ``word``, from the empty prefix on."""
    out = [group.identity]
    gens, mul = group.generators, group.mul
    for ch in word:
        out.append(mul(out[-1], gens[ch]))
    return out


def is_geodesic_word(group: Group, word: str, norm: Norm | None = None) -> bool:
    """True iff every prefix p of ``word`` has |p| = d(e, p)."""
    norm = bfs_norm(group) if norm is None else norm
    evaluate_word(group, word)  # alphabet check
    return all(norm(p) == k for k, p in enumerate(prefix_elements(group, word)))


def geodesic_words_to(group: Group, g, cap: int | None = None, norm: Norm | None = None) -> list[str]:
    """All geodesic words representing ``g`` in lexicographic order, at most ``cap`` of them."""
    norm = bfs_norm(group) if norm is None else norm
    target = group.make(tuple(g))
    total = norm(target)
    mul, inv = group.mul, group.inv
    letters = [(s, group.generators[s]) for s in group.letters]
    out: list[str] = []

    def walk(p, k: int, word: list[str]) -> bool:
        if k == total:
            out.append("".join(word))
            return cap is not None and len(out) >= cap
        for s, gen in letters:
            q = mul(p, gen)
            if norm(q) == k + 1 and norm(mul(inv(q), target)) == total - k - 1:
                word.append(s)
                if walk(q, k + 1, word):
                    return True
                word.pop()
        return False

    walk(group.identity, 0, [])
    return out


@dataclass(frozen=True)
class HorofunctionSnapshot:
    """psi_z(x) = d(x, z) - d(e, z) restricted to a finite window."""

    z: tuple
    window: tuple
    values: Mapping[tuple, int]

    def __getitem__(self, x) -> int:
        return self.values[tuple(x)]

    def signature(self) -> tuple[int, ...]:
        return tuple(self.values[x] for x in self.window)


def horofunction_snapshot(
    group: Group,
    z,
    window_radius: int | None = None,
    norm: Norm | None = None,
    window: Iterable | None = None,
) -> HorofunctionSnapshot:
    """Evaluate psi_z on the ball of ``window_radius`` (or on an explicit ``window``)."""
    norm = bfs_norm(group) if norm is None else norm
    if window is None:
        if window_radius is None:
            raise ValueError("give either window_radius or an explicit window")
        points = tuple(bfs_ball(group, window_radius, max(window_radius, default_budget(group))).elements())
    else:
        points = tuple(tuple(x) for x in window)
    mul, inv = group.mul, group.inv
    base = norm(z)
    values = {x: norm(mul(inv(x), z)) - base for x in points}
    return HorofunctionSnapshot(tuple(z), points, MappingProxyType(values))


def rejoin_witness(
    group: Group,
    w1: str,
    w2: str,
    N: int,
    horizon: int,
    norm: Norm | None = None,
) -> str | None:
    """Search for a geodesic that leaves ``w1`` after N steps, meets ``w2`` and returns to ``w1``.

    ``w1`` and ``w2`` are finite prefixes (length >= horizon) of infinite
    geodesic words.  The witness is a geodesic word v of length L <= horizon
    with v[:N] == w1[:N], v(t) == w2(t) for some N <= t <= L, and
    v(L) == w1(L).  Returns the shortest such word (lexicographically first
    among the shortest), or None when none exists within the horizon.
    """
    if min(len(w1), len(w2)) < horizon:
        raise ValueError("w1 and w2 must be at least as long as the horizon")
    if not 0 <= N <= horizon:
        raise ValueError("need 0 <= N <= horizon")
    norm = bfs_norm(group) if norm is None else norm
    path1 = prefix_elements(group, w1[:horizon])
    path2 = prefix_elements(group, w2[:horizon])
    if any(norm(p) != k for k, p in enumerate(path1[: N + 1])):
        raise ValueError("the first N letters of w1 are not geodesic")
    letters = [(s, group.generators[s]) for s in group.letters]
    mul = group.mul

    start = path1[N]
    layer: dict[tuple, str] = {(start, start == path2[N]): w1[:N]}
    for s in range(N, horizon + 1):
        hits = sorted(word for (q, met), word in layer.items() if met and q == path1[s])
        if hits:
            return hits[0]
        if s == horizon:
            break
        nxt: dict[tuple, str] = {}
        for (q, met), word in layer.items():
            for letter, gen in letters:
                r = mul(q, gen)
                if norm(r) != s + 1:
                    continue
                state = (r, met or r == path2[s + 1])
                cand = word + letter
                if state not in nxt or cand < nxt[state]:
                    nxt[state] = cand
        layer = nxt
    return None

