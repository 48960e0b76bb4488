"""Busemann points of H3 with its standard generators, and the H3 action on them.

There are three families:

* ``Corner(ea, eb)``: limits of infinite words over {a^ea, b^eb} using both
  letters infinitely often; value -ea*x - eb*y at c^z b^y a^x.
* ``AType(eps, m, n)``: limit of t -> c^m b^n a^(eps t).
* ``BType(eps, m, l)``: limit of t -> c^(m + eps t l) b^(eps t) a^l.

All evaluation is exact integer arithmetic.  Snapshots of psi_z along the
standard paths are compared against these closed forms by
``verify_convergence``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Sequence, Union

from .groups import H3, H3Element, h3_inv, h3_mul
from .metric import h3_norm
from .oracle import bfs_ball, horofunction_snapshot

__all__ = [
    "AType",
    "BType",
    "ConvergenceResult",
    "Corner",
    "GammaPath",
    "LambdaPath",
    "TwoLetterPath",
    "WWThresholds",
    "act",
    "act_via_definition",
    "eval_point",
    "j_indicator",
    "limit_of_standard_path",
    "parameter_grid",
    "parse_path",
    "parse_point",
    "points_separate",
    "verify_convergence",
    "window",
    "ww_limit_check",
]


def _check_sign(*signs: int) -> None:
    for s in signs:
        if s not in (-1, 1):
            raise ValueError(f"sign must be +1 or -1, got {s!r}")


def _sgn(s: int) -> str:
    return "+" if s > 0 else "-"


@dataclass(frozen=True)
class Corner:
    ea: int
    eb: int

    def __post_init__(self):
        _check_sign(self.ea, self.eb)

    def __str__(self) -> str:
        return f"corner:{_sgn(self.ea)}{_sgn(self.eb)}"


@dataclass(frozen=True)
class AType:
    eps: int
    m: int
    n: int

    def __post_init__(self):
        _check_sign(self.eps)

    def __str__(self) -> str:
        return f"a:{_sgn(self.eps)},{self.m},{self.n}"


@dataclass(frozen=True)
class BType:
    eps: int
    m: int
    l: int  # noqa: E741

    def __post_init__(self):
        _check_sign(self.eps)

    def __str__(self) -> str:
        return f"b:{_sgn(self.eps)},{self.m},{self.l}"


BusemannPoint = Union[Corner, AType, BType]

_SIGN = {"+": 1, "-": -1}
_CORNER_RE = re.compile(r"^corner:([+-])([+-])$")
_PARAM_RE = re.compile(r"^(a|b|gamma|lambda):([+-]),(-?\d+),(-?\d+)$")


def parse_point(text: str) -> BusemannPoint:
    """Parse ``corner:+-``, ``a:+,m,n`` or ``b:-,m,l``."""
    text = text.strip()
    if m := _CORNER_RE.match(text):
        return Corner(_SIGN[m[1]], _SIGN[m[2]])
    m = _PARAM_RE.match(text)
    if m and m[1] in ("a", "b"):
        cls = AType if m[1] == "a" else BType
        return cls(_SIGN[m[2]], int(m[3]), int(m[4]))
    raise ValueError(f"cannot parse Busemann point {text!r}; expected corner:++, a:+,m,n or b:-,m,l")


def j_indicator(u: int, v: int) -> int:
    return 1 if v != 0 and u * v >= 0 else 0


def eval_point(p: BusemannPoint, g: Sequence[int]) -> int:
    """Value of the horofunction ``p`` at g = c^k b^j a^i."""
    i, j, k = g
    if isinstance(p, Corner):
        return -p.ea * i - p.eb * j
    if isinstance(p, AType):
        e, m, n = p.eps, p.m, p.n
        return (
            -e * i
            + abs(j - n)
            - abs(n)
            + 2 * j_indicator(e * (j - n), (j - n) * i - (k - m))
            - 2 * j_indicator(-e * n, m)
        )
    if isinstance(p, BType):
        e, m, l = p.eps, p.m, p.l  # noqa: E741
        return (
            -e * j
            + abs(i - l)
            - abs(l)
            + 2 * j_indicator(-e * (i - l), j * l - (k - m))
            - 2 * j_indicator(e * l, m)
        )
    raise TypeError(f"not a Busemann point: {p!r}")


def act(g: Sequence[int], p: BusemannPoint) -> BusemannPoint:
    """The image g.p, computed on parameters."""
    x, y, z = g
    if isinstance(p, Corner):
        return p
    if isinstance(p, AType):
        return AType(p.eps, p.m + z + p.n * x, p.n + y)
    if isinstance(p, BType):
        return BType(p.eps, p.m + z - y * (p.l + x), p.l + x)
    raise TypeError(f"not a Busemann point: {p!r}")


def window(radius: int) -> list[H3Element]:
    """The H3 ball of the given radius, in canonical order."""
    return bfs_ball(H3, radius, max(radius, 12)).elements()


def act_via_definition(g: Sequence[int], p: BusemannPoint, window_radius: int) -> dict[tuple, int]:
    """x -> p(g^-1 x) - p(g^-1) on the window: the action straight from its definition."""
    gi = h3_inv(g)
    base = eval_point(p, gi)
    return {x: eval_point(p, h3_mul(gi, x)) - base for x in window(window_radius)}


# ---------------------------------------------------------------- paths


@dataclass(frozen=True)
class GammaPath:
    """t -> c^m b^n a^(eps t)."""

    eps: int
    m: int
    n: int

    def __post_init__(self):
        _check_sign(self.eps)

    def point(self, t: int) -> H3Element:
        return H3Element(self.eps * t, self.n, self.m)

    def __str__(self) -> str:
        return f"gamma:{_sgn(self.eps)},{self.m},{self.n}"


@dataclass(frozen=True)
class LambdaPath:
    """t -> c^(m + eps t l) b^(eps t) a^l."""

    eps: int
    m: int
    l: int  # noqa: E741

    def __post_init__(self):
        _check_sign(self.eps)

    def point(self, t: int) -> H3Element:
        return H3Element(self.l, self.eps * t, self.m + self.eps * t * self.l)

    def __str__(self) -> str:
        return f"lambda:{_sgn(self.eps)},{self.m},{self.l}"


@dataclass(frozen=True)
class TwoLetterPath:
    """The path from e spelled by ``prefix`` followed by ``period`` repeated forever.

    Both words use only a^ea and b^eb, and ``period`` must contain both.
    """

    ea: int
    eb: int
    period: str
    prefix: str = ""
    _points: list = field(default_factory=lambda: [H3.identity], repr=False, compare=False)

    def __post_init__(self):
        _check_sign(self.ea, self.eb)
        allowed = {"a" if self.ea > 0 else "A", "b" if self.eb > 0 else "B"}
        if set(self.prefix + self.period) - allowed:
            raise ValueError(f"letters must come from {sorted(allowed)}")
        if set(self.period) != allowed:
            raise ValueError("the period must use both letters")

    @classmethod
    def from_word(cls, period: str, prefix: str = "") -> "TwoLetterPath":
        ea = -1 if "A" in period else 1
        eb = -1 if "B" in period else 1
        return cls(ea, eb, period, prefix)

    def letter(self, t: int) -> str:
        if t < len(self.prefix):
            return self.prefix[t]
        return self.period[(t - len(self.prefix)) % len(self.period)]

    def word(self, t: int) -> str:
        return "".join(self.letter(s) for s in range(t))

    def point(self, t: int) -> H3Element:
        pts = self._points
        while len(pts) <= t:
            pts.append(h3_mul(pts[-1], H3.generators[self.letter(len(pts) - 1)]))
        return pts[t]

    def __str__(self) -> str:
        return f"word:{self.prefix + '/' if self.prefix else ''}{self.period}"


StandardPath = Union[GammaPath, LambdaPath, TwoLetterPath]


def parse_path(text: str) -> StandardPath:
    """Parse ``gamma:+,m,n``, ``lambda:-,m,l`` or ``word:PERIOD`` / ``word:PREFIX/PERIOD``."""
    text = text.strip()
    m = _PARAM_RE.match(text)
    if m and m[1] in ("gamma", "lambda"):
        cls = GammaPath if m[1] == "gamma" else LambdaPath
        return cls(_SIGN[m[2]], int(m[3]), int(m[4]))
    if text.startswith("word:"):
        body = text[5:]
        prefix, _, period = body.rpartition("/")
        return TwoLetterPath.from_word(period, prefix)
    raise ValueError(f"cannot parse path {text!r}; expected gamma:+,m,n, lambda:-,m,l or word:ab")


def limit_of_standard_path(path: StandardPath) -> BusemannPoint:
    if isinstance(path, GammaPath):
        return AType(path.eps, path.m, path.n)
    if isinstance(path, LambdaPath):
        return BType(path.eps, path.m, path.l)
    if isinstance(path, TwoLetterPath):
        return Corner(path.ea, path.eb)
    raise TypeError(f"not a standard path: {path!r}")


# ---------------------------------------------------------------- convergence


@dataclass
class ConvergenceResult:
    stabilised: bool
    T: int | None
    probes: list[int]
    mismatch_at: int | None = None  # last probe where the snapshot disagreed
    witness: tuple | None = None  # a window point where it disagreed

    def to_json(self) -> dict:
        return {
            "stabilised": self.stabilised,
            "T": self.T,
            "t_max": self.probes[-1] if self.probes else None,
            "mismatch_at": self.mismatch_at,
            "witness": list(self.witness) if self.witness else None,
        }


def verify_convergence(
    path: StandardPath,
    p: BusemannPoint,
    window_radius: int,
    t_max: int = 40,
    norm: Callable[[tuple], int] = h3_norm,
    margin: int = 3,
) -> ConvergenceResult:
    """Probe psi_{path(t)} on the window for t = 0..t_max and find where it settles on ``p``.

    T is the least probe such that every probe t >= T agrees with ``p`` on the
    whole window.  Stabilisation is only declared when at least ``margin``
    further probes follow T.  ``norm`` defaults to the closed-form word
    length; pass ``bfs_norm(H3, R)`` for a pure-BFS run, in which case
    BudgetExceeded propagates rather than being reported as a mismatch.
    """
    pts = window(window_radius)
    target = tuple(eval_point(p, x) for x in pts)
    probes = list(range(t_max + 1))
    T = None
    mismatch_at = witness = None
    for t in probes:
        snap = horofunction_snapshot(H3, path.point(t), norm=norm, window=pts)
        sig = snap.signature()
        if sig == target:
            if T is None:
                T = t
        else:
            T = None
            mismatch_at = t
            witness = next(x for x, u, v in zip(pts, sig, target) if u != v)
    ok = T is not None and t_max - T >= margin
    return ConvergenceResult(ok, T if ok else None, probes, mismatch_at, witness)


# ---------------------------------------------------------------- corner as a limit of AType points


@dataclass
class WWThresholds:
    """Thresholds after which AType(+, m, n) agrees with Corner(+, +) on a window.

    For every n >= N, agreement holds for all m >= M[n]; ``M`` is computed
    for n in N .. N + span.
    """

    radius: int
    N: int
    M: dict[int, int]

    def as_pair(self) -> tuple[int, int]:
        return self.N, self.M[self.N]


def _agrees(n: int, m: int, pts, corner_sig) -> bool:
    p = AType(1, m, n)
    return all(eval_point(p, x) == v for x, v in zip(pts, corner_sig))


def ww_limit_check(window_radius: int, span: int = 8) -> WWThresholds:
    """Smallest (N, M(n)) such that AType(+, m, n) equals Corner(+, +) on the window.

    Inside the window |i|, |j| <= R and |k| <= R^2, so every indicator in the
    AType formula has a fixed value once m exceeds ``(n + R) R + R^2``; the
    scan over m up to that bound (plus a margin) is therefore exhaustive.
    """
    R = window_radius
    pts = window(R)
    corner_sig = [eval_point(Corner(1, 1), x) for x in pts]

    def bound(n: int) -> int:
        return (abs(n) + R) * R + R * R + 2

    def threshold(n: int) -> int | None:
        top = bound(n)
        if not _agrees(n, top, pts, corner_sig) or not _agrees(n, 10 * top + 7, pts, corner_sig):
            return None
        last_bad = -1
        for m in range(top + 1):
            if not _agrees(n, m, pts, corner_sig):
                last_bad = m
        return last_bad + 1

    n_scan = R + 1 + span
    ths = {n: threshold(n) for n in range(n_scan + 1)}
    N = 0
    for n in range(n_scan + 1):
        if ths[n] is None:
            N = n + 1
    if N > n_scan - span:
        raise RuntimeError(f"no stable threshold found for radius {R}")
    return WWThresholds(R, N, {n: ths[n] for n in range(N, n_scan + 1)})


# ---------------------------------------------------------------- injectivity


def points_separate(points: Iterable[BusemannPoint], window_radius: int) -> tuple[bool, list[tuple]]:
    """Do the points have pairwise distinct restrictions to the window?"""
    pts = window(window_radius)
    seen: dict[tuple, BusemannPoint] = {}
    collisions = []
    for p in points:
        sig = tuple(eval_point(p, x) for x in pts)
        if sig in seen:
            collisions.append((seen[sig], p))
        else:
            seen[sig] = p
    return not collisions, collisions


CORNERS = tuple(Corner(ea, eb) for ea, eb in product((1, -1), repeat=2))


def parameter_grid(bound: int) -> list[BusemannPoint]:
    """The four corners plus every AType / BType with parameters in [-bound, bound]."""
    rng = range(-bound, bound + 1)
    pts: list[BusemannPoint] = list(CORNERS)
    for eps in (1, -1):
        pts += [AType(eps, m, n) for m in rng for n in rng]
        pts += [BType(eps, m, l) for m in rng for l in rng]  # noqa: E741
    return pts

