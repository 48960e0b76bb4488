"""Abelianisation images, the generator polytope and its facets, and facet words.

Given a group with generating set S and a homomorphism phi onto Z^N, the
polytope is P = conv(phi(S)).  Each facet F carries the rational functional
f with f == 1 on F and f < 1 on the rest of P; its alphabet V is the set of
generators phi sends into F.  Words over V are geodesic, and a periodic
word w_F over V whose period contains the rearranging pairs (x_c, y_c) for
every simple commutator c defines the geodesic whose limit is the facet's
fixed Busemann point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from .boundary import BusemannPoint, Corner, TwoLetterPath, act, verify_convergence
from .boundary import window as h3_window
from .groups import Group, evaluate_word
from .oracle import BudgetExceeded, bfs_ball, bfs_norm, default_budget, prefix_elements

__all__ = [
    "AbelianizationMap",
    "Facet",
    "FacetLimitSnapshot",
    "LatticePolytope",
    "OrbitCensus",
    "abelianization",
    "build_facet_word",
    "check_facet_words_geodesic",
    "convex_hull",
    "facet_alphabet",
    "facet_limit",
    "facet_of_word",
    "finite_orbit_census",
    "polytope_for",
    "project_generators",
    "rearrange_search",
    "simple_commutators",
    "stabilizer_check",
]

Vector = tuple[int, ...]


@dataclass(frozen=True)
class AbelianizationMap:
    group_name: str
    dim: int
    fn: Callable[[tuple], Vector]

    def __call__(self, g) -> Vector:
        return self.fn(g)


def abelianization(group: Group) -> AbelianizationMap:
    """The projection onto the free part of the abelianisation for the built-in groups."""
    if group.name == "h3":
        return AbelianizationMap("h3", 2, lambda g: (g[0], g[1]))
    if group.name == "example1":
        # g^i h^j c^k b^l a^m -> (l, m)
        return AbelianizationMap("example1", 2, lambda g: (g[3], g[4]))
    if group.name.startswith("z"):
        d = len(group.identity)
        return AbelianizationMap(group.name, d, lambda g: tuple(g))
    raise ValueError(f"no abelianisation map known for {group.name}")


def project_generators(group: Group, phi: AbelianizationMap | None = None) -> list[tuple[str, Vector]]:
    phi = abelianization(group) if phi is None else phi
    return [(s, tuple(phi(group.generators[s]))) for s in group.letters]


@dataclass(frozen=True)
class Facet:
    functional: tuple[Fraction, ...]
    vertices: tuple[Vector, ...]
    alphabet: tuple[str, ...] = ()

    def value(self, v: Sequence[int]) -> Fraction:
        return sum((f * c for f, c in zip(self.functional, v)), Fraction(0))

    def to_json(self) -> dict:
        return {
            "functional": [[f.numerator, f.denominator] for f in self.functional],
            "vertices": [list(v) for v in self.vertices],
            "alphabet": list(self.alphabet),
        }


@dataclass(frozen=True)
class LatticePolytope:
    vertices: tuple[Vector, ...]
    facets: tuple[Facet, ...]

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices], "facets": [f.to_json() for f in self.facets]}


def _rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(v) for v in row] for row in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                factor = m[r][col] / m[rank][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _normal(points: Sequence[Vector]) -> Vector:
    """A nonzero integer normal to the affine hull of N affinely independent points in Z^N."""
    p0 = points[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in points[1:]]
    n = len(p0)
    if n == 1:
        return (1,)
    if n == 2:
        (dx, dy), = diffs
        return (-dy, dx)
    if n == 3:
        (a1, a2, a3), (b1, b2, b3) = diffs
        return (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    raise ValueError("only dimensions 1, 2 and 3 are supported")


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """Exact hull of a point set in Z^N (N <= 3) by testing every spanned hyperplane.

    The origin must lie in the interior so that each facet can be written as
    {f = 1}; that always holds for the image of a symmetric generating set.
    """
    pts = sorted({tuple(int(c) for c in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    N = len(pts[0])
    if N not in (1, 2, 3):
        raise ValueError(f"dimension {N} is not supported (1, 2 or 3 only)")
    span = _rank([tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]]) if len(pts) > 1 else 0
    if span < N:
        raise ValueError(f"points span an affine subspace of dimension {span}, not {N}")

    facets: dict[tuple[Fraction, ...], list[Vector]] = {}
    for subset in combinations(pts, N):
        if N > 1 and _rank([tuple(a - b for a, b in zip(p, subset[0])) for p in subset[1:]]) < N - 1:
            continue
        normal = _normal(subset)
        offset = sum(a * b for a, b in zip(normal, subset[0]))
        vals = [sum(a * b for a, b in zip(normal, p)) for p in pts]
        if all(v <= offset for v in vals):
            pass
        elif all(v >= offset for v in vals):
            normal, offset = tuple(-a for a in normal), -offset
        else:
            continue
        if offset <= 0:
            raise ValueError("the origin is not in the interior of the hull")
        functional = tuple(Fraction(a, offset) for a in normal)
        if functional not in facets:
            facets[functional] = [p for p in pts if sum(a * b for a, b in zip(normal, p)) == offset]

    # A point is a vertex iff the normals of the facets through it span R^N.
    vertices = []
    for p in pts:
        through = [f for f, on in facets.items() if p in on]
        if through and _rank([[x for x in f] for f in through]) == N:
            vertices.append(p)
    vset = set(vertices)
    facet_list = tuple(
        Facet(f, tuple(v for v in on if v in vset)) for f, on in sorted(facets.items(), key=lambda kv: kv[1])
    )
    return LatticePolytope(tuple(vertices), facet_list)


def facet_alphabet(facet: Facet, projected: Sequence[tuple[str, Vector]]) -> tuple[str, ...]:
    """Letters whose image lies on the facet (f = 1).  Raises if some image has f > 1."""
    out = []
    for s, v in projected:
        val = facet.value(v)
        if val > 1:
            raise ValueError(f"generator {s} maps outside the polytope (f = {val})")
        if val == 1:
            out.append(s)
    return tuple(out)


def polytope_for(group: Group, phi: AbelianizationMap | None = None) -> LatticePolytope:
    """conv(phi(S)) with each facet's alphabet filled in."""
    projected = project_generators(group, phi)
    hull = convex_hull(v for _, v in projected)
    facets = tuple(Facet(f.functional, f.vertices, facet_alphabet(f, projected)) for f in hull.facets)
    return LatticePolytope(hull.vertices, facets)


def check_facet_words_geodesic(group: Group, alphabet: Sequence[str], length: int, norm=None) -> bool:
    """Is every word over ``alphabet`` of length <= ``length`` geodesic?

    Works layer by layer on the set of elements spelled by words of each
    length, which covers every word and every prefix exhaustively.
    """
    norm = bfs_norm(group, max((length + 1) // 2, 1)) if norm is None else norm
    gens = [group.generators[s] for s in alphabet]
    layer = {group.identity}
    for k in range(1, length + 1):
        layer = {group.mul(g, s) for g in layer for s in gens}
        if any(norm(g) != k for g in layer):
            return False
    return True


def _positive_words(alphabet: Sequence[str], max_len: int) -> Iterable[str]:
    for n in range(max_len + 1):
        for letters in product(sorted(alphabet), repeat=n):
            yield "".join(letters)


def rearrange_search(group: Group, g, alphabet: Sequence[str], max_len: int) -> tuple[str, str] | None:
    """Words x, y over ``alphabet`` with g * x = y, both of length <= max_len.

    Minimises max(|x|, |y|), then |x| + |y|, then (x, y) lexicographically.
    """
    spelled: dict[tuple, list[str]] = {}
    for w in _positive_words(alphabet, max_len):
        spelled.setdefault(tuple(evaluate_word(group, w)), []).append(w)
    best = None
    for x in _positive_words(alphabet, max_len):
        gx = tuple(group.mul(g, evaluate_word(group, x)))
        for y in spelled.get(gx, ()):
            rank = (max(len(x), len(y)), len(x) + len(y), x, y)
            if best is None or rank < best:
                best = rank
    return None if best is None else (best[2], best[3])


def _commutator(group: Group, u, v):
    inv, mul = group.inv, group.mul
    return mul(mul(inv(u), inv(v)), mul(u, v))


def simple_commutators(group: Group, alphabet: Sequence[str], depth: int) -> dict[int, list[tuple[str, tuple]]]:
    """Nontrivial simple commutators of each weight 1..depth, deduplicated by normal form.

    Weight 1 is the alphabet itself; weight j+1 holds [c, s] for c of weight
    j and s in the alphabet.  Trivial commutators are dropped, so a weight
    beyond the nilpotency class comes back empty.
    """
    out = {1: [(s, group.generators[s]) for s in alphabet]}
    for w in range(2, depth + 1):
        seen, level = set(), []
        for label, c in out[w - 1]:
            for s in alphabet:
                el = _commutator(group, c, group.generators[s])
                if el == group.identity or tuple(el) in seen:
                    continue
                seen.add(tuple(el))
                level.append((f"[{label},{s}]", el))
        out[w] = level
    return out


def build_facet_word(group: Group, alphabet: Sequence[str], depth: int, max_len: int = 8) -> str:
    """A word over the alphabet containing x_c and y_c for every simple commutator c.

    Blocks are appended in commutator order, skipping any already present as
    a contiguous subword.
    """
    word = ""
    for weight, level in simple_commutators(group, alphabet, depth).items():
        for label, c in level:
            found = rearrange_search(group, c, alphabet, max_len)
            if found is None:
                raise ValueError(f"no rearrangement of {label} with words of length <= {max_len}")
            for block in found:
                if block not in word:
                    word += block
    return word


@dataclass(frozen=True)
class FacetLimitSnapshot:
    """Limit values of psi along a facet geodesic on a finite window.

    ``values[x]`` is the smallest psi_{z_t}(x) seen over the probed prefixes.
    Along a word over a facet alphabet psi_{z_t}(x) never increases in t and
    is bounded below by -f(phi(x)), so a value meeting that bound is the
    exact limit; those points are listed in ``certified``.
    """

    word: str
    values: dict
    certified: frozenset
    probes: int

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "probes": self.probes,
            "values": [
                {"element": list(x), "value": v, "certified": x in self.certified} for x, v in self.values.items()
            ],
        }


def facet_of_word(group: Group, word: str) -> Facet:
    """The facet of the generator polytope whose alphabet contains every letter of ``word``."""
    letters = set(word)
    for f in polytope_for(group).facets:
        if letters <= set(f.alphabet):
            return f
    raise ValueError(f"the letters of {word!r} do not all lie on one facet")


def facet_limit(
    group: Group,
    facet_word: str,
    window_radius: int,
    t_max: int | None = None,
    window: Sequence | None = None,
    budget: int | None = None,
):
    """Limit of the geodesic spelled by facet_word repeated forever.

    For H3 this returns the Corner found by ``verify_convergence`` (raising if
    the path does not settle on it).  For other groups it returns a
    FacetLimitSnapshot computed with a BFS ball of radius ``budget``, probing
    prefixes z_t up to twice that radius.
    """
    if not facet_word:
        raise ValueError("empty facet word")
    facet = facet_of_word(group, facet_word)
    if group.name == "h3":
        path = TwoLetterPath.from_word(facet_word)
        p = Corner(path.ea, path.eb)
        res = verify_convergence(path, p, window_radius, t_max=40 if t_max is None else t_max)
        if not res.stabilised:
            raise RuntimeError(f"path {path} did not settle on {p} within t = {res.probes[-1]}")
        return p

    phi = abelianization(group)
    budget = default_budget(group) if budget is None else budget
    ball = bfs_ball(group, budget, budget)
    if window is None:
        window = bfs_ball(group, window_radius).elements()
    window = [group.make(tuple(x)) for x in window]
    reach = 2 * budget
    t_max = reach if t_max is None else min(t_max, reach)
    word = (facet_word * (t_max // len(facet_word) + 1))[:t_max]
    pts = prefix_elements(group, word)
    mul, inv = group.mul, group.inv
    values, certified = {}, set()
    for x in window:
        key, xi = tuple(x), inv(x)
        floor = -facet.value(phi(x))
        best = ball.distance(xi)
        if best is None:
            raise BudgetExceeded(f"{key} is beyond the {group.name} oracle reach of {reach}")
        # psi_{z_t}(x) never increases along the path, so each probe only asks
        # whether it can beat the current value
        for t, z in enumerate(pts[1:], start=1):
            if best == floor:
                break
            d = ball.distance(mul(xi, z), best + t - 1)
            if d is not None:
                best = d - t
        values[key] = best
        if best == floor:
            certified.add(key)
    return FacetLimitSnapshot(facet_word, values, frozenset(certified), len(pts) - 1)


def stabilizer_check(p: BusemannPoint, ball_radius: int) -> list[tuple]:
    """Elements of the H3 ball of the given radius that fix ``p``."""
    return [g for g in h3_window(ball_radius) if act(g, p) == p]


@dataclass
class OrbitCensus:
    radius: int
    rows: list[dict]

    @property
    def singletons(self) -> list[BusemannPoint]:
        return [r["point"] for r in self.rows if r["kind"] == "singleton"]

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "singletons": [str(p) for p in self.singletons],
            "rows": [{**r, "point": str(r["point"])} for r in self.rows],
        }


def finite_orbit_census(points: Iterable[BusemannPoint], ball_radius: int) -> OrbitCensus:
    """Parameter-level orbits of each point under the H3 ball.

    A point is "singleton" if every ball element fixes it, and "unbounded" if
    its orbit is still growing at the edge of the ball (radius r vs r - 1).
    """
    inner = h3_window(ball_radius - 1) if ball_radius > 0 else []
    outer = h3_window(ball_radius)
    rows = []
    for p in points:
        orbit = {act(g, p) for g in outer}
        orbit_inner = {act(g, p) for g in inner} or {p}
        if len(orbit) == 1:
            kind = "singleton"
        elif len(orbit) > len(orbit_inner):
            kind = "unbounded"
        else:
            kind = "bounded"
        rows.append({"point": p, "orbit_size": len(orbit), "inner_orbit_size": len(orbit_inner), "kind": kind})
    return OrbitCensus(ball_radius, rows)

