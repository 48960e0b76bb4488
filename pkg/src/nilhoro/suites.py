"""Named verification suites: formula against oracle, boundary, facets, the class-3 group.

Each check returns a ``Check`` with an expected and an actual value that are
both JSON-friendly; a check passes iff they are equal.  ``BudgetExceeded``
raised inside a check is reported with its own status, never as a pass.
The acceptance criteria are grouped in ``CRITERIA`` so the test suite and
``nilhoro verify`` run exactly the same code.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable

from .boundary import (
    CORNERS,
    AType,
    Corner,
    GammaPath,
    LambdaPath,
    TwoLetterPath,
    act,
    eval_point,
    limit_of_standard_path,
    parameter_grid,
    verify_convergence,
    window,
)
from .example1 import EXAMPLE1, G_ELEM, H_ELEM, eta_excess, ex1_inv, ex1_mul, lemma_perm_check, staircase_exponents
from .facets import (
    abelianization,
    build_facet_word,
    check_facet_words_geodesic,
    facet_limit,
    finite_orbit_census,
    polytope_for,
    rearrange_search,
    simple_commutators,
)
from .groups import H3, evaluate_word, h3_inv, h3_mul
from .metric import Transition, applicable_cases, classify_transitions, h3_norm, reverse_transitions
from .oracle import BudgetExceeded, bfs_ball, bfs_norm, horofunction_snapshot

__all__ = ["CRITERIA", "Check", "SUITES", "SuiteConfig", "SuiteReport", "run_criterion", "verify_suite"]

PASS, FAIL, BUDGET = "pass", "fail", "budget_exceeded"


@dataclass
class Check:
    id: str
    status: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {"id": self.id, "status": self.status, "expected": self.expected, "actual": self.actual}


@dataclass
class SuiteReport:
    name: str
    checks: list[Check]
    wall_time: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self, timing: bool = False) -> dict:
        out = {"suite": self.name, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


@dataclass
class SuiteConfig:
    radius: int = 12  # metric suite: formula vs BFS ball radius
    window: int = 4  # boundary and facet windows
    max_len: int = 12  # longest facet/two-letter word checked exhaustively
    t_max: int = 40  # probe budget along paths
    example1_l: int = 3  # largest l for the class-3 (ab)^l distance checks
    example1_budget: int = 10  # BFS radius for the class-3 facet limit
    reversal_len: int = 8  # longest word in the transition-reversal check
    seed: int = 0


def _check(cid: str, expected, actual_fn: Callable[[], object]) -> Check:
    try:
        actual = actual_fn()
    except BudgetExceeded as exc:
        return Check(cid, BUDGET, expected, str(exc))
    return Check(cid, PASS if actual == expected else FAIL, expected, actual)


def _first(items, limit: int = 5) -> list:
    return [list(x) if isinstance(x, tuple) else x for x in items[:limit]]


# ------------------------------------------------------------------ metric


def _formula_vs_bfs(cfg: SuiteConfig) -> Check:
    def run():
        ball = bfs_ball(H3, cfg.radius, max(cfg.radius, 12))
        return _first([g for g, d in ball.distances.items() if h3_norm(g) != d])

    return _check(f"metric.formula_vs_bfs_R{cfg.radius}", [], run)


def _case_overlap(cfg: SuiteConfig) -> Check:
    def run():
        bad = []
        for g in window(min(cfg.radius, 10)):
            vals = set(applicable_cases(g).values())
            if len(vals) != 1:
                bad.append(g)
        return _first(bad)

    return _check("metric.case_overlap", [], run)


def _symmetry(cfg: SuiteConfig) -> Check:
    return _check(
        "metric.symmetry",
        [],
        lambda: _first([g for g in window(min(cfg.radius, 10)) if h3_norm(g) != h3_norm(h3_inv(g))]),
    )


def _two_letter_powers(cfg: SuiteConfig) -> Check:
    def run():
        norm = bfs_norm(H3, 6)
        out = {}
        for ea, eb in product((1, -1), repeat=2):
            w = ("a" if ea > 0 else "A") + ("b" if eb > 0 else "B")
            out[w] = [norm(evaluate_word(H3, w * n)) for n in range(1, 7)]
        return out

    expected = {w: [2 * n for n in range(1, 7)] for w in ("ab", "aB", "Ab", "AB")}
    return _check("metric.two_letter_powers", expected, run)


def _two_letter_words_geodesic(cfg: SuiteConfig) -> Check:
    alphabets = ["ab", "bA", "AB", "Ba"]

    def run():
        # a word is geodesic iff the whole word is tight, since prefixes of
        # a tight word are tight; so one lookup per word suffices
        norm = bfs_norm(H3, max((cfg.max_len + 1) // 2, 12))
        out = {}
        for v in alphabets:
            count = bad = 0
            for n in range(cfg.max_len + 1):
                for letters in product(v, repeat=n):
                    count += 1
                    if norm(evaluate_word(H3, "".join(letters))) != n:
                        bad += 1
            out[v] = {"words": count, "non_geodesic": bad}
        return out

    expected = {v: {"words": 2 ** (cfg.max_len + 1) - 1, "non_geodesic": 0} for v in alphabets}
    return _check(f"metric.two_letter_words_geodesic_L{cfg.max_len}", expected, run)


# ------------------------------------------------------------------ boundary


def _convergence_standard(cfg: SuiteConfig) -> Check:
    def run():
        failures = []
        worst = 0
        for eps, m, n in product((1, -1), range(-2, 3), range(-2, 3)):
            for path in (GammaPath(eps, m, n), LambdaPath(eps, m, n)):
                res = verify_convergence(path, limit_of_standard_path(path), cfg.window, t_max=cfg.t_max)
                if not res.stabilised:
                    failures.append(str(path))
                else:
                    worst = max(worst, res.T)
        return {"failures": failures, "within_t_max": worst <= cfg.t_max}

    return _check("boundary.convergence_gamma_lambda", {"failures": [], "within_t_max": True}, run)


TWO_LETTER_PERIODS = ("ab", "ba", "abba", "aab", "abbb")


def _convergence_two_letter(cfg: SuiteConfig) -> Check:
    def run():
        failures = []
        for ea, eb in product((1, -1), repeat=2):
            swap = {"a": "a" if ea > 0 else "A", "b": "b" if eb > 0 else "B"}
            for period in TWO_LETTER_PERIODS:
                path = TwoLetterPath.from_word("".join(swap[ch] for ch in period))
                res = verify_convergence(path, Corner(ea, eb), cfg.window, t_max=cfg.t_max)
                if not res.stabilised:
                    failures.append(str(path))
        return failures

    return _check("boundary.convergence_two_letter", [], run)


def _action_definitional(cfg: SuiteConfig) -> Check:
    def run():
        xs = window(5)
        bad = []
        for s, p in product(H3.letters, parameter_grid(3)):
            g = H3.generators[s]
            gi = h3_inv(g)
            q = act(g, p)
            base = eval_point(p, gi)
            for x in xs:
                if eval_point(q, x) != eval_point(p, h3_mul(gi, x)) - base:
                    bad.append(f"{s} {p} {tuple(x)}")
                    break
        return _first(bad)

    return _check("boundary.action_definitional", [], run)


def _corners_fixed(cfg: SuiteConfig) -> Check:
    return _check(
        "boundary.corners_fixed",
        [],
        lambda: _first([f"{g} {p}" for g in window(cfg.window) for p in CORNERS if act(g, p) != p]),
    )


def _action_law(cfg: SuiteConfig) -> Check:
    def run():
        rng = random.Random(cfg.seed)
        ball = window(4)
        grid = parameter_grid(3)
        bad = []
        for _ in range(2000):
            g, h, p = rng.choice(ball), rng.choice(ball), rng.choice(grid)
            if act(g, act(h, p)) != act(h3_mul(g, h), p):
                bad.append(f"{g} {h} {p}")
        return _first(bad)

    return _check("boundary.action_law", [], run)


def _census(cfg: SuiteConfig) -> Check:
    def run():
        census = finite_orbit_census(parameter_grid(3), cfg.window)
        small = [str(r["point"]) for r in census.rows if r["kind"] != "singleton" and r["orbit_size"] < 9]
        return {"singletons": sorted(str(p) for p in census.singletons), "non_singleton_orbits_below_9": small}

    expected = {"singletons": sorted(str(p) for p in CORNERS), "non_singleton_orbits_below_9": []}
    return _check("boundary.finite_orbit_census", expected, run)


WW_N = range(8, 26)
WW_M = (100, 101, 128, 250, 1000, 10**6)


def _webster_winchester(cfg: SuiteConfig) -> Check:
    def run():
        pts = window(cfg.window)
        corner = [eval_point(Corner(1, 1), x) for x in pts]
        bad = []
        for n, m in product(WW_N, WW_M):
            p = AType(1, m, n)
            if any(eval_point(p, x) != v for x, v in zip(pts, corner)):
                bad.append([m, n])
        return _first(bad)

    return _check("boundary.webster_winchester", [], run)


def _lipschitz_points(cfg: SuiteConfig) -> Check:
    def run():
        pts = window(6)
        index = {tuple(x): x for x in pts}
        bad = []
        for p in parameter_grid(2):
            vals = {tuple(x): eval_point(p, x) for x in pts}
            if vals[(0, 0, 0)] != 0:
                bad.append(f"{p} at e")
                continue
            for key, x in index.items():
                for s in H3.letters:
                    y = tuple(h3_mul(x, H3.generators[s]))
                    if y in vals and abs(vals[y] - vals[key]) > 1:
                        bad.append(f"{p} {key} {s}")
                        break
        return _first(bad)

    return _check("boundary.points_lipschitz", [], run)


# ------------------------------------------------------------------ facets


FACET_ALPHABETS = [["A", "B"], ["A", "b"], ["B", "a"], ["a", "b"]]


def _polytope_h3(cfg: SuiteConfig) -> Check:
    def run():
        P = polytope_for(H3)
        return {
            "vertices": sorted(list(v) for v in P.vertices),
            "facets": len(P.facets),
            "alphabets": sorted(sorted(f.alphabet) for f in P.facets),
        }

    expected = {"vertices": [[-1, 0], [0, -1], [0, 1], [1, 0]], "facets": 4, "alphabets": FACET_ALPHABETS}
    return _check("facets.h3_square", expected, run)


def _facet_words_geodesic(cfg: SuiteConfig) -> Check:
    def run():
        norm = bfs_norm(H3, max((cfg.max_len + 1) // 2, 12))
        return {"".join(f.alphabet): check_facet_words_geodesic(H3, f.alphabet, cfg.max_len, norm)
                for f in polytope_for(H3).facets}

    expected = {"".join(v): True for v in FACET_ALPHABETS}
    return _check(f"facets.words_geodesic_L{cfg.max_len}", expected, run)


def _facet_word_limits(cfg: SuiteConfig) -> Check:
    def run():
        out = {}
        for f in polytope_for(H3).facets:
            # list the a-letter first so the {a, b} facet gives "abba"
            v = sorted(f.alphabet, key=str.lower)
            w = build_facet_word(H3, v, 2)
            out["".join(v)] = str(facet_limit(H3, w, cfg.window, t_max=cfg.t_max))
        out["word_ab"] = build_facet_word(H3, "ab", 2)
        return out

    expected = {"ab": "corner:++", "aB": "corner:+-", "Ab": "corner:-+", "AB": "corner:--", "word_ab": "abba"}
    return _check("facets.facet_word_limits", expected, run)


def _rearrange_soundness(cfg: SuiteConfig) -> Check:
    def run():
        bad = []
        for group, v, depth in ((H3, "ab", 2), (EXAMPLE1, "ab", 3)):
            for level in simple_commutators(group, v, depth).values():
                for label, c in level:
                    x, y = rearrange_search(group, c, v, 8)
                    if group.mul(c, evaluate_word(group, x)) != evaluate_word(group, y):
                        bad.append(f"{group.name} {label}")
        return bad

    return _check("facets.rearrange_soundness", [], run)


def _phi_homomorphism(cfg: SuiteConfig) -> Check:
    def run():
        bad = []
        for group in (H3, EXAMPLE1):
            phi = abelianization(group)
            ball = bfs_ball(group, 4 if group is H3 else 3).elements()
            for g, h in product(ball, repeat=2):
                if phi(group.mul(g, h)) != tuple(p + q for p, q in zip(phi(g), phi(h))):
                    bad.append(f"{group.name} {tuple(g)} {tuple(h)}")
                    break
        return bad

    return _check("facets.phi_homomorphism", [], run)


# ------------------------------------------------------------------ example1


def _staircase_vs_mul(cfg: SuiteConfig) -> Check:
    def run():
        bad, count = [], 0
        for n in range(11):
            for letters in product("ab", repeat=n):
                w = "".join(letters)
                count += 1
                u = evaluate_word(EXAMPLE1, w)
                if (u.i, u.j, u.k) != staircase_exponents(w) or (u.l, u.m) != (w.count("b"), w.count("a")):
                    bad.append(w)
        return {"words": count, "mismatches": _first(bad)}

    return _check("example1.staircase_vs_collection", {"words": 2**11 - 1, "mismatches": []}, run)


def _relations(cfg: SuiteConfig) -> Check:
    def comm(u, v):
        return ex1_mul(ex1_mul(ex1_inv(u), ex1_inv(v)), ex1_mul(u, v))

    def run():
        a, b = EXAMPLE1.generators["a"], EXAMPLE1.generators["b"]
        c = comm(a, b)
        out = {"c": list(c), "g": list(comm(a, c)), "h": list(comm(b, c))}
        out["central"] = all(comm(s, t) == EXAMPLE1.identity for s in (a, b) for t in (G_ELEM, H_ELEM))
        return out

    expected = {"c": [0, 0, 1, 0, 0], "g": list(G_ELEM), "h": list(H_ELEM), "central": True}
    return _check("example1.relations", expected, run)


def _associativity(cfg: SuiteConfig) -> Check:
    def run():
        rng = random.Random(cfg.seed)
        ball = bfs_ball(EXAMPLE1, 3).elements()
        bad = []
        for _ in range(1000):
            u, v, w = rng.choice(ball), rng.choice(ball), rng.choice(ball)
            if ex1_mul(ex1_mul(u, v), w) != ex1_mul(u, ex1_mul(v, w)):
                bad.append([list(u), list(v), list(w)])
        return _first(bad)

    return _check("example1.associativity", [], run)


def _lemma_perm(cfg: SuiteConfig) -> Check:
    return _check("example1.lemma_perm", {l: True for l in range(1, 6)},
                  lambda: {l: lemma_perm_check(l)[0] for l in range(1, 6)})


def _ab_powers(cfg: SuiteConfig) -> Check:
    def run():
        norm = bfs_norm(EXAMPLE1)
        return [norm(evaluate_word(EXAMPLE1, "ab" * l)) for l in range(1, cfg.example1_l + 1)]

    return _check("example1.ab_powers_geodesic", [2 * l for l in range(1, cfg.example1_l + 1)], run)


def _eta(cfg: SuiteConfig) -> Check:
    def run():
        return {l: eta_excess(l) >= 2 for l in range(1, cfg.example1_l + 1)}

    return _check("example1.eta_excess_at_least_2", {l: True for l in range(1, cfg.example1_l + 1)}, run)


def _xi_f_at_g(cfg: SuiteConfig) -> Check:
    def run():
        w = build_facet_word(EXAMPLE1, "ab", 3)
        snap = facet_limit(EXAMPLE1, w, 0, window=[G_ELEM], budget=cfg.example1_budget)
        key = tuple(G_ELEM)
        return {"value": snap.values[key], "certified": key in snap.certified}

    return _check("example1.xi_F_at_g", {"value": 0, "certified": True}, run)


# ------------------------------------------------------------------ properties


def _group_axioms(cfg: SuiteConfig) -> Check:
    def run():
        rng = random.Random(cfg.seed)
        bad = []
        for group in (H3, EXAMPLE1):
            ball = bfs_ball(group, 4 if group is H3 else 3).elements()
            e = group.identity
            for _ in range(1000):
                g, h, k = (rng.choice(ball) for _ in range(3))
                ok = (
                    group.mul(group.mul(g, h), k) == group.mul(g, group.mul(h, k))
                    and group.mul(g, e) == g == group.mul(e, g)
                    and group.mul(g, group.inv(g)) == e
                )
                if not ok:
                    bad.append(f"{group.name} {tuple(g)} {tuple(h)} {tuple(k)}")
        return _first(bad)

    return _check("properties.group_axioms", [], run)


def _matrix_agreement(cfg: SuiteConfig) -> Check:
    def matmul(p, q):
        return [[sum(p[i][t] * q[t][j] for t in range(3)) for j in range(3)] for i in range(3)]

    def run():
        ball = window(5)
        return _first([f"{g} {h}" for g, h in product(ball, repeat=2)
                       if h3_mul(g, h).matrix() != matmul(g.matrix(), h.matrix())])

    return _check("properties.h3_matrix_agreement", [], run)


def _horofunction_lipschitz(cfg: SuiteConfig) -> Check:
    def run():
        rng = random.Random(cfg.seed)
        far = window(10)
        pts = window(3)
        bad = []
        for z in rng.sample(far, 40):
            snap = horofunction_snapshot(H3, z, norm=h3_norm, window=pts)
            if snap[(0, 0, 0)] != 0:
                bad.append(f"{z} at e")
            for x in pts:
                for s in H3.letters:
                    y = tuple(h3_mul(x, H3.generators[s]))
                    if y in snap.values and abs(snap[y] - snap[x]) > 1:
                        bad.append(f"{z} {x} {s}")
        return _first(bad)

    return _check("properties.horofunction_lipschitz", [], run)


def balanced_reversal_sets(word: str):
    """Non-empty sets of non-overlapping transitions with as many positive as negative."""
    trans = classify_transitions(word)
    pos = [i for i, k in trans if k is Transition.POSITIVE]
    neg = [i for i, k in trans if k is Transition.NEGATIVE]
    for r in range(1, min(len(pos), len(neg)) + 1):
        for ps in combinations(pos, r):
            for ns in combinations(neg, r):
                chosen = sorted(ps + ns)
                if all(q - p >= 2 for p, q in zip(chosen, chosen[1:])):
                    yield chosen


def _transition_reversal(cfg: SuiteConfig) -> Check:
    def run():
        bad, count = [], 0
        for n in range(2, cfg.reversal_len + 1):
            for letters in product("ABab", repeat=n):
                w = "".join(letters)
                g = evaluate_word(H3, w)
                geo = h3_norm(g) == n
                for chosen in balanced_reversal_sets(w):
                    count += 1
                    v = reverse_transitions(w, chosen)
                    h = evaluate_word(H3, v)
                    if h != g or (h3_norm(h) == n) != geo:
                        bad.append(f"{w} {chosen}")
        return {"mismatches": _first(bad), "reversals_checked": count > 0}

    return _check(f"properties.transition_reversal_L{cfg.reversal_len}",
                  {"mismatches": [], "reversals_checked": True}, run)


# ------------------------------------------------------------------ registry


CRITERIA: dict[int, list[Callable[[SuiteConfig], Check]]] = {
    1: [_formula_vs_bfs],
    2: [_two_letter_powers],
    3: [_two_letter_words_geodesic],
    4: [_convergence_standard, _convergence_two_letter],
    5: [_action_definitional, _corners_fixed],
    6: [_census],
    7: [_webster_winchester],
    8: [_polytope_h3, _facet_words_geodesic, _facet_word_limits],
    9: [_staircase_vs_mul, _lemma_perm, _ab_powers, _eta],
    10: [_group_axioms, _matrix_agreement, _phi_homomorphism, _horofunction_lipschitz, _lipschitz_points,
         _transition_reversal, _case_overlap, _action_law],
}

SUITES: dict[str, list[Callable[[SuiteConfig], Check]]] = {
    "metric": [_formula_vs_bfs, _case_overlap, _symmetry, _two_letter_powers, _two_letter_words_geodesic],
    "boundary": [_convergence_standard, _convergence_two_letter, _action_definitional, _corners_fixed,
                 _action_law, _census, _webster_winchester, _lipschitz_points],
    "facets": [_polytope_h3, _facet_words_geodesic, _facet_word_limits, _rearrange_soundness, _phi_homomorphism],
    "example1": [_staircase_vs_mul, _relations, _associativity, _lemma_perm, _ab_powers, _eta, _xi_f_at_g],
}


def _run(name: str, fns, cfg: SuiteConfig) -> SuiteReport:
    start = time.perf_counter()
    checks = [fn(cfg) for fn in fns]
    return SuiteReport(name, checks, time.perf_counter() - start)


def run_criterion(number: int, cfg: SuiteConfig | None = None) -> SuiteReport:
    return _run(f"criterion {number}", CRITERIA[number], cfg or SuiteConfig())


def verify_suite(name: str, cfg: SuiteConfig | None = None) -> SuiteReport:
    cfg = cfg or SuiteConfig()
    if name == "all":
        fns = [fn for suite in SUITES.values() for fn in suite]
    elif name in SUITES:
        fns = SUITES[name]
    else:
        raise ValueError(f"unknown suite {name!r}; choose {', '.join([*SUITES, 'all'])}")
    return _run(name, fns, cfg)
