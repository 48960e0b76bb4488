from __future__ import annotations

import random
from itertools import product
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilhoro.example1 import EXAMPLE1
from nilhoro.groups import H3, evaluate_word, get_group, h3_inv, h3_mul, zd_group
from nilhoro.oracle import (
    BudgetExceeded,
    _build_ball,
    bfs_ball,
    bfs_norm,
    geodesic_words_to,
    horofunction_snapshot,
    is_geodesic_word,
    oracle_dist,
    rejoin_witness,
)


def test_small_balls():
    assert len(bfs_ball(H3, 0)) == 1
    assert len(bfs_ball(H3, 1)) == 5
    assert len(bfs_ball(H3, 2)) == 17
    # sphere sizes from plain word enumeration
    seen = {}
    for n in range(5):
        for letters in product("aAbB", repeat=n):
            seen.setdefault(evaluate_word(H3, "".join(letters)), n)
    ball = bfs_ball(H3, 4)
    for r in range(5):
        assert len(ball.sphere(r)) == sum(1 for d in seen.values() if d == r)


def test_oracle_dist_examples():
    c = (0, 0, 1)
    assert oracle_dist(H3, c, 4) == 4
    assert oracle_dist(H3, (0, 0, 9), 4) is None
    assert oracle_dist(H3, (0, 0, 9), 20) == 12  # beyond the budget radius, by meeting in the middle
    with pytest.raises(BudgetExceeded):
        oracle_dist(H3, c, 25)
    with pytest.raises(BudgetExceeded):
        bfs_ball(H3, 13)
    with pytest.raises(ValueError):
        bfs_ball(H3, -1)


@pytest.mark.parametrize("group, small", [(H3, 5), (EXAMPLE1, 3), (get_group("z2"), 4)])
def test_meet_in_the_middle_matches_a_full_ball(group, small):
    inner = bfs_ball(group, small, small)
    outer = bfs_ball(group, 2 * small, 2 * small)
    for g, d in outer.distances.items():
        assert inner.distance(g) == d
        assert inner.distance(g, d - 1) is None
    # something just outside reach is not reported
    far = evaluate_word(group, group.letters[-1] * (2 * small + 1))
    assert inner.distance(far) is None


def test_bfs_norm_refuses_to_guess():
    norm = bfs_norm(H3, 3)
    assert norm((0, 0, 1)) == 4
    with pytest.raises(BudgetExceeded):
        norm((7, 0, 0))


def test_zd_distance_is_l1():
    z3 = get_group("z3")
    ball = bfs_ball(z3, 6)
    assert all(d == sum(map(abs, g)) for g, d in ball.distances.items())
    assert len(ball) == sum(comb(3, k) * comb(6, k) * 2**k for k in range(4))  # lattice points with |v|_1 <= 6


def test_zd_with_diagonal_generator():
    G = zd_group(2, [(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)])
    ball = bfs_ball(G, 5)
    for (x, y), d in ball.distances.items():
        expected = max(abs(x), abs(y)) if x * y >= 0 else abs(x) + abs(y)
        assert d == expected


def test_geodesic_words_to_c():
    assert geodesic_words_to(H3, (0, 0, 1)) == ["ABab", "BabA", "abAB", "bABa"]
    assert geodesic_words_to(H3, (0, 0, 1), cap=2) == ["ABab", "BabA"]
    assert geodesic_words_to(H3, (0, 0, 0)) == [""]
    z2 = get_group("z2")
    assert geodesic_words_to(z2, (2, 1)) == ["aab", "aba", "baa"]


def test_is_geodesic_word():
    assert is_geodesic_word(H3, "abab")
    assert not is_geodesic_word(H3, "aA")
    assert is_geodesic_word(H3, "ABab")
    assert not is_geodesic_word(H3, "abABab")  # (0,0,1) then ab again: not tight
    assert is_geodesic_word(H3, "")


def test_geodesic_words_are_tight():
    norm = bfs_norm(H3)
    for g in bfs_ball(H3, 5).sphere(5)[:40]:
        for w in geodesic_words_to(H3, g):
            assert len(w) == norm(g) == 5
            assert evaluate_word(H3, w) == g
            assert is_geodesic_word(H3, w)


def test_horofunction_snapshot_along_ab():
    z = evaluate_word(H3, "ab" * 4)
    snap = horofunction_snapshot(H3, z, window_radius=1)
    assert snap[(0, 0, 0)] == 0
    assert snap[(1, 0, 0)] == snap[(0, 1, 0)] == -1
    assert snap[(-1, 0, 0)] == snap[(0, -1, 0)] == 1
    with pytest.raises(ValueError):
        horofunction_snapshot(H3, z)


# z has word length at most 14 here, so d(x, z) <= 17 stays within the oracle's exact reach of 24
h3_far = st.builds(lambda x, y, z: (x, y, z), st.integers(-4, 4), st.integers(-4, 4), st.integers(-12, 12))


@given(h3_far)
def test_horofunctions_are_one_lipschitz(z):
    snap = horofunction_snapshot(H3, z, window_radius=3)
    assert snap[(0, 0, 0)] == 0
    for x in snap.window:
        for s in H3.letters:
            y = tuple(h3_mul(x, H3.generators[s]))
            if y in snap.values:
                assert abs(snap[y] - snap[x]) <= 1


def test_triangle_inequality_radius_6():
    ball = bfs_ball(H3, 6)
    pts = ball.elements()
    rng = random.Random(6)

    def d(u, v):
        return ball.distance(h3_mul(h3_inv(u), v))

    for _ in range(1000):
        u, v, w = (rng.choice(pts) for _ in range(3))
        assert d(u, w) <= d(u, v) + d(v, w)


def test_ball_is_deterministic():
    first = dict(bfs_ball(H3, 7).distances)
    first_order = bfs_ball(H3, 7).elements()
    _build_ball.cache_clear()
    assert dict(bfs_ball(H3, 7).distances) == first
    assert bfs_ball(H3, 7).elements() == first_order


def test_rejoin_witness():
    w1, w2 = "ab" * 10, "ba" * 10
    # any detour must stay positive, and the shortest one that meets (ba)* and comes back has length 11
    assert rejoin_witness(H3, w1, w2, 2, 10) is None
    found = rejoin_witness(H3, w1, w2, 2, 11)
    assert found == "abbbaaaaabb"
    assert rejoin_witness(H3, w1, w2, 2, 12) == found
    assert is_geodesic_word(H3, found)
    assert evaluate_word(H3, found) == evaluate_word(H3, w1[:11])
    assert rejoin_witness(H3, w1, w2, 4, 14) is None
    assert rejoin_witness(H3, w1, w1, 3, 6) == "aba"
    with pytest.raises(ValueError):
        rejoin_witness(H3, "ab", "ba", 0, 5)
    with pytest.raises(ValueError):
        rejoin_witness(H3, "aA" * 5, w2, 2, 8)
