from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilhoro.example1 import (
    EXAMPLE1,
    G_ELEM,
    H_ELEM,
    Ex1Element,
    eta_excess,
    ex1_inv,
    ex1_mul,
    lemma_perm_check,
    staircase_exponents,
)
from nilhoro.groups import evaluate_word
from nilhoro.oracle import bfs_ball, bfs_norm

small = st.integers(-20, 20)
ex1_elems = st.builds(Ex1Element, small, small, small, small, small)
E = EXAMPLE1.identity


def comm(u, v):
    return ex1_mul(ex1_mul(ex1_inv(u), ex1_inv(v)), ex1_mul(u, v))


def collect(word: str) -> Ex1Element:
    """Collect a word into g^i h^j c^k b^l a^m by literal rewriting.

    Uses xy -> yx[x, y] with the commutators worked out by hand from
    c = [a, b], g = [a, c], h = [b, c] and the centrality of g and h, e.g.
    [a, b^-1] = b c^-1 b^-1 = c^-1 h^-1.  Symbols: a, b, c and inverses
    A, B, C; g and h are only counted.
    """
    rank = {"c": 0, "C": 0, "b": 1, "B": 1, "a": 2, "A": 2}
    commutator = {
        "ab": "c", "aB": "CH", "Ab": "CG", "AB": "cgh",
        "ac": "g", "aC": "G", "Ac": "G", "AC": "g",
        "bc": "h", "bC": "H", "Bc": "H", "BC": "h",
    }
    weight = {"g": (1, 0), "G": (-1, 0), "h": (0, 1), "H": (0, -1)}
    gi = hj = 0
    s = list(word)
    changed = True
    while changed:
        changed = False
        out = []
        for ch in s:
            if out and out[-1] == ch.swapcase():
                out.pop()
            else:
                out.append(ch)
        s = out
        for p in range(len(s) - 1):
            x, y = s[p], s[p + 1]
            if rank[x] > rank[y]:
                extra = []
                for t in commutator[x + y]:
                    if t in weight:
                        gi += weight[t][0]
                        hj += weight[t][1]
                    else:
                        extra.append(t)
                s[p : p + 2] = [y, x, *extra]
                changed = True
                break
    k = s.count("c") - s.count("C")
    l = s.count("b") - s.count("B")  # noqa: E741
    m = s.count("a") - s.count("A")
    return Ex1Element(gi, hj, k, l, m)


def test_collection_rules_hold():
    a, b = EXAMPLE1.generators["a"], EXAMPLE1.generators["b"]
    c = comm(a, b)
    assert c == (0, 0, 1, 0, 0)
    assert comm(a, c) == G_ELEM and comm(b, c) == H_ELEM
    # ab = bac, ac = cag, bc = cbh
    assert ex1_mul(a, b) == ex1_mul(ex1_mul(b, a), c)
    assert ex1_mul(a, c) == ex1_mul(ex1_mul(c, a), G_ELEM)
    assert ex1_mul(b, c) == ex1_mul(ex1_mul(c, b), H_ELEM)


def test_defining_relations():
    a, b = EXAMPLE1.generators["a"], EXAMPLE1.generators["b"]
    for s in (a, b):
        for t in (G_ELEM, H_ELEM):
            assert comm(s, t) == E


def test_examples():
    assert evaluate_word(EXAMPLE1, "ab") == (1, 1, 1, 1, 1)
    assert evaluate_word(EXAMPLE1, "ba") == (0, 0, 0, 1, 1)
    assert ex1_inv(E) == E
    assert ex1_inv(EXAMPLE1.generators["a"]) == (0, 0, 0, 0, -1)
    u = Ex1Element(1, 1, 1, 1, 1)
    assert ex1_mul(u, ex1_inv(u)) == E == ex1_mul(ex1_inv(u), u)


def test_multiplication_matches_literal_collection():
    for n in range(7):
        for letters in product("abAB", repeat=n):
            w = "".join(letters)
            assert evaluate_word(EXAMPLE1, w) == collect(w), w


@given(ex1_elems, ex1_elems, ex1_elems)
def test_group_axioms(u, v, w):
    assert ex1_mul(ex1_mul(u, v), w) == ex1_mul(u, ex1_mul(v, w))
    assert ex1_mul(u, ex1_inv(u)) == E == ex1_mul(ex1_inv(u), u)
    assert ex1_mul(u, E) == u == ex1_mul(E, u)


@given(ex1_elems)
def test_g_and_h_are_central(u):
    for z in (G_ELEM, H_ELEM):
        assert ex1_mul(u, z) == ex1_mul(z, u)


def test_staircase_examples():
    assert staircase_exponents("ab") == (1, 1, 1)
    assert staircase_exponents("abab") == (4, 5, 3)
    assert staircase_exponents("bbaa") == (0, 0, 0)
    assert staircase_exponents("") == (0, 0, 0)
    with pytest.raises(ValueError):
        staircase_exponents("aB")


def test_staircase_matches_multiplication():
    for n in range(11):
        for letters in product("ab", repeat=n):
            w = "".join(letters)
            u = evaluate_word(EXAMPLE1, w)
            assert (u.i, u.j, u.k) == staircase_exponents(w)
            assert (u.l, u.m) == (w.count("b"), w.count("a"))


def test_lemma_perm_check():
    for l in range(1, 6):  # noqa: E741
        assert lemma_perm_check(l) == (True, None)
    with pytest.raises(ValueError):
        lemma_perm_check(0)


def test_abab_is_the_only_balanced_word_with_k_3():
    k_values = {}
    for letters in product("ab", repeat=4):
        w = "".join(letters)
        if w.count("a") == 2:
            k_values[w] = staircase_exponents(w)[2]
    assert len(k_values) == 6
    assert [w for w, k in k_values.items() if k == 3] == ["abab"]


def test_ab_powers_are_geodesic():
    norm = bfs_norm(EXAMPLE1)
    assert [norm(evaluate_word(EXAMPLE1, "ab" * l)) for l in range(1, 5)] == [2, 4, 6, 8]


def test_eta_excess():
    # d(g, (ab)^l) - 2l from the radius-8 BFS ball (meeting in the middle up to 16)
    assert [eta_excess(l) for l in (1, 2, 3)] == [4, 4, 4]
    with pytest.raises(ValueError):
        eta_excess(0)


def test_g_has_length_8():
    ball = bfs_ball(EXAMPLE1, 8)
    assert len(ball) == 11639
    assert ball[G_ELEM] == ball[H_ELEM] == 8


def test_element_json():
    assert Ex1Element(1, 2, 3, 4, 5).to_json() == {"i": 1, "j": 2, "k": 3, "l": 4, "m": 5}
