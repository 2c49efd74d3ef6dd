import itertools
import random
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncrep.errors import ValidationError
from ncrep.quiver import (Necklace, Path, PathElement, Quiver, canonical_necklace, enumerate_necklaces,
                          enumerate_paths, euler_form, loop_quiver, path_multiply)
from ncrep.sampling import CorpusConfig, corpus_quivers, random_quiver

A3 = Quiver.from_edges(3, [("a", 0, 1), ("b", 1, 2)])
TWO_CYCLE = corpus_quivers()["two_cycle"]


@st.composite
def quivers(draw, max_vertices=4, max_arrows=6):
    seed = draw(st.integers(0, 10 ** 6))
    return random_quiver(random.Random(seed), CorpusConfig(max_vertices=max_vertices, max_arrows=max_arrows))


def test_quiver_validation():
    with pytest.raises(ValidationError):
        Quiver.from_edges(2, [("a", 0, 2)])
    with pytest.raises(ValidationError):
        Quiver.from_edges(2, [("a", 0, 1), ("a", 1, 0)])
    with pytest.raises(ValidationError):
        Quiver.from_edges(1, [("", 0, 0)])


def test_idempotents_are_orthogonal():
    v0, v1 = PathElement.vertex(A3, 0), PathElement.vertex(A3, 1)
    assert v0 * v0 == v0
    assert (v0 * v1).is_zero()
    assert PathElement.one(A3) * v1 == v1


def test_concatenation_rules():
    a, b = PathElement.arrow(A3, "a"), PathElement.arrow(A3, "b")
    ba = b * a
    assert ba == PathElement.path(A3, ["b", "a"])
    (path, coeff), = ba.items()
    assert path.source(A3) == 0 and path.target(A3) == 2 and coeff == 1
    assert (a * b).is_zero()
    assert (PathElement.vertex(A3, 1) * a) == a
    assert (a * PathElement.vertex(A3, 1)).is_zero()


def test_loop_arithmetic():
    q = loop_quiver(1)
    v, x = PathElement.vertex(q, 0), PathElement.arrow(q, "x")
    assert x * x == PathElement.path(q, ["x", "x"])
    assert (v + x) * (v - x) == v - x * x


def _random_element(q, rng, size=3, max_len=3):
    terms = {}
    for _ in range(size):
        i, j = rng.randrange(q.vertex_count), rng.randrange(q.vertex_count)
        paths = enumerate_paths(q, i, j, max_len)
        if paths:
            terms[rng.choice(paths)] = rng.randint(-3, 3)
    return PathElement(q, terms)


@given(quivers(), st.integers(0, 10 ** 6))
def test_path_multiplication_associative_with_unit(q, seed):
    rng = random.Random(seed)
    x, y, z = (_random_element(q, rng) for _ in range(3))
    assert path_multiply(path_multiply(x, y), z) == path_multiply(x, path_multiply(y, z))
    one = PathElement.one(q)
    assert one * x == x and x * one == x


def test_enumerate_paths_examples():
    a2 = Quiver.from_edges(2, [("a", 0, 1)])
    assert [p.label(a2) for p in enumerate_paths(a2, 0, 1, 2)] == ["a"]
    q = loop_quiver(1)
    paths = enumerate_paths(q, 0, 0, 3)
    assert [len(p) for p in paths] == [0, 1, 2, 3]
    assert paths[0] == Path((), 0)
    with pytest.raises(ValidationError):
        enumerate_paths(a2, 0, 5, 1)


@given(quivers(max_vertices=5, max_arrows=6), st.integers(0, 6))
def test_path_counts_match_adjacency_powers(q, L):
    power = q.adjacency() ** L
    for i in q.vertices:
        for j in q.vertices:
            count = sum(1 for p in enumerate_paths(q, j, i, L) if len(p) == L)
            assert count == power[i, j]
            assert all(p.source(q) == j and p.target(q) == i for p in enumerate_paths(q, j, i, L))


# necklaces

def _brute_necklace_classes(q, max_len):
    """Closed walks (as arrow sequences) modulo rotation, by exhaustive search."""
    classes = set()
    k = len(q.arrows)
    for L in range(1, max_len + 1):
        for seq in itertools.product(range(k), repeat=L):
            if Path(seq).is_valid(q) and Path(seq).source(q) == Path(seq).target(q):
                classes.add(frozenset(seq[s:] + seq[:s] for s in range(L)))
    return classes


def _phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def test_two_cycle_necklaces():
    labels = [nk.label(TWO_CYCLE) for nk in enumerate_necklaces(TWO_CYCLE, 4)]
    assert labels == ["ba", "baba"]


def test_loop_necklaces():
    q = loop_quiver(1)
    assert [nk.label(q) for nk in enumerate_necklaces(q, 3)] == ["x", "xx", "xxx"]
    assert enumerate_necklaces(A3, 5) == []


@pytest.mark.parametrize("k, L", [(2, 6), (3, 4)])
def test_necklace_count_formula(k, L):
    # number of k-ary necklaces of length L: (1/L) sum_{d | L} phi(d) k^(L/d)
    q = loop_quiver(k)
    nks = enumerate_necklaces(q, L)
    for length in range(1, L + 1):
        expected = sum(_phi(d) * k ** (length // d) for d in range(1, length + 1) if length % d == 0) // length
        assert sum(1 for nk in nks if len(nk) == length) == expected


@given(quivers(max_vertices=3, max_arrows=4))
def test_necklaces_match_brute_force(q):
    nks = enumerate_necklaces(q, 4)
    classes = {frozenset(nk.arrows[s:] + nk.arrows[:s] for s in range(len(nk))) for nk in nks}
    assert len(classes) == len(nks)
    assert classes == _brute_necklace_classes(q, 4)


@given(quivers(max_vertices=3, max_arrows=4), st.integers(0, 10))
def test_canonical_form_is_rotation_stable(q, shift):
    for nk in enumerate_necklaces(q, 4):
        s = shift % len(nk)
        rotated = nk.arrows[s:] + nk.arrows[:s]
        assert canonical_necklace(q, rotated) == nk
        assert canonical_necklace(q, nk.arrows) == nk


def test_canonical_necklace_rejects_open_path():
    with pytest.raises(ValidationError):
        canonical_necklace(A3, (1, 0))


# Euler form

def test_euler_form_examples():
    assert euler_form(Quiver(2), (1, 2), (3, 4)) == 11
    assert euler_form(loop_quiver(1), (3,), (3,)) == 0
    assert euler_form(Quiver.from_edges(2, [("a", 0, 1)]), (1, 1), (1, 1)) == 1


@given(quivers(), st.data())
def test_euler_form_bilinear(q, data):
    vec = st.lists(st.integers(0, 4), min_size=q.vertex_count, max_size=q.vertex_count)
    a1, a2, b = data.draw(vec), data.draw(vec), data.draw(vec)
    s = [x + y for x, y in zip(a1, a2)]
    assert euler_form(q, s, b) == euler_form(q, a1, b) + euler_form(q, a2, b)
    assert euler_form(q, b, s) == euler_form(q, b, a1) + euler_form(q, b, a2)


def test_necklace_is_ordered_value():
    assert Necklace((0, 1)) < Necklace((1, 0))
