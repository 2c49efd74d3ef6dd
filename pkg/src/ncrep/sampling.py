"""Seeded random objects and the fixed test corpus.

Everything takes an explicit random.Random so runs are reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Matrix, as_rational
from .quiver import Arrow, Quiver, loop_quiver
from .rep_scheme import QuiverRep


@dataclass(frozen=True)
class CorpusConfig:
    max_vertices: int = 4
    max_arrows: int = 6
    max_dim: int = 3
    entry_bound: int = 9
    seed: int = 0


def random_rational(rng: random.Random, bound: int = 9, max_den: int = 1):
    num = rng.randint(-bound, bound)
    den = rng.randint(1, max_den) if max_den > 1 else 1
    return as_rational(Fraction(num, den))


def random_matrix(rng: random.Random, rows: int, cols: int | None = None, bound: int = 9,
                  max_den: int = 1) -> Matrix:
    cols = rows if cols is None else cols
    return Matrix(rows, cols, [random_rational(rng, bound, max_den) for _ in range(rows * cols)])


def random_invertible(rng: random.Random, n: int, bound: int = 3) -> Matrix:
    while True:
        m = random_matrix(rng, n, n, bound)
        if m.is_invertible():
            return m


def random_quiver(rng: random.Random, cfg: CorpusConfig = CorpusConfig(), acyclic: bool = False,
                  min_vertices: int = 1) -> Quiver:
    k = rng.randint(min_vertices, cfg.max_vertices)
    m = rng.randint(0, cfg.max_arrows)
    arrows = []
    for idx in range(m):
        s, t = rng.randrange(k), rng.randrange(k)
        if acyclic:
            if s == t:
                continue
            s, t = min(s, t), max(s, t)
        arrows.append(Arrow(_arrow_name(idx), s, t))
    return Quiver(k, tuple(arrows))


def _arrow_name(i: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return letters[i] if i < 26 else f"a{i}"


def random_dim_vector(rng: random.Random, q: Quiver, max_dim: int = 3, min_total: int = 1) -> tuple[int, ...]:
    while True:
        alpha = tuple(rng.randint(0, max_dim) for _ in q.vertices)
        if sum(alpha) >= min_total:
            return alpha


def random_quiver_rep(rng: random.Random, q: Quiver, alpha: Sequence[int], bound: int = 3,
                      max_den: int = 1) -> QuiverRep:
    return QuiverRep(q, tuple(alpha), {
        a.id: random_matrix(rng, alpha[a.target], alpha[a.source], bound, max_den) for a in q.arrows})


def random_partition(rng: random.Random, n: int) -> list[int]:
    """A random composition n = m_1 + ... + m_r with m_i >= 1."""
    parts, left = [], n
    while left:
        p = rng.randint(1, left)
        parts.append(p)
        left -= p
    return parts


def corpus_quivers() -> dict[str, Quiver]:
    """Small named quivers used throughout the tests (<= 4 vertices)."""
    return {
        "point": Quiver(1),
        "A2": Quiver.from_edges(2, [("a", 0, 1)]),
        "A3": Quiver.from_edges(3, [("a", 0, 1), ("b", 1, 2)]),
        "A3_zigzag": Quiver.from_edges(3, [("a", 0, 1), ("b", 2, 1)]),
        "kronecker": Quiver.from_edges(2, [("a", 0, 1), ("b", 0, 1)]),
        "D4": Quiver.from_edges(4, [("a", 1, 0), ("b", 2, 0), ("c", 3, 0)]),
        "A4_linear": Quiver.from_edges(4, [("a", 0, 1), ("b", 1, 2), ("c", 2, 3)]),
        "jordan": loop_quiver(1),
        "two_loops": loop_quiver(2, ["x", "y"]),
        "two_cycle": Quiver.from_edges(2, [("a", 0, 1), ("b", 1, 0)]),
        "three_cycle": Quiver.from_edges(3, [("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]),
        "loop_and_arrow": Quiver.from_edges(2, [("x", 0, 0), ("a", 0, 1)]),
    }


def acyclic_corpus() -> dict[str, Quiver]:
    return {k: q for k, q in corpus_quivers().items() if q.is_acyclic()}
