"""Trace functions on representation spaces and cycle-trace invariants of quivers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cayley_hamilton import trace_reduce
from .errors import ValidationError
from .exact import Matrix, NcPolynomial, Scalar, TracePolynomial, nc_evaluate
from .quiver import Necklace, Path, Quiver, enumerate_necklaces, enumerate_paths
from .rep_scheme import QuiverRep, RepPoint

IRREDUCIBLE = "irreducible"


@dataclass(frozen=True)
class CycleTrace:
    necklace: Necklace

    def label(self, q: Quiver) -> str:
        return "tr(" + self.necklace.label(q) + ")"


@dataclass(frozen=True)
class BlockDecomposition:
    """blocks[i][j] lists the paths v_j -> v_i of length <= bound."""
    quiver: Quiver
    bound: int
    blocks: tuple[tuple[tuple[Path, ...], ...], ...]

    def sizes(self) -> list[list[int]]:
        return [[len(b) for b in row] for row in self.blocks]


def word_trace(x: RepPoint, w: NcPolynomial) -> Scalar:
    """tr x(w); the generator list of ``w`` may be any subset of the presentation's."""
    missing = w.used_generators() - set(x.assignment)
    if missing:
        raise ValidationError(f"generators {sorted(missing)} are not assigned")
    return nc_evaluate(w, x.assignment, x.n).trace()


def default_bound(alpha: Sequence[int]) -> int:
    n = sum(alpha)
    return max(1, n * n)


def cycle_generators(q: Quiver, alpha: Sequence[int], n_bound: int | None = None) -> list[CycleTrace]:
    alpha = q.check_dim_vector(alpha)
    bound = default_bound(alpha) if n_bound is None else n_bound
    return [CycleTrace(nk) for nk in enumerate_necklaces(q, bound)]


def path_matrix(rep: QuiverRep, path: Path) -> Matrix:
    """Product of arrow matrices along a path, composed right to left."""
    q = rep.quiver
    if not path.arrows:
        d = rep.dim_vector[path.vertex]
        return Matrix.identity(d)
    m = rep.matrix(q.arrows[path.arrows[-1]].id)
    for k in reversed(path.arrows[:-1]):
        m = rep.matrix(q.arrows[k].id) @ m
    return m


def evaluate_cycle(c: CycleTrace, rep: QuiverRep) -> Scalar:
    q = rep.quiver
    if any(k >= len(q.arrows) for k in c.necklace.arrows) or not c.necklace.path().is_valid(q):
        raise ValidationError("cycle does not belong to the representation's quiver")
    return path_matrix(rep, c.necklace.path()).trace()


def cycle_values(rep: QuiverRep, max_len: int | None = None) -> dict[str, Scalar]:
    """Map necklace label -> cycle trace at rep, for all necklaces up to max_len."""
    q = rep.quiver
    return {c.necklace.label(q): evaluate_cycle(c, rep)
            for c in cycle_generators(q, rep.dim_vector, max_len)}


def block_decomposition(q: Quiver, bound: int) -> BlockDecomposition:
    if bound < 0:
        raise ValidationError("bound must be >= 0")
    blocks = tuple(tuple(tuple(enumerate_paths(q, j, i, bound)) for j in q.vertices) for i in q.vertices)
    return BlockDecomposition(q, bound, blocks)


def reduce_trace_relations(q: Quiver, alpha: Sequence[int], c: CycleTrace):
    """Cayley-Hamilton reduction of tr(x^m) for a loop x at a vertex of dimension d.

    Returns a TracePolynomial in nu_k = tr(x^k), k <= d, when m > d and
    ``IRREDUCIBLE`` otherwise (including every cycle that is not a pure loop power).
    """
    alpha = q.check_dim_vector(alpha)
    arrows = set(c.necklace.arrows)
    if len(arrows) != 1:
        return IRREDUCIBLE
    a = q.arrows[next(iter(arrows))]
    if a.source != a.target:
        return IRREDUCIBLE
    m, d = len(c.necklace), alpha[a.source]
    if m <= d:
        return IRREDUCIBLE
    if d == 0:
        return TracePolynomial()
    return trace_reduce(m, d)
