"""Quivers, paths, path-algebra arithmetic, necklaces and the Euler form.

Composition is right to left throughout: the path ``b.a`` traverses ``a``
first, and is stored as the arrow sequence ``(b, a)``.  With this
convention multiplying arrow matrices in the stored order composes the
linear maps correctly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, ValidationError
from .exact import Matrix, Scalar, _clean_terms, as_rational


@dataclass(frozen=True)
class Arrow:
    id: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if not isinstance(self.vertex_count, int) or self.vertex_count < 0:
            raise ValidationError("vertex_count must be a non-negative integer")
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        seen = set()
        for a in arrows:
            if not isinstance(a.id, str) or not a.id:
                raise ValidationError(f"arrow id must be a non-empty string, got {a.id!r}")
            if a.id in seen:
                raise ValidationError(f"duplicate arrow id {a.id!r}")
            seen.add(a.id)
            for v in (a.source, a.target):
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < self.vertex_count:
                    raise ValidationError(f"arrow {a.id!r} references vertex {v!r} out of range")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[str, int, int]]) -> "Quiver":
        return cls(vertex_count, tuple(Arrow(*e) for e in edges))

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def arrow_index(self, arrow_id: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.id == arrow_id:
                return i
        raise ValidationError(f"unknown arrow {arrow_id!r}")

    def arrows_between(self, i: int, j: int) -> list[int]:
        """Indices of arrows i -> j."""
        return [k for k, a in enumerate(self.arrows) if a.source == i and a.target == j]

    def adjacency(self) -> Matrix:
        """A[j][i] = number of arrows i -> j, so A^L counts paths of length L."""
        k = self.vertex_count
        e = [0] * (k * k)
        for a in self.arrows:
            e[a.target * k + a.source] += 1
        return Matrix(k, k, e)

    def is_acyclic(self) -> bool:
        indeg = [0] * self.vertex_count
        for a in self.arrows:
            indeg[a.target] += 1
        stack = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        stack.append(a.target)
        return seen == self.vertex_count

    def check_dim_vector(self, alpha: Sequence[int]) -> tuple[int, ...]:
        alpha = tuple(alpha)
        if len(alpha) != self.vertex_count:
            raise DimensionError(f"dimension vector {alpha} has wrong length for {self.vertex_count} vertices")
        for a in alpha:
            if not isinstance(a, int) or isinstance(a, bool) or a < 0:
                raise ValidationError(f"dimension vector entries must be non-negative integers, got {alpha}")
        return alpha


def loop_quiver(loops: int = 1, names: Sequence[str] | None = None) -> Quiver:
    names = list(names) if names else (["x"] if loops == 1 else [f"x{i}" for i in range(loops)])
    return Quiver(1, tuple(Arrow(n, 0, 0) for n in names))


# ---------------------------------------------------------------------------
# paths


@dataclass(frozen=True, order=True)
class Path:
    """Arrow indices in written (right-to-left) order; ``vertex`` set only for
    length-zero paths."""
    arrows: tuple[int, ...] = ()
    vertex: int | None = None

    def __post_init__(self):
        if not self.arrows and self.vertex is None:
            raise ValidationError("the empty path needs a vertex")
        if self.arrows and self.vertex is not None:
            object.__setattr__(self, "vertex", None)

    def __len__(self) -> int:
        return len(self.arrows)

    def source(self, q: Quiver) -> int:
        return self.vertex if not self.arrows else q.arrows[self.arrows[-1]].source

    def target(self, q: Quiver) -> int:
        return self.vertex if not self.arrows else q.arrows[self.arrows[0]].target

    def is_valid(self, q: Quiver) -> bool:
        if not self.arrows:
            return 0 <= self.vertex < q.vertex_count
        return all(q.arrows[self.arrows[i]].source == q.arrows[self.arrows[i + 1]].target
                   for i in range(len(self.arrows) - 1))

    def traversal(self) -> tuple[int, ...]:
        return tuple(reversed(self.arrows))

    def ids(self, q: Quiver) -> list[str]:
        return [q.arrows[i].id for i in self.arrows]

    def label(self, q: Quiver) -> str:
        if not self.arrows:
            return f"v{self.vertex}"
        return _join_ids(self.ids(q))


def _join_ids(ids: Sequence[str]) -> str:
    return "".join(ids) if all(len(i) == 1 for i in ids) else "*".join(ids)


def concatenate(q: Quiver, p: Path, r: Path) -> Path | None:
    """The product p.r (r traversed first), or None when it is zero."""
    if p.source(q) != r.target(q):
        return None
    if not p.arrows:
        return r
    if not r.arrows:
        return p
    return Path(p.arrows + r.arrows)


class PathElement:
    """Finite Q-linear combination of paths of one quiver (an element of CQ)."""

    __slots__ = ("quiver", "_terms")

    def __init__(self, quiver: Quiver, terms: Mapping[Path, Scalar] | None = None):
        for p in (terms or {}):
            if not p.is_valid(quiver):
                raise ValidationError(f"{p} is not a path of the quiver")
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "_terms", _clean_terms((p, as_rational(c)) for p, c in (terms or {}).items()))

    def __setattr__(self, name, value):
        raise AttributeError("PathElement is immutable")

    @classmethod
    def _make(cls, quiver, items):
        e = object.__new__(cls)
        object.__setattr__(e, "quiver", quiver)
        object.__setattr__(e, "_terms", _clean_terms(items))
        return e

    @classmethod
    def vertex(cls, q: Quiver, i: int) -> "PathElement":
        return cls(q, {Path((), i): 1})

    @classmethod
    def arrow(cls, q: Quiver, arrow_id: str) -> "PathElement":
        return cls(q, {Path((q.arrow_index(arrow_id),)): 1})

    @classmethod
    def one(cls, q: Quiver) -> "PathElement":
        return cls(q, {Path((), i): 1 for i in q.vertices})

    @classmethod
    def path(cls, q: Quiver, ids: Sequence[str]) -> "PathElement":
        """Path written as arrow ids in product order, e.g. ["b", "a"] is b.a."""
        p = Path(tuple(q.arrow_index(i) for i in ids))
        if not p.is_valid(q):
            return cls(q)
        return cls(q, {p: 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other) -> "PathElement":
        if isinstance(other, PathElement):
            if other.quiver != self.quiver:
                raise ValidationError("path elements of different quivers")
            return other
        c = as_rational(other)
        return PathElement._make(self.quiver, [(Path((), i), c) for i in self.quiver.vertices])

    def __add__(self, other):
        other = self._coerce(other)
        return PathElement._make(self.quiver, self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self):
        return PathElement._make(self.quiver, [(p, -c) for p, c in self._terms])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return path_multiply(self, self._coerce(other))

    def __rmul__(self, other):
        return path_multiply(self._coerce(other), self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PathElement):
            return NotImplemented
        return self.quiver == other.quiver and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{p.label(self.quiver)}" for p, c in self._terms)


def path_multiply(p: PathElement, q: PathElement) -> PathElement:
    if p.quiver != q.quiver:
        raise ValidationError("path elements of different quivers")
    quiver = p.quiver
    items = []
    for a, c in p.items():
        for b, d in q.items():
            ab = concatenate(quiver, a, b)
            if ab is not None:
                items.append((ab, c * d))
    return PathElement._make(quiver, items)


def _check_vertex(q: Quiver, v) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < q.vertex_count:
        raise ValidationError(f"vertex {v!r} out of range")
    return v


def enumerate_paths(q: Quiver, start: int, end: int, max_len: int) -> list[Path]:
    """All paths start -> end of length <= max_len.

    Ordered by length, then by traversal sequence of arrow indices.
    """
    _check_vertex(q, start)
    _check_vertex(q, end)
    if max_len < 0:
        raise ValidationError("max_len must be >= 0")
    out = []
    if start == end:
        out.append(Path((), start))
    # frontier holds traversal sequences ending anywhere
    frontier = [((), start)]
    out_arrows = [[k for k, a in enumerate(q.arrows) if a.source == v] for v in q.vertices]
    for _ in range(max_len):
        nxt = []
        for trav, v in frontier:
            for k in out_arrows[v]:
                nxt.append((trav + (k,), q.arrows[k].target))
        nxt.sort()
        out.extend(Path(tuple(reversed(t))) for t, v in nxt if v == end)
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# necklaces


@dataclass(frozen=True, order=True)
class Necklace:
    """Rotation class of a closed path.

    ``arrows`` is in written order and is the rotation whose traversal
    sequence of arrow ids is lexicographically smallest.
    """
    arrows: tuple[int, ...]

    def label(self, q: Quiver) -> str:
        return _join_ids([q.arrows[i].id for i in self.arrows])

    def path(self) -> Path:
        return Path(self.arrows)

    def __len__(self):
        return len(self.arrows)


def is_closed(q: Quiver, arrows: Sequence[int]) -> bool:
    arrows = tuple(arrows)
    return bool(arrows) and Path(arrows).is_valid(q) and Path(arrows).source(q) == Path(arrows).target(q)


def canonical_necklace(q: Quiver, arrows: Sequence[int]) -> Necklace:
    arrows = tuple(arrows)
    if not is_closed(q, arrows):
        raise ValidationError(f"{arrows} is not a closed path")
    trav = arrows[::-1]
    ids = [q.arrows[i].id for i in trav]
    n = len(trav)
    best = min(range(n), key=lambda s: (ids[s:] + ids[:s], trav[s:] + trav[:s]))
    rot = trav[best:] + trav[:best]
    return Necklace(rot[::-1])


def _necklace_key(q: Quiver, nk: Necklace):
    return (len(nk), [q.arrows[i].id for i in reversed(nk.arrows)])


def enumerate_necklaces(q: Quiver, max_len: int) -> list[Necklace]:
    """One representative per rotation class of closed paths of length 1..max_len."""
    if max_len < 1:
        raise ValidationError("max_len must be >= 1")
    found: set[Necklace] = set()
    out_arrows = [[k for k, a in enumerate(q.arrows) if a.source == v] for v in q.vertices]
    for start in q.vertices:
        frontier = [((), start)]
        for _ in range(max_len):
            nxt = []
            for trav, v in frontier:
                for k in out_arrows[v]:
                    t = trav + (k,)
                    w = q.arrows[k].target
                    if w == start:
                        nk = canonical_necklace(q, t[::-1])
                        if nk.arrows == t[::-1]:
                            found.add(nk)
                    nxt.append((t, w))
            frontier = nxt
    return sorted(found, key=lambda nk: _necklace_key(q, nk))


def euler_form(q: Quiver, alpha: Sequence[int], beta: Sequence[int]) -> int:
    alpha = q.check_dim_vector(alpha)
    beta = q.check_dim_vector(beta)
    return sum(a * b for a, b in zip(alpha, beta)) - sum(alpha[a.source] * beta[a.target] for a in q.arrows)
