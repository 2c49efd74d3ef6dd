"""Presented algebras, their matrix points, quiver representations, Hom/Ext1,
tangent spaces, direct sums and free products."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence, Union

from .errors import (CyclicQuiverError, DimensionError, RelationViolated,
                     SchurCheckError, SingularMatrixError, ValidationError)
from .exact import Matrix, NcPolynomial, nc_evaluate, rank_of_rows, span_basis
from .quiver import Quiver, euler_form


@dataclass(frozen=True)
class Presentation:
    """Q<generators> / (relations).  ``quiver`` is set when this is the
    presentation of a path algebra built by :func:`path_algebra_presentation`."""
    generators: tuple[str, ...]
    relations: tuple[NcPolynomial, ...] = ()
    quiver: Quiver | None = field(default=None, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValidationError("duplicate generator names")
        for g in gens:
            if not isinstance(g, str) or not g:
                raise ValidationError(f"generator names must be non-empty strings, got {g!r}")
        rels = []
        for r in self.relations:
            if not isinstance(r, NcPolynomial):
                raise ValidationError("relations must be NcPolynomial")
            if r.generators != gens:
                extra = r.used_generators() - set(gens)
                if extra:
                    raise ValidationError(f"relation uses unknown generators {sorted(extra)}")
                r = r.reindex(gens)
            rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", tuple(rels))

    def variables(self) -> tuple[NcPolynomial, ...]:
        return NcPolynomial.variables(self.generators)


def free_presentation(generators: Sequence[str]) -> Presentation:
    return Presentation(tuple(generators))


def fixture_b_presentation() -> Presentation:
    """C<x,y>/(x^2, y^2, xy+yx): the 4-dimensional local test algebra."""
    x, y = NcPolynomial.variables(("x", "y"))
    return Presentation(("x", "y"), (x * x, y * y, x * y + y * x))


def commutative_presentation(generators: Sequence[str]) -> Presentation:
    gens = NcPolynomial.variables(tuple(generators))
    rels = tuple(gens[i] * gens[j] - gens[j] * gens[i]
                 for i in range(len(gens)) for j in range(i + 1, len(gens)))
    return Presentation(tuple(generators), rels)


def vertex_generator_names(q: Quiver) -> list[str]:
    ids = {a.id for a in q.arrows}
    prefix = "v"
    while any(f"{prefix}{i}" in ids for i in q.vertices):
        prefix = "_" + prefix
    return [f"{prefix}{i}" for i in q.vertices]


@lru_cache(maxsize=None)
def path_algebra_presentation(q: Quiver) -> Presentation:
    """CQ as vertex idempotents plus arrows subject to v_i v_j = delta_ij v_i,
    sum v_i = 1 and v_j a v_i = a for every arrow a: i -> j."""
    vnames = vertex_generator_names(q)
    gens = tuple(vnames) + tuple(a.id for a in q.arrows)
    var = dict(zip(gens, NcPolynomial.variables(gens)))
    v = [var[n] for n in vnames]
    rels = []
    for i in q.vertices:
        for j in q.vertices:
            rels.append(v[i] * v[j] - v[i] if i == j else v[i] * v[j])
    one = NcPolynomial.constant(gens, 1)
    total = NcPolynomial(gens)
    for vi in v:
        total = total + vi
    rels.append(total - one)
    for a in q.arrows:
        rels.append(v[a.target] * var[a.id] * v[a.source] - var[a.id])
    return Presentation(gens, tuple(rels), quiver=q)


# ---------------------------------------------------------------------------
# points


class RepPoint:
    """A geometric point of rep_n A: one n x n matrix per generator, with every
    relation vanishing (checked on construction unless ``check=False``)."""

    __slots__ = ("presentation", "n", "assignment")

    def __init__(self, presentation: Presentation, assignment: Mapping[str, Matrix],
                 n: int | None = None, check: bool = True):
        if n is None:
            if not assignment:
                raise ValidationError("cannot infer n from an empty assignment")
            n = next(iter(assignment.values())).rows
        unknown = set(assignment) - set(presentation.generators)
        if unknown:
            raise ValidationError(f"assignment names unknown generators {sorted(unknown)}")
        for g in presentation.generators:
            if g not in assignment:
                raise ValidationError(f"generator {g!r} is not assigned")
            if assignment[g].shape != (n, n):
                raise DimensionError(f"generator {g!r} has shape {assignment[g].shape}, expected {(n, n)}")
        self.presentation = presentation
        self.n = n
        self.assignment = {g: assignment[g] for g in presentation.generators}
        if check:
            for idx, rel in enumerate(presentation.relations):
                if not nc_evaluate(rel, self.assignment, n).is_zero():
                    raise RelationViolated(idx, repr(rel))

    def __setattr__(self, name, value):
        if hasattr(self, "assignment"):
            raise AttributeError("RepPoint is immutable")
        object.__setattr__(self, name, value)

    def matrices(self) -> list[Matrix]:
        return [self.assignment[g] for g in self.presentation.generators]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepPoint):
            return NotImplemented
        return (self.presentation == other.presentation and self.n == other.n
                and self.assignment == other.assignment)

    def __hash__(self):
        return hash((self.n, tuple(self.matrices())))

    def __repr__(self):
        return f"RepPoint(n={self.n}, {self.assignment})"


def verify_point(p: Presentation, candidate: Mapping[str, Matrix], n: int) -> RepPoint:
    return RepPoint(p, candidate, n)


def conjugate(r: RepPoint, g: Matrix) -> RepPoint:
    """X -> g X g^-1 for every generator."""
    if g.shape != (r.n, r.n):
        raise DimensionError(f"conjugating matrix must be {r.n}x{r.n}")
    ginv = g.inverse()
    return RepPoint(r.presentation, {k: g @ m @ ginv for k, m in r.assignment.items()}, r.n, check=False)


def direct_sum(points: Sequence[RepPoint]) -> RepPoint:
    """Block-diagonal point of size sum n_i (the connecting morphism c_(n_i))."""
    if not points:
        raise ValidationError("direct sum of no points")
    p = points[0].presentation
    for x in points[1:]:
        if x.presentation != p:
            raise ValidationError("direct sum of points of different presentations")
    if len(points) == 1:
        return points[0]
    return RepPoint(p, {g: Matrix.block_diag([x.assignment[g] for x in points]) for g in p.generators},
                    sum(x.n for x in points), check=False)


def free_product(p: Presentation, q: Presentation) -> Presentation:
    """p * q; generators of q that clash with p get primes appended."""
    taken = set(p.generators)
    rename = {}
    for g in q.generators:
        new = g
        while new in taken:
            new += "'"
        taken.add(new)
        rename[g] = new
    gens = p.generators + tuple(rename[g] for g in q.generators)
    rels = tuple(r.reindex(gens) for r in p.relations) + tuple(r.reindex(gens, rename) for r in q.relations)
    return Presentation(gens, rels)


def free_product_renaming(p: Presentation, q: Presentation) -> dict[str, str]:
    """Names the generators of ``q`` receive inside ``free_product(p, q)``."""
    prod = free_product(p, q)
    return dict(zip(q.generators, prod.generators[len(p.generators):]))


# ---------------------------------------------------------------------------
# quiver representations


@dataclass(frozen=True, eq=True)
class QuiverRep:
    """Arrow a: i -> j carries a dim[j] x dim[i] matrix; missing arrows are zero."""
    quiver: Quiver
    dim_vector: tuple[int, ...]
    arrow_matrices: Mapping[str, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        q = self.quiver
        alpha = q.check_dim_vector(self.dim_vector)
        ids = {a.id for a in q.arrows}
        unknown = set(self.arrow_matrices) - ids
        if unknown:
            raise ValidationError(f"matrices given for unknown arrows {sorted(unknown)}")
        mats = {}
        for a in q.arrows:
            shape = (alpha[a.target], alpha[a.source])
            m = self.arrow_matrices.get(a.id)
            if m is None:
                m = Matrix.zeros(*shape)
            elif m.shape != shape:
                raise DimensionError(f"arrow {a.id!r} needs a {shape[0]}x{shape[1]} matrix, got {m.shape}")
            mats[a.id] = m
        object.__setattr__(self, "dim_vector", alpha)
        object.__setattr__(self, "arrow_matrices", mats)

    @property
    def n(self) -> int:
        return sum(self.dim_vector)

    def __hash__(self):
        return hash((self.quiver, self.dim_vector, tuple(self.arrow_matrices.values())))

    def matrix(self, arrow_id: str) -> Matrix:
        return self.arrow_matrices[arrow_id]


def vertex_simple(q: Quiver, i: int) -> QuiverRep:
    return QuiverRep(q, tuple(1 if j == i else 0 for j in q.vertices))


def quiver_direct_sum(reps: Sequence[QuiverRep]) -> QuiverRep:
    if not reps:
        raise ValidationError("direct sum of no representations")
    q = reps[0].quiver
    if any(r.quiver != q for r in reps):
        raise ValidationError("direct sum of representations of different quivers")
    alpha = tuple(sum(r.dim_vector[i] for r in reps) for i in q.vertices)
    return QuiverRep(q, alpha, {a.id: Matrix.block_diag([r.matrix(a.id) for r in reps]) for a in q.arrows})


def _vertex_offsets(alpha: Sequence[int]) -> list[int]:
    out, s = [], 0
    for a in alpha:
        out.append(s)
        s += a
    return out


def quiver_rep_embed(qr: QuiverRep) -> RepPoint:
    """Block placement of qr as a point of rep_n CQ, n = sum of the dimension vector."""
    q = qr.quiver
    pres = path_algebra_presentation(q)
    n = qr.n
    off = _vertex_offsets(qr.dim_vector)
    vnames = pres.generators[:q.vertex_count]
    assignment = {}
    for i, name in enumerate(vnames):
        assignment[name] = Matrix.diag([1 if off[i] <= k < off[i] + qr.dim_vector[i] else 0 for k in range(n)])
    for a in q.arrows:
        m = qr.matrix(a.id)
        e = [0] * (n * n)
        r0, c0 = off[a.target], off[a.source]
        for r in range(m.rows):
            for c in range(m.cols):
                e[(r0 + r) * n + c0 + c] = m[r, c]
        assignment[a.id] = Matrix(n, n, e)
    return RepPoint(pres, assignment, n, check=False)


def base_change(qr: QuiverRep, g: Sequence[Matrix]) -> QuiverRep:
    """M_a -> g_j M_a g_i^-1 for every arrow a: i -> j."""
    q = qr.quiver
    if len(g) != q.vertex_count:
        raise DimensionError("need one base-change matrix per vertex")
    inv = []
    for i, gi in enumerate(g):
        if gi.shape != (qr.dim_vector[i],) * 2:
            raise DimensionError(f"base change at vertex {i} must be {qr.dim_vector[i]}x{qr.dim_vector[i]}")
        try:
            inv.append(gi.inverse())
        except SingularMatrixError:
            raise SingularMatrixError(f"base change at vertex {i} is singular") from None
    return QuiverRep(q, qr.dim_vector, {
        a.id: g[a.target] @ qr.matrix(a.id) @ inv[a.source] for a in q.arrows})


def hom_equations(v: QuiverRep, w: QuiverRep) -> tuple[list[list], int]:
    """Linear system whose kernel is Hom(V, W): tuples (f_i) of dim W_i x dim V_i
    matrices with f_j V_a = W_a f_i for each arrow a: i -> j."""
    if v.quiver != w.quiver:
        raise ValidationError("representations of different quivers")
    q = v.quiver
    a_, b_ = v.dim_vector, w.dim_vector
    offs, s = [], 0
    for i in q.vertices:
        offs.append(s)
        s += b_[i] * a_[i]
    ncols = s

    def idx(i, r, c):
        return offs[i] + r * a_[i] + c

    rows = []
    for arr in q.arrows:
        i, j = arr.source, arr.target
        V, W = v.matrix(arr.id), w.matrix(arr.id)
        for p in range(b_[j]):
            for c in range(a_[i]):
                row = [0] * ncols
                for r in range(a_[j]):
                    x = V[r, c]
                    if x:
                        row[idx(j, p, r)] += x
                for t in range(b_[i]):
                    x = W[p, t]
                    if x:
                        row[idx(i, t, c)] -= x
                rows.append(row)
    return rows, ncols


def hom_dim(v: QuiverRep, w: QuiverRep) -> int:
    rows, ncols = hom_equations(v, w)
    return ncols - rank_of_rows(rows, ncols)


def ext1_dim_quiver(v: QuiverRep, w: QuiverRep) -> int:
    return hom_dim(v, w) - euler_form(v.quiver, v.dim_vector, w.dim_vector)


# ---------------------------------------------------------------------------
# presented algebras: Hom, derivations, Ext1, tangent spaces


def _check_point(p: Presentation, x: RepPoint):
    if x.presentation != p:
        raise ValidationError("point does not belong to this presentation")


def hom_dim_presented(s: RepPoint, t: RepPoint) -> int:
    """dim {phi : T(g) phi = phi S(g) for all generators g}."""
    if s.presentation != t.presentation:
        raise ValidationError("points of different presentations")
    ds, dt = s.n, t.n
    ncols = dt * ds
    rows = []
    for g in s.presentation.generators:
        S, T = s.assignment[g], t.assignment[g]
        for p in range(dt):
            for c in range(ds):
                row = [0] * ncols
                for r in range(dt):
                    x = T[p, r]
                    if x:
                        row[r * ds + c] += x
                for k in range(ds):
                    x = S[k, c]
                    if x:
                        row[p * ds + k] -= x
                rows.append(row)
    return ncols - rank_of_rows(rows, ncols)


def _suffix_products(word: tuple, mats: Sequence[Matrix], d: int) -> list[Matrix]:
    suf = [Matrix.identity(d)] * (len(word) + 1)
    for i in range(len(word) - 1, -1, -1):
        suf[i] = mats[word[i]] @ suf[i + 1]
    return suf


def _prefix_products(word: tuple, mats: Sequence[Matrix], d: int) -> list[Matrix]:
    pre = [Matrix.identity(d)]
    for g in word:
        pre.append(pre[-1] @ mats[g])
    return pre


def derivation_equations(p: Presentation, s: RepPoint, t: RepPoint, full: bool = False) -> tuple[list[list], int]:
    """Linear system for derivations D: A -> Hom(S, T), D(ab) = T(a) D(b) + D(a) S(b).

    Unknowns are the dim T x dim S matrices D(g), flattened generator by
    generator; each relation contributes its Leibniz expansion.  With S = T = x
    the kernel is the Zariski tangent space of rep_n A at x.  With ``full``
    every relation contributes all dim T * dim S rows, zero rows included, so
    row index = relation * block + entry.
    """
    _check_point(p, s)
    _check_point(p, t)
    ds, dt = s.n, t.n
    block = dt * ds
    ncols = len(p.generators) * block
    S, T = s.matrices(), t.matrices()
    rows = []
    for rel in p.relations:
        acc: dict[int, dict[int, object]] = {}
        for word, c in rel.items():
            if not word:
                continue
            pre = _prefix_products(word, T, dt)
            suf = _suffix_products(word, S, ds)
            for i, g in enumerate(word):
                L, R = pre[i], suf[i + 1]
                base = g * block
                for pr in range(dt):
                    for r in range(dt):
                        lv = L[pr, r]
                        if not lv:
                            continue
                        lv = lv * c
                        for sc in range(ds):
                            for q in range(ds):
                                rv = R[sc, q]
                                if rv:
                                    row = acc.setdefault(pr * ds + q, {})
                                    k = base + r * ds + sc
                                    row[k] = row.get(k, 0) + lv * rv
        for key in (range(block) if full else sorted(acc)):
            row = [0] * ncols
            for k, v in acc.get(key, {}).items():
                row[k] = v
            rows.append(row)
    return rows, ncols


def derivation_dim(p: Presentation, s: RepPoint, t: RepPoint) -> int:
    rows, ncols = derivation_equations(p, s, t)
    return ncols - rank_of_rows(rows, ncols)


def ext1_dim_presented(p: Presentation, s: RepPoint, t: RepPoint) -> int:
    """dim Ext^1_A(S, T) = derivations into Hom(S, T) modulo inner derivations."""
    inner = s.n * t.n - hom_dim_presented(s, t)
    return derivation_dim(p, s, t) - inner


def tangent_dim(p: Presentation, x: RepPoint) -> int:
    return derivation_dim(p, x, x)


def tangent_basis(p: Presentation, x: RepPoint) -> list[dict[str, Matrix]]:
    """Basis of the tangent space at x, as generator -> direction matrices."""
    from .exact import kernel_of_rows
    rows, ncols = derivation_equations(p, x, x)
    n = x.n
    out = []
    for v in kernel_of_rows(rows, ncols):
        out.append({g: Matrix(n, n, v[k * n * n:(k + 1) * n * n]) for k, g in enumerate(p.generators)})
    return out


# ---------------------------------------------------------------------------
# simplicity and semisimple points


def generated_algebra_dim(x: RepPoint) -> int:
    """Dimension of the unital subalgebra of M_n spanned by all words in x."""
    n = x.n
    mats = x.matrices()
    basis = span_basis([Matrix.identity(n).entries], n * n)
    frontier = list(basis)
    while frontier:
        new = []
        for v in frontier:
            m = Matrix(n, n, v)
            new.extend((m @ g).entries for g in mats)
        nb = span_basis(basis + new, n * n)
        if len(nb) == len(basis):
            break
        frontier = [v for v in nb if v not in set(basis)]
        basis = nb
    return len(basis)


def is_absolutely_simple(x: RepPoint) -> bool:
    """Burnside: x is absolutely irreducible iff its matrices generate M_n."""
    return x.n > 0 and generated_algebra_dim(x) == x.n * x.n


Summand = Union[RepPoint, QuiverRep]


def _as_point(s: Summand) -> RepPoint:
    return quiver_rep_embed(s) if isinstance(s, QuiverRep) else s


@dataclass(frozen=True)
class SemisimplePoint:
    """S_1^m_1 + ... + S_k^m_k with pairwise non-isomorphic simple S_i.

    On construction each summand must pass the Schur check (End = scalars)
    and the Burnside check (absolutely simple); ``schur_dims`` records the
    endomorphism dimensions.
    """
    simples: tuple[tuple[Summand, int], ...]
    schur_dims: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        simples = tuple((s, m) for s, m in self.simples)
        if not simples:
            raise ValidationError("a semisimple point needs at least one summand")
        kinds = {isinstance(s, QuiverRep) for s, _ in simples}
        if len(kinds) != 1:
            raise ValidationError("mixing quiver representations and presented points")
        for s, m in simples:
            if not isinstance(m, int) or isinstance(m, bool) or m < 1:
                raise ValidationError(f"multiplicities must be positive integers, got {m!r}")
        if isinstance(simples[0][0], QuiverRep):
            q = simples[0][0].quiver
            if any(s.quiver != q for s, _ in simples):
                raise ValidationError("summands over different quivers")
            schur = tuple(hom_dim(s, s) for s, _ in simples)
        else:
            pres = simples[0][0].presentation
            if any(s.presentation != pres for s, _ in simples):
                raise ValidationError("summands of different presentations")
            schur = tuple(hom_dim_presented(s, s) for s, _ in simples)
        object.__setattr__(self, "simples", simples)
        object.__setattr__(self, "schur_dims", schur)
        for i, ((s, _), e) in enumerate(zip(simples, schur)):
            if e != 1:
                raise SchurCheckError(f"summand {i} has endomorphisms of dimension {e}")
            if not is_absolutely_simple(_as_point(s)):
                raise SchurCheckError(f"summand {i} is not absolutely simple")
        for i in range(len(simples)):
            for j in range(i + 1, len(simples)):
                si, sj = simples[i][0], simples[j][0]
                if si.n != sj.n:
                    continue
                h = hom_dim(si, sj) if isinstance(si, QuiverRep) else hom_dim_presented(si, sj)
                if h:
                    raise SchurCheckError(f"summands {i} and {j} are isomorphic")

    @property
    def is_quiver(self) -> bool:
        return isinstance(self.simples[0][0], QuiverRep)

    @property
    def presentation(self) -> Presentation:
        s = self.simples[0][0]
        return path_algebra_presentation(s.quiver) if isinstance(s, QuiverRep) else s.presentation

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.simples)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.n for s, _ in self.simples)

    @property
    def n(self) -> int:
        return sum(d * m for d, m in zip(self.dims, self.multiplicities))

    def summands(self) -> list[Summand]:
        """Each simple repeated by its multiplicity, in order."""
        return [s for s, m in self.simples for _ in range(m)]

    def representative(self) -> RepPoint:
        """The block-diagonal point of rep_n A."""
        return direct_sum([_as_point(s) for s in self.summands()])

    def quiver_representative(self) -> QuiverRep:
        if not self.is_quiver:
            raise ValidationError("not a point of a quiver")
        return quiver_direct_sum(self.summands())


def semisimplify_acyclic(qr: QuiverRep) -> SemisimplePoint:
    """Jordan-Holder semisimplification; for acyclic quivers the simples are
    the vertex simples with multiplicities given by the dimension vector."""
    q = qr.quiver
    if not q.is_acyclic():
        raise CyclicQuiverError("semisimplification is only implemented for acyclic quivers")
    simples = tuple((vertex_simple(q, i), a) for i, a in enumerate(qr.dim_vector) if a > 0)
    if not simples:
        raise ValidationError("the zero representation has no simple summands")
    return SemisimplePoint(simples)
