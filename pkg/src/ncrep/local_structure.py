"""Local quiver data at semisimple points, smoothness probes and strata labels.

Smoothness at a semisimple point x is decided by comparing the Zariski
tangent dimension of rep_n A at x with the dimension of the second-order
tangent cone: the tangent vectors whose first-order deformation extends to
second order.  At a smooth point every tangent vector extends, so the two
agree; a strictly smaller cone certifies a singular or non-reduced point.
When a known family through x already fills the tangent space (no
relations, or the fibre-bundle family of a path algebra), smoothness is
certified outright.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence, Union

from .errors import DimensionError, ValidationError
from .exact import Matrix, kernel_of_rows, rank_of_rows
from .quiver import Arrow, Quiver
from .rep_scheme import (Presentation, RepPoint, SemisimplePoint, derivation_equations,
                         direct_sum, ext1_dim_presented, ext1_dim_quiver,
                         path_algebra_presentation, quiver_rep_embed, tangent_basis)

SMOOTH = "smooth"
SINGULAR = "singular-or-nonreduced"


@dataclass(frozen=True)
class LocalData:
    local_quiver: Quiver
    alpha_x: tuple[int, ...]
    simple_dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.alpha_x) != self.local_quiver.vertex_count or len(self.simple_dims) != len(self.alpha_x):
            raise DimensionError("local data lengths disagree with the local quiver")

    @property
    def n(self) -> int:
        return sum(m * d for m, d in zip(self.alpha_x, self.simple_dims))

    def arrow_counts(self) -> list[list[int]]:
        """counts[i][j] = number of arrows i -> j."""
        k = self.local_quiver.vertex_count
        counts = [[0] * k for _ in range(k)]
        for a in self.local_quiver.arrows:
            counts[a.source][a.target] += 1
        return counts


@dataclass(frozen=True)
class SmoothnessReport:
    tangent_dimension: int
    predicted_dimension: int
    verdict: str
    local_quiver_dimension: int
    lower_bound: int
    certified: bool


def _local_quiver_from_counts(counts: Sequence[Sequence[int]]) -> Quiver:
    arrows = []
    k = len(counts)
    for i in range(k):
        for j in range(k):
            for c in range(counts[i][j]):
                arrows.append(Arrow(f"a{i}_{j}_{c}", i, j))
    return Quiver(k, tuple(arrows))


def _uses_quiver_route(p, x: SemisimplePoint) -> bool:
    if not x.is_quiver:
        return False
    q = x.simples[0][0].quiver
    if isinstance(p, Quiver):
        if p != q:
            raise ValidationError("semisimple point lives on a different quiver")
        return True
    if p.quiver is not None and p.quiver == q:
        return True
    raise ValidationError("quiver representations need the quiver or its path-algebra presentation")


def local_quiver(p: Union[Presentation, Quiver], x: SemisimplePoint) -> LocalData:
    """Q(x): one vertex per simple, dim Ext^1(S_i, S_j) arrows i -> j."""
    simples = [s for s, _ in x.simples]
    k = len(simples)
    if _uses_quiver_route(p, x):
        counts = [[ext1_dim_quiver(simples[i], simples[j]) for j in range(k)] for i in range(k)]
    else:
        if isinstance(p, Quiver):
            raise ValidationError("presented points need a Presentation")
        counts = [[ext1_dim_presented(p, simples[i], simples[j]) for j in range(k)] for i in range(k)]
    return LocalData(_local_quiver_from_counts(counts), x.multiplicities, x.dims)


def predicted_dim(ld: LocalData, n: int) -> int:
    """dim GL_n x^GL(alpha) rep_alpha Q(x) = n^2 - sum m_i^2 + sum_{i->j} m_i m_j."""
    if ld.n != n:
        raise ValidationError(f"local data describes dimension {ld.n}, not {n}")
    m = ld.alpha_x
    return n * n - sum(a * a for a in m) + sum(m[a.source] * m[a.target] for a in ld.local_quiver.arrows)


# ---------------------------------------------------------------------------
# smoothness


def _flatten(mats: Sequence[Matrix]) -> list:
    out = []
    for m in mats:
        out.extend(m.entries)
    return out


def family_lower_bound(p: Presentation, x: RepPoint) -> int:
    """Dimension of a known family through x inside rep_n A (a lower bound on
    the local dimension).

    Free presentations: the whole space.  Path algebras: the rank at x of
    (g, V) -> g V g^-1 over GL_n x rep_alpha Q.  Otherwise the orbit GL_n . x.
    """
    n = x.n
    if not p.relations:
        return len(p.generators) * n * n
    gens = p.generators
    mats = x.matrices()
    vectors = []
    for k in range(n):
        for l in range(n):
            xi = Matrix.unit(k, l, n)
            vectors.append(_flatten([xi @ m - m @ xi for m in mats]))
    if p.quiver is None:
        return rank_of_rows(vectors, len(gens) * n * n)
    q = p.quiver
    proj = {i: x.assignment[gens[i]] for i in q.vertices}
    block = n * n
    for a in q.arrows:
        gi = gens.index(a.id)
        for k in range(n):
            for l in range(n):
                d = proj[a.target] @ Matrix.unit(k, l, n) @ proj[a.source]
                if d.is_zero():
                    continue
                v = [0] * (len(gens) * block)
                v[gi * block:(gi + 1) * block] = d.entries
                vectors.append(v)
    return rank_of_rows(vectors, len(gens) * block)


def _relation_second_order(p: Presentation, x: RepPoint, D: dict, E: dict) -> list:
    """Flattened sum over relations of the eps^2 coefficient bilinear in (D, E):
    sum_{i<j} X(w[:i]) D(w_i) X(w[i+1:j]) E(w_j) X(w[j+1:])."""
    n = x.n
    X = x.matrices()
    gens = p.generators
    Dm = [D[g] for g in gens]
    Em = [E[g] for g in gens]
    out = []
    for rel in p.relations:
        total = Matrix.zeros(n)
        for word, c in rel.items():
            L = len(word)
            if L < 2:
                continue
            pre = [Matrix.identity(n)]
            for g in word:
                pre.append(pre[-1] @ X[g])
            suf = [Matrix.identity(n)] * (L + 1)
            for i in range(L - 1, -1, -1):
                suf[i] = X[word[i]] @ suf[i + 1]
            for i in range(L - 1):
                M = pre[i] @ Dm[word[i]]
                if M.is_zero():
                    continue
                for j in range(i + 1, L):
                    total = total + (M @ Em[word[j]] @ suf[j + 1]).scale(c)
                    M = M @ X[word[j]]
        out.extend(total.entries)
    return out


def jacobian_rows(p: Presentation, x: RepPoint) -> tuple[list[list], int]:
    """Full Jacobian of the relations at x: one row per (relation, entry)."""
    return derivation_equations(p, x, x, full=True)


def second_order_cone(p: Presentation, x: RepPoint):
    """Equations of the second-order tangent cone in tangent coordinates.

    Returns (tangent_basis, equations) where each equation is a dict
    {(a, b): coefficient} with a <= b for the quadratic form sum c t_a t_b.
    An empty equation list means no tangent direction is obstructed at
    second order.
    """
    basis = tangent_basis(p, x)
    jac, ncols = jacobian_rows(p, x)
    nrows = len(jac)
    cols_of_jac = [[jac[r][c] for r in range(nrows)] for c in range(ncols)]
    funcs = kernel_of_rows(cols_of_jac, nrows)  # w with w^T J = 0
    if not funcs:
        return basis, []
    r = len(basis)
    pair_values = {}
    for a in range(r):
        for b in range(a, r):
            v = _relation_second_order(p, x, basis[a], basis[b])
            if a != b:
                w = _relation_second_order(p, x, basis[b], basis[a])
                v = [s + t for s, t in zip(v, w)]
            pair_values[(a, b)] = v
    equations = []
    for f in funcs:
        eq = {}
        for key, v in pair_values.items():
            c = sum(fi * vi for fi, vi in zip(f, v) if fi and vi)
            if c:
                eq[key] = c
        if eq:
            equations.append(eq)
    return basis, equations


def cone_dimension(r: int, equations: list[dict]) -> int:
    """Dimension of the affine variety in Q^r cut out by homogeneous quadrics."""
    if not equations:
        return r
    import sympy

    ts = sympy.symbols(f"t0:{r}")
    polys = [sum(sympy.Rational(c.numerator, c.denominator) * ts[a] * ts[b] for (a, b), c in eq.items())
             for eq in equations]
    gb = sympy.groebner(polys, *ts, order="grevlex")
    leads = []
    for g in gb.exprs:
        lm = sympy.Poly(g, *ts).monoms(order="grevlex")[0]
        leads.append(frozenset(i for i, e in enumerate(lm) if e))
    if any(not s for s in leads):
        return 0
    for size in range(r, -1, -1):
        for subset in combinations(range(r), size):
            s = set(subset)
            if not any(lead <= s for lead in leads):
                return size
    return 0


def smoothness_report(p: Union[Presentation, Quiver], x: SemisimplePoint) -> SmoothnessReport:
    if isinstance(p, Quiver):
        p = path_algebra_presentation(p)
    rep = x.representative()
    if rep.presentation != p:
        raise ValidationError("semisimple point does not belong to this presentation")
    from .rep_scheme import tangent_dim
    tdim = tangent_dim(p, rep)
    luna = predicted_dim(local_quiver(p, x), x.n)
    lower = family_lower_bound(p, rep)
    if lower == tdim:
        return SmoothnessReport(tdim, tdim, SMOOTH, luna, lower, True)
    basis, equations = second_order_cone(p, rep)
    cone = cone_dimension(len(basis), equations)
    verdict = SMOOTH if cone == tdim else SINGULAR
    return SmoothnessReport(tdim, cone, verdict, luna, lower, verdict == SINGULAR)


# ---------------------------------------------------------------------------
# strata


def strata_label(x: SemisimplePoint) -> int:
    """Dimension of a maximal torus of Stab(x) = prod GL_{m_i}, i.e. sum m_i."""
    return sum(x.multiplicities)


def _word_traces_agree(a: RepPoint, b: RepPoint, max_len: int) -> bool:
    n = a.n
    A, B = a.matrices(), b.matrices()
    stack = [(Matrix.identity(n), Matrix.identity(b.n), 0)]
    while stack:
        pa, pb, depth = stack.pop()
        if pa.trace() != pb.trace():
            return False
        if depth == max_len or (pa.is_zero() and pb.is_zero()):
            continue
        for ga, gb in zip(A, B):
            stack.append((pa @ ga, pb @ gb, depth + 1))
    return True


def strata_check(x: SemisimplePoint, candidate: RepPoint | None = None, max_len: int | None = None) -> bool:
    """Constructive check that x lies in GL_n . Im c_(n_1..n_r), r = sum m_i.

    Without a candidate the block representative is rebuilt from its r
    summands and compared entrywise.  With a candidate (e.g. a conjugate of
    the representative) all word traces up to length ``max_len`` (default
    2n) are compared.
    """
    rep = x.representative()
    pieces = x.summands()
    rebuilt = direct_sum([s if isinstance(s, RepPoint) else quiver_rep_embed(s) for s in pieces])
    if len(pieces) != strata_label(x) or rebuilt.assignment != rep.assignment:
        return False
    if candidate is None:
        return True
    if candidate.presentation != rep.presentation or candidate.n != rep.n:
        return False
    return _word_traces_agree(candidate, rep, 2 * rep.n if max_len is None else max_len)


def merge_simples(x: SemisimplePoint, i: int, j: int) -> SemisimplePoint:
    """Degenerate S_j onto S_i (equal dimensions): S_i^(m_i + m_j) replaces both."""
    if i == j or not (0 <= i < len(x.simples) and 0 <= j < len(x.simples)):
        raise ValidationError("merge needs two distinct summand indices")
    (si, mi), (sj, mj) = x.simples[i], x.simples[j]
    if si.n != sj.n:
        raise ValidationError("only simples of equal dimension can merge")
    simples = [(s, m) for k, (s, m) in enumerate(x.simples) if k != j]
    pos = i if i < j else i - 1
    simples[pos] = (si, mi + mj)
    return SemisimplePoint(tuple(simples))
