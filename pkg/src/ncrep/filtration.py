"""Commutator filtration of finite-dimensional algebras given by structure constants.

Subspaces are kept as canonical reduced-row-echelon bases (see span_basis),
so equality of subspaces is equality of basis lists.

Indexing: a left-nested bracket with k brackets, [r_1,[r_2,...,[r_k, r_{k+1}]]],
has weight k.  F^{-d} is the sum of all products
    R L_{i_1} R L_{i_2} R ... R L_{i_m} R,   (i_1 - 1) + ... + (i_m - 1) = d,  i_j >= 2,
where L_i = R^Lie_i.  F^0 = R and F^{-1} is the commutator ideal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DimensionError, ValidationError
from .exact import Scalar, as_rational, span_basis

Vector = tuple


@dataclass(frozen=True)
class FinDimAlgebra:
    """e_i e_j = sum_k mul[i][j][k] e_k; ``unit`` holds the coordinates of 1.

    Associativity and the two-sided unit are checked on construction.  The
    zero algebra (dim 0, empty unit) is allowed; it is what a quotient
    collapses to when the unit dies.
    """
    basis: tuple[str, ...]
    mul: tuple
    unit: tuple
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        d = len(self.basis)
        if len(set(self.basis)) != d:
            raise ValidationError("duplicate basis names")
        try:
            mul = tuple(tuple(tuple(as_rational(c) for c in self.mul[i][j]) for j in range(d)) for i in range(d))
        except (TypeError, IndexError) as exc:
            raise DimensionError(f"structure constants do not fit dimension {d}") from exc
        if len(self.mul) != d or any(len(row) != d for row in self.mul) or any(
                len(v) != d for row in mul for v in row):
            raise DimensionError(f"structure constants must be a {d}x{d}x{d} array")
        unit = tuple(as_rational(c) for c in self.unit)
        if len(unit) != d:
            raise DimensionError("unit vector has the wrong length")
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "unit", unit)
        if self.check:
            self._check_axioms()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        """True for the zero ring (unit collapsed)."""
        return self.dim == 0

    def _check_axioms(self):
        d = self.dim
        for i in range(d):
            e = basis_vector(d, i)
            if self.multiply(self.unit, e) != e or self.multiply(e, self.unit) != e:
                raise ValidationError(f"unit is not a two-sided identity on {self.basis[i]!r}")
        for i in range(d):
            for j in range(d):
                ij = self.mul[i][j]
                for k in range(d):
                    left = self.multiply(ij, basis_vector(d, k))
                    right = self.multiply(basis_vector(d, i), self.mul[j][k])
                    if left != right:
                        raise ValidationError(
                            f"not associative at ({self.basis[i]}, {self.basis[j]}, {self.basis[k]})")

    def multiply(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
        d = self.dim
        out = [0] * d
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.mul[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return tuple(as_rational(x) for x in out)

    def bracket(self, u, v) -> Vector:
        return tuple(as_rational(a - b) for a, b in zip(self.multiply(u, v), self.multiply(v, u)))

    def is_commutative(self) -> bool:
        return all(self.mul[i][j] == self.mul[j][i] for i in range(self.dim) for j in range(i))

    def element(self, coords: dict[str, Scalar]) -> Vector:
        v = [0] * self.dim
        for name, c in coords.items():
            v[self.basis.index(name)] = as_rational(c)
        return tuple(v)


def basis_vector(d: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(d))


@dataclass(frozen=True)
class FiltrationProfile:
    """dims[d] = dim F^{-d}.  If the filtration reaches 0 the list ends at the
    first 0; otherwise it ends once the last value has repeated (stable)."""
    dims: tuple[int, ...]
    subspaces: tuple[tuple[Vector, ...], ...] = field(compare=False, repr=False)

    @property
    def terminates(self) -> bool:
        return self.dims[-1] == 0

    @property
    def nil_d(self) -> int | None:
        """Least d with F^{-d-1} = 0, or None when the filtration never vanishes."""
        if not self.terminates:
            return None
        return max(len(self.dims) - 2, 0)

    def graded_dims(self) -> list[int]:
        return [a - b for a, b in zip(self.dims, self.dims[1:])]


# ---------------------------------------------------------------------------
# subspaces


def whole(a: FinDimAlgebra) -> list[Vector]:
    return [basis_vector(a.dim, i) for i in range(a.dim)]


def span(a: FinDimAlgebra, vectors) -> list[Vector]:
    return span_basis(list(vectors), a.dim)


def product_space(a: FinDimAlgebra, U, V) -> list[Vector]:
    return span(a, (a.multiply(u, v) for u in U for v in V))


def two_sided_ideal(a: FinDimAlgebra, gens) -> list[Vector]:
    """R S R; with a unit this is already the ideal generated by S."""
    gens = span(a, gens)
    if not gens:
        return []
    left = product_space(a, whole(a), gens)
    return product_space(a, left, whole(a))


def is_ideal(a: FinDimAlgebra, U) -> bool:
    U = span(a, U)
    for u in U:
        for e in whole(a):
            if not contains(a, U, a.multiply(e, u)) or not contains(a, U, a.multiply(u, e)):
                return False
    return True


def contains(a: FinDimAlgebra, U, v) -> bool:
    U = list(U)
    return len(span(a, U + [tuple(v)])) == len(span(a, U))


def subspace_le(a: FinDimAlgebra, U, V) -> bool:
    V = list(V)
    return len(span(a, V + list(U))) == len(span(a, V))


def _add(a: FinDimAlgebra, U, V) -> list[Vector]:
    return span(a, list(U) + list(V))


# ---------------------------------------------------------------------------
# filtration


def lie_layer(a: FinDimAlgebra, m: int) -> list[Vector]:
    """Span of left-nested brackets [r_1,[r_2,...,[r_{m-1}, r_m]...]] over basis elements."""
    if not isinstance(m, int) or m < 1:
        raise ValidationError("Lie layer depth must be >= 1")
    layer = whole(a)
    for _ in range(m - 1):
        layer = span(a, (a.bracket(e, v) for e in whole(a) for v in layer))
        if not layer:
            break
    return layer


def _bracket_ideals(a: FinDimAlgebra, upto: int) -> list[list[Vector]]:
    """I[k] = R L_{k+1} R for k = 1..upto (I[0] unused)."""
    ideals = [whole(a)]
    layer = whole(a)
    for _ in range(upto):
        layer = span(a, (a.bracket(e, v) for e in whole(a) for v in layer)) if layer else []
        ideals.append(two_sided_ideal(a, layer))
    return ideals


def filtration_spaces(a: FinDimAlgebra, upto: int) -> list[list[Vector]]:
    """[F^0, F^{-1}, ..., F^{-upto}] via F^{-d} = sum_{k=1..d} I_k F^{-(d-k)}."""
    ideals = _bracket_ideals(a, upto)
    G = [whole(a)]
    for d in range(1, upto + 1):
        acc: list[Vector] = []
        for k in range(1, d + 1):
            if ideals[k] and G[d - k]:
                acc = _add(a, acc, product_space(a, ideals[k], G[d - k]))
        G.append(acc)
    return G


def commutator_filtration(a: FinDimAlgebra, max_depth: int | None = None) -> FiltrationProfile:
    """Compute F^{-d} until it reaches 0 or a value repeats.

    A strictly decreasing run can last at most dim(a) steps, so the default
    depth 2 dim(a) + 2 leaves room to observe a plateau.
    """
    depth = 2 * a.dim + 2 if max_depth is None else max_depth
    G = filtration_spaces(a, depth)
    dims = [len(g) for g in G]
    end = len(dims)
    for d in range(len(dims)):
        if dims[d] == 0:
            end = d + 1
            break
    dims, G = dims[:end], G[:end]
    if dims[-1] != 0:
        # trim the stable tail to a single repeat
        while len(dims) >= 3 and dims[-1] == dims[-2] == dims[-3] and G[-1] == G[-2] == G[-3]:
            dims.pop()
            G.pop()
    return FiltrationProfile(tuple(dims), tuple(tuple(g) for g in G))


def nil_d_test(a: FinDimAlgebra, d: int) -> bool:
    """True iff F^{-d-1} = 0."""
    if not isinstance(d, int) or d < 0:
        raise ValidationError("d must be a non-negative integer")
    return not filtration_spaces(a, d + 1)[d + 1]


def _quotient_data(a: FinDimAlgebra, J):
    """Complement coordinates for R/J: returns (kept columns, reducer)."""
    J = span(a, J)
    pivots = []
    for row in J:
        pivots.append(next(i for i, x in enumerate(row) if x))
    kept = [i for i in range(a.dim) if i not in set(pivots)]

    def reduce(v) -> Vector:
        v = list(v)
        for row, p in zip(J, pivots):
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return tuple(as_rational(v[i]) for i in kept)

    return kept, reduce


def quotient(a: FinDimAlgebra, J) -> FinDimAlgebra:
    if not is_ideal(a, J):
        raise ValidationError("quotient needs a two-sided ideal")
    kept, reduce = _quotient_data(a, J)
    mul = [[reduce(a.mul[i][j]) for j in kept] for i in kept]
    return FinDimAlgebra(tuple(a.basis[i] for i in kept), tuple(map(tuple, mul)), reduce(a.unit))


def commutator_ideal(a: FinDimAlgebra) -> list[Vector]:
    return two_sided_ideal(a, lie_layer(a, 2))


def abelianization(a: FinDimAlgebra) -> FinDimAlgebra:
    """R / (R [R,R] R).  The result has ``is_zero`` set when the unit collapses."""
    return quotient(a, commutator_ideal(a))


# ---------------------------------------------------------------------------
# fixtures


def _from_products(basis: Sequence[str], table: dict[tuple[str, str], dict[str, Scalar]]) -> FinDimAlgebra:
    """Build an algebra whose first basis element is the unit; missing products are 0."""
    d = len(basis)
    idx = {b: i for i, b in enumerate(basis)}
    mul = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        mul[0][i][i] = 1
        mul[i][0][i] = 1
    for (u, v), out in table.items():
        vec = [0] * d
        for name, c in out.items():
            vec[idx[name]] = as_rational(c)
        mul[idx[u]][idx[v]] = vec
    return FinDimAlgebra(tuple(basis), tuple(tuple(tuple(v) for v in row) for row in mul),
                         basis_vector(d, 0))


def fixture_b_algebra() -> FinDimAlgebra:
    """C<x,y>/(x^2, y^2, xy + yx) on the basis 1, x, y, xy."""
    return _from_products(("1", "x", "y", "xy"), {
        ("x", "y"): {"xy": 1},
        ("y", "x"): {"xy": -1},
    })


def exterior_algebra(k: int) -> FinDimAlgebra:
    """Lambda(Q^k); k = 2 recovers the fixture B algebra up to naming."""
    from itertools import combinations
    subsets = [s for r in range(k + 1) for s in combinations(range(k), r)]
    names = ["1" if not s else "^".join(f"e{i}" for i in s) for s in subsets]
    index = {s: i for i, s in enumerate(subsets)}
    d = len(subsets)
    mul = []
    for s in subsets:
        row = []
        for t in subsets:
            vec = [0] * d
            if not set(s) & set(t):
                seq = list(s) + list(t)
                inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
                vec[index[tuple(sorted(seq))]] = -1 if inv % 2 else 1
            row.append(tuple(vec))
        mul.append(tuple(row))
    return FinDimAlgebra(tuple(names), tuple(mul), basis_vector(d, 0))


def matrix_algebra(n: int) -> FinDimAlgebra:
    """M_n on matrix units E_ij, ordered row-major."""
    if n < 1:
        raise ValidationError("matrix size must be >= 1")
    d = n * n
    names = tuple(f"E{i}{j}" if n < 10 else f"E{i}_{j}" for i in range(n) for j in range(n))
    mul = []
    for i in range(n):
        for j in range(n):
            row = []
            for k in range(n):
                for l in range(n):
                    row.append(basis_vector(d, i * n + l) if j == k else (0,) * d)
            mul.append(tuple(row))
    unit = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
    return FinDimAlgebra(names, tuple(mul), unit)


def upper_triangular_algebra(n: int) -> FinDimAlgebra:
    """Upper triangular n x n matrices."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: k for k, p in enumerate(pairs)}
    d = len(pairs)
    mul = []
    for (i, j) in pairs:
        row = []
        for (k, l) in pairs:
            row.append(basis_vector(d, index[(i, l)]) if j == k else (0,) * d)
        mul.append(tuple(row))
    unit = tuple(1 if i == j else 0 for i, j in pairs)
    return FinDimAlgebra(tuple(f"E{i}{j}" for i, j in pairs), tuple(mul), unit)


def truncated_polynomial_algebra(k: int) -> FinDimAlgebra:
    """Q[t]/(t^k), commutative of dimension k."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    mul = tuple(tuple(basis_vector(k, i + j) if i + j < k else (0,) * k for j in range(k)) for i in range(k))
    return FinDimAlgebra(tuple("1" if i == 0 else f"t^{i}" for i in range(k)), mul, basis_vector(k, 0))


def tensor_algebra(a: FinDimAlgebra, b: FinDimAlgebra) -> FinDimAlgebra:
    """a (x) b with (u (x) v)(u' (x) v') = uu' (x) vv'."""
    da, db = a.dim, b.dim
    mul = []
    for i in range(da):
        for j in range(db):
            row = []
            for k in range(da):
                for l in range(db):
                    x, y = a.mul[i][k], b.mul[j][l]
                    row.append(tuple(as_rational(x[p] * y[q]) for p in range(da) for q in range(db)))
            mul.append(tuple(row))
    unit = tuple(as_rational(a.unit[p] * b.unit[q]) for p in range(da) for q in range(db))
    names = tuple(f"{u}*{v}" for u in a.basis for v in b.basis)
    return FinDimAlgebra(names, tuple(mul), unit)
