"""Exact rational arithmetic: dense matrices, kernels, and the two polynomial types.

Scalars are ``int`` or :class:`fractions.Fraction`; an integral Fraction is
always stored as an ``int`` so that integer-only workloads stay on fast
Python ints.  Nothing in this module ever produces a float.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence, Union

from .errors import DimensionError, SingularMatrixError, ValidationError

Scalar = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def as_rational(x) -> Scalar:
    """Normalize an int/Fraction (or a "p/q" string) to the canonical scalar."""
    if isinstance(x, bool):
        raise ValidationError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return parse_rational(x)
    raise ValidationError(f"not a rational: {x!r}")


def parse_rational(s: str) -> Scalar:
    m = _RATIONAL_RE.match(s) if isinstance(s, str) else None
    if m is None:
        raise ValidationError(f"malformed rational {s!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return num
    den = int(m.group(2))
    if den == 0:
        raise ValidationError(f"zero denominator in {s!r}")
    return as_rational(Fraction(num, den))


def format_rational(q: Scalar) -> str:
    q = as_rational(q)
    if isinstance(q, int):
        return str(q)
    return f"{q.numerator}/{q.denominator}"


def _lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


# ---------------------------------------------------------------------------
# elimination


def _integer_rows(rows: Iterable[Sequence[Scalar]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = _lcm(x.denominator for x in row if isinstance(x, Fraction))
        if den == 1:
            irow = [int(x) for x in row]
        else:
            irow = [int(x * den) for x in row]
        if any(irow):
            out.append(irow)
    return out


def _gauss_jordan(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan elimination on integer rows.

    Each update is ``row <- p*row - f*pivot_row`` followed by division by the
    row content, so entries stay integral and small.  Returns the nonzero
    reduced rows and their pivot columns; every pivot column is zero outside
    its own row.
    """
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if not f:
                continue
            g = math.gcd(p, f)
            pp, ff = p // g, f // g
            new = [pp * a - ff * b for a, b in zip(rows[i], prow)]
            content = math.gcd(*new)
            if content > 1:
                new = [a // content for a in new]
            rows[i] = new
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank_of_rows(rows: Iterable[Sequence[Scalar]], ncols: int) -> int:
    irows = _integer_rows(rows)
    if not irows:
        return 0
    return len(_gauss_jordan(irows, ncols)[1])


def kernel_of_rows(rows: Iterable[Sequence[Scalar]], ncols: int) -> list[tuple[Scalar, ...]]:
    """Basis of {v : row . v = 0 for every row}, one vector per free column."""
    irows = _integer_rows(rows)
    reduced, pivots = _gauss_jordan(irows, ncols) if irows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v: list[Scalar] = [0] * ncols
        v[f] = 1
        for row, c in zip(reduced, pivots):
            if row[f]:
                v[c] = as_rational(Fraction(-row[f], row[c]))
        basis.append(tuple(v))
    return basis


def span_basis(vectors: Iterable[Sequence[Scalar]], dim: int) -> list[tuple[Scalar, ...]]:
    """Reduced row echelon basis (pivot entries 1) of the span of ``vectors``.

    The result is canonical: equal subspaces give identical lists.
    """
    irows = _integer_rows(vectors)
    if not irows:
        return []
    reduced, pivots = _gauss_jordan(irows, dim)
    out = []
    for row, c in zip(reduced, pivots):
        p = row[c]
        out.append(tuple(as_rational(Fraction(a, p)) if a else 0 for a in row))
    return out


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable dense matrix over Q, stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        entries = tuple(as_rational(x) for x in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise DimensionError(f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, rows: int, cols: int, entries: tuple) -> "Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "entries", entries)
        object.__setattr__(m, "_hash", None)
        return m

    # construction ---------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged matrix rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._raw(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        vals = [as_rational(v) for v in values]
        return cls._raw(n, n, tuple(vals[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def unit(cls, i: int, j: int, rows: int, cols: int | None = None) -> "Matrix":
        """Matrix unit E_ij (0-indexed)."""
        cols = rows if cols is None else cols
        e = [0] * (rows * cols)
        e[i * cols + j] = 1
        return cls._raw(rows, cols, tuple(e))

    @classmethod
    def block_diag(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        R = sum(b.rows for b in blocks)
        C = sum(b.cols for b in blocks)
        e = [0] * (R * C)
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                base = (r0 + i) * C + c0
                e[base:base + b.cols] = b.entries[i * b.cols:(i + 1) * b.cols]
            r0 += b.rows
            c0 += b.cols
        return cls._raw(R, C, tuple(e))

    # access ---------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix._raw(r1 - r0, c1 - c0, tuple(
            self.entries[i * self.cols + j] for i in range(r0, r1) for j in range(c0, c1)))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    # arithmetic -----------------------------------------------------------
    def _check_same(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected a Matrix, got {type(other).__name__}")
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(self.rows, self.cols, tuple(
            as_rational(a + b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(self.rows, self.cols, tuple(
            as_rational(a - b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "Matrix":
        c = as_rational(c)
        return Matrix._raw(self.rows, self.cols, tuple(as_rational(c * a) for a in self.entries))

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        bcols = [b[j::p] for j in range(p)] if p else []
        out = []
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            for col in bcols:
                s = sum(x * y for x, y in zip(arow, col) if x and y)
                out.append(s.numerator if isinstance(s, Fraction) and s.denominator == 1 else s)
        return Matrix._raw(n, p, tuple(out))

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self) -> Scalar:
        if not self.is_square():
            raise DimensionError("trace of a non-square matrix")
        return as_rational(sum(self.entries[i * self.cols + i] for i in range(self.rows)))

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.cols, self.rows, tuple(
            self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def rank(self) -> int:
        return rank_of_rows((self.row(i) for i in range(self.rows)), self.cols)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(self.row(i)) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
        reduced, pivots = _gauss_jordan(_integer_rows(aug), 2 * n)
        if pivots[:n] != list(range(n)):
            raise SingularMatrixError("matrix is singular")
        out = []
        for row, c in zip(reduced[:n], pivots[:n]):
            p = row[c]
            out.extend(as_rational(Fraction(x, p)) for x in row[n:])
        return Matrix._raw(n, n, tuple(out))

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    # protocol -------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rows, self.cols, self.entries)))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def solve_kernel(m: Matrix) -> list[tuple[Scalar, ...]]:
    """Exact basis of the right kernel of ``m`` (length ``m.cols - rank``)."""
    return kernel_of_rows((m.row(i) for i in range(m.rows)), m.cols)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# noncommutative polynomials


def _clean_terms(items: Iterable[tuple[tuple, Scalar]]) -> tuple:
    acc: dict = {}
    for k, c in items:
        acc[k] = acc.get(k, 0) + c
    return tuple(sorted(((k, as_rational(c)) for k, c in acc.items() if c),
                        key=lambda kv: (len(kv[0]), kv[0])))


class NcPolynomial:
    """Element of the free algebra Q<generators>.

    Words are tuples of generator indices read left to right as a matrix
    product; the empty word is the unit.
    """

    __slots__ = ("generators", "_terms")

    def __init__(self, generators: Sequence[str], terms: Mapping[tuple, Scalar] | None = None):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise ValidationError(f"duplicate generator names in {gens}")
        items = []
        for word, c in (terms or {}).items():
            word = tuple(word)
            for g in word:
                if not (isinstance(g, int) and 0 <= g < len(gens)):
                    raise ValidationError(f"word {word} uses an unknown generator index")
            items.append((word, as_rational(c)))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_terms", _clean_terms(items))

    def __setattr__(self, name, value):
        raise AttributeError("NcPolynomial is immutable")

    @classmethod
    def _make(cls, generators: tuple, items) -> "NcPolynomial":
        p = object.__new__(cls)
        object.__setattr__(p, "generators", generators)
        object.__setattr__(p, "_terms", _clean_terms(items))
        return p

    @classmethod
    def variables(cls, generators: Sequence[str]) -> tuple["NcPolynomial", ...]:
        gens = tuple(generators)
        return tuple(cls(gens, {(i,): 1}) for i in range(len(gens)))

    @classmethod
    def constant(cls, generators: Sequence[str], c: Scalar = 1) -> "NcPolynomial":
        return cls(generators, {(): c})

    @classmethod
    def from_words(cls, generators: Sequence[str], terms: Iterable[tuple[Scalar, Sequence[str]]]) -> "NcPolynomial":
        gens = tuple(generators)
        index = {g: i for i, g in enumerate(gens)}
        d: dict = {}
        for c, word in terms:
            try:
                key = tuple(index[g] for g in word)
            except KeyError as exc:
                raise ValidationError(f"unknown generator {exc.args[0]!r}") from None
            d[key] = d.get(key, 0) + as_rational(c)
        return cls(gens, d)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def word_names(self, word: tuple) -> list[str]:
        return [self.generators[i] for i in word]

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((len(w) for w, _ in self._terms), default=-1)

    def used_generators(self) -> set[str]:
        return {self.generators[i] for w, _ in self._terms for i in w}

    def reindex(self, generators: Sequence[str], rename: Mapping[str, str] | None = None) -> "NcPolynomial":
        """Re-express over a (larger) generator list, optionally renaming."""
        rename = rename or {}
        gens = tuple(generators)
        index = {g: i for i, g in enumerate(gens)}
        items = []
        for w, c in self._terms:
            try:
                items.append((tuple(index[rename.get(self.generators[i], self.generators[i])] for i in w), c))
            except KeyError as exc:
                raise ValidationError(f"generator {exc.args[0]!r} missing from target list") from None
        return NcPolynomial._make(gens, items)

    def _coerce(self, other) -> "NcPolynomial":
        if isinstance(other, NcPolynomial):
            if other.generators != self.generators:
                raise ValidationError("polynomials over different generator lists")
            return other
        return NcPolynomial._make(self.generators, [((), as_rational(other))])

    def __add__(self, other):
        other = self._coerce(other)
        return NcPolynomial._make(self.generators, self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self):
        return NcPolynomial._make(self.generators, [(w, -c) for w, c in self._terms])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return NcPolynomial._make(self.generators, [
            (w1 + w2, c1 * c2) for w1, c1 in self._terms for w2, c2 in other._terms])

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, k: int):
        result = NcPolynomial.constant(self.generators, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        return self.generators == other.generators and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.generators, self._terms))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self._terms:
            word = "*".join(self.generators[i] for i in w) or "1"
            parts.append(f"{format_rational(c)}*{word}" if c != 1 else word)
        return " + ".join(parts)


def _word_products(words: Iterable[tuple], mats: Sequence[Matrix], n: int) -> dict:
    """Matrix of every word, sharing prefixes."""
    cache: dict = {(): Matrix.identity(n)}
    for w in words:
        k = len(w)
        while w[:k] not in cache:
            k -= 1
        m = cache[w[:k]]
        for j in range(k, len(w)):
            m = m @ mats[w[j]]
            cache[w[:j + 1]] = m
    return cache


def nc_evaluate(p: NcPolynomial, assignment: Mapping[str, Matrix], n: int) -> Matrix:
    """Substitute n x n matrices for the generators of ``p`` and expand."""
    mats: list = []
    used = p.used_generators()
    for g in p.generators:
        m = assignment.get(g)
        if m is None:
            if g in used:
                raise DimensionError(f"generator {g!r} is not assigned")
        elif m.shape != (n, n):
            raise DimensionError(f"generator {g!r} has shape {m.shape}, expected {(n, n)}")
        mats.append(m)
    words = [w for w, _ in p.items()]
    cache = _word_products(words, mats, n)
    total = Matrix.zeros(n)
    for w, c in p.items():
        total = total + cache[w].scale(c)
    return total


# ---------------------------------------------------------------------------
# trace polynomials


class TracePolynomial:
    """Commutative polynomial in trace symbols nu_1, nu_2, ...

    A monomial is a sorted tuple of symbol indices (a multiset), so
    ``(1, 1, 2)`` is nu_1^2 nu_2 and ``()`` is the constant monomial.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Sequence[int], Scalar] | None = None):
        items = []
        for mono, c in (terms or {}).items():
            mono = tuple(sorted(mono))
            if any((not isinstance(k, int)) or isinstance(k, bool) or k < 1 for k in mono):
                raise ValidationError(f"trace symbol indices must be >= 1, got {mono}")
            items.append((mono, as_rational(c)))
        object.__setattr__(self, "_terms", _clean_terms(items))

    def __setattr__(self, name, value):
        raise AttributeError("TracePolynomial is immutable")

    @classmethod
    def _make(cls, items) -> "TracePolynomial":
        p = object.__new__(cls)
        object.__setattr__(p, "_terms", _clean_terms(items))
        return p

    @classmethod
    def nu(cls, k: int) -> "TracePolynomial":
        return cls({(k,): 1})

    @classmethod
    def constant(cls, c: Scalar) -> "TracePolynomial":
        return cls({(): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def symbols(self) -> set[int]:
        return {k for mono, _ in self._terms for k in mono}

    def max_symbol(self) -> int:
        return max(self.symbols(), default=0)

    def _coerce(self, other) -> "TracePolynomial":
        if isinstance(other, TracePolynomial):
            return other
        return TracePolynomial._make([((), as_rational(other))])

    def __add__(self, other):
        return TracePolynomial._make(self._terms + self._coerce(other)._terms)

    __radd__ = __add__

    def __neg__(self):
        return TracePolynomial._make([(m, -c) for m, c in self._terms])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return TracePolynomial._make([
            (tuple(sorted(m1 + m2)), c1 * c2) for m1, c1 in self._terms for m2, c2 in other._terms])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = TracePolynomial.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def substitute(self, values: Mapping[int, "TracePolynomial"]) -> "TracePolynomial":
        """Replace nu_k by ``values[k]`` where given; other symbols are kept."""
        total = TracePolynomial()
        for mono, c in self._terms:
            term = TracePolynomial.constant(c)
            for k in mono:
                term = term * values[k] if k in values else term * TracePolynomial.nu(k)
            total = total + term
        return total

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TracePolynomial.constant(other)
        if not isinstance(other, TracePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self._terms:
            counts: dict = {}
            for k in mono:
                counts[k] = counts.get(k, 0) + 1
            m = "*".join(f"nu{k}" + (f"^{e}" if e > 1 else "") for k, e in sorted(counts.items()))
            if not m:
                parts.append(format_rational(c))
            else:
                parts.append(m if c == 1 else f"{format_rational(c)}*{m}")
        return " + ".join(parts)


def trace_poly_evaluate(tp: TracePolynomial, values: Mapping[int, Scalar]) -> Scalar:
    total: Scalar = 0
    for mono, c in tp.items():
        term = c
        for k in mono:
            if k not in values:
                raise ValidationError(f"no value supplied for nu_{k}")
            term = term * as_rational(values[k])
        total += term
    return as_rational(total)
