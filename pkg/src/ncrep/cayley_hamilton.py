"""Formal Cayley-Hamilton polynomials, trace reduction and standard identities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .errors import DimensionError, ValidationError
from .exact import Matrix, TracePolynomial, trace_poly_evaluate


@dataclass(frozen=True)
class ChPolynomial:
    """chi^(n)(t) = sum_k coefficients[k] * t^(n-k), coefficients[0] = 1."""
    degree: int
    coefficients: tuple[TracePolynomial, ...]

    def evaluate_coefficients(self, power_sums) -> list:
        """Coefficients with nu_k replaced by power_sums[k] (a mapping or 1-based sequence)."""
        if not hasattr(power_sums, "keys"):
            power_sums = {k + 1: v for k, v in enumerate(power_sums)}
        return [trace_poly_evaluate(c, power_sums) for c in self.coefficients]


@lru_cache(maxsize=None)
def _elementary(n: int) -> tuple[TracePolynomial, ...]:
    # Newton: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} nu_i
    e = [TracePolynomial.constant(1)]
    for k in range(1, n + 1):
        acc = TracePolynomial()
        for i in range(1, k + 1):
            term = e[k - i] * TracePolynomial.nu(i)
            acc = acc + term if i % 2 == 1 else acc - term
        e.append(acc * Fraction(1, k))
    return tuple(e)


def ch_coefficients(n: int) -> ChPolynomial:
    if not isinstance(n, int) or n < 1:
        raise ValidationError("degree must be a positive integer")
    e = _elementary(n)
    return ChPolynomial(n, tuple(e[k] if k % 2 == 0 else -e[k] for k in range(n + 1)))


def power_traces(a: Matrix, upto: int) -> dict[int, object]:
    vals = {}
    p = a
    for k in range(1, upto + 1):
        vals[k] = p.trace()
        if k < upto:
            p = p @ a
    return vals


def ch_check(a: Matrix, n: int) -> Matrix:
    """chi^(n)_a(a) with nu_k = tr(a^k); zero for every n x n matrix."""
    if a.shape != (n, n):
        raise DimensionError(f"expected a {n}x{n} matrix, got {a.shape}")
    coeffs = ch_coefficients(n).evaluate_coefficients(power_traces(a, n))
    # Horner: (((a + c1) a + c2) a + ...) + cn
    result = Matrix.identity(n)
    ident = Matrix.identity(n)
    for c in coeffs[1:]:
        result = result @ a + ident.scale(c)
    return result


@lru_cache(maxsize=None)
def _reduce(m: int, n: int) -> TracePolynomial:
    if m <= n:
        return TracePolynomial.nu(m)
    # tr(a^(m-n) chi(a)) = sum_k c_k nu_{m-k} = 0 with c_0 = 1
    coeffs = ch_coefficients(n).coefficients
    acc = TracePolynomial()
    for k in range(1, n + 1):
        acc = acc - coeffs[k] * _reduce(m - k, n)
    return acc


def trace_reduce(m: int, n: int) -> TracePolynomial:
    """nu_m as a polynomial in nu_1..nu_n, valid on n x n matrices (m > n)."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError("degree must be a positive integer")
    if not isinstance(m, int) or m <= n:
        raise ValidationError(f"trace_reduce needs m > n, got m={m}, n={n}")
    return _reduce(m, n)


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def standard_identity(m: int, args: Sequence[Matrix]) -> Matrix:
    """S_2m(r_1..r_2m) = sum over all permutations of sign * ordered product."""
    if m < 1 or len(args) != 2 * m:
        raise ValidationError(f"S_{2 * m} needs exactly {2 * m} arguments, got {len(args)}")
    size = args[0].rows
    for r in args:
        if r.shape != (size, size):
            raise DimensionError("standard identity arguments must be square of equal size")
    total = Matrix.zeros(size)
    prefix: dict = {(): Matrix.identity(size)}

    def product(key):
        if key not in prefix:
            prefix[key] = product(key[:-1]) @ args[key[-1]]
        return prefix[key]

    for perm in permutations(range(2 * m)):
        prod = product(perm[:-1]) @ args[perm[-1]]
        total = total + prod if permutation_sign(perm) > 0 else total - prod
    return total
