import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import matrices, rationals, square
from ncrep.errors import DimensionError, SingularMatrixError, ValidationError
from ncrep.exact import (Matrix, NcPolynomial, TracePolynomial, as_rational, commutator, format_rational,
                         kernel_of_rows, nc_evaluate, parse_rational, rank_of_rows, solve_kernel, span_basis,
                         trace_poly_evaluate)


def sympy_rank(m: Matrix) -> int:
    return sympy.Matrix(m.rows, m.cols, [sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction)
                                         else x for x in m.entries]).rank()


# scalars

@pytest.mark.parametrize("text, value", [("3", 3), ("-4/6", Fraction(-2, 3)), ("10/5", 2), ("0/7", 0)])
def test_parse_rational(text, value):
    assert parse_rational(text) == value
    assert type(parse_rational("10/5")) is int


@pytest.mark.parametrize("bad", ["1.5", "1/0", "", "x", "1//2", "--1", "1/-2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValidationError):
        parse_rational(bad)


def test_as_rational_rejects_float_and_bool():
    for bad in (0.5, True, None):
        with pytest.raises(ValidationError):
            as_rational(bad)


@given(rationals)
def test_format_parse_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


# matrices

def test_kernel_examples():
    assert solve_kernel(Matrix.identity(2)) == []
    assert solve_kernel(Matrix.from_rows([[1, -1]])) == [(1, 1)]


def test_random_kernel_multiplies_back_to_zero():
    rng = random.Random(5)
    for _ in range(20):
        m = Matrix(5, 8, [rng.randint(-3, 3) for _ in range(40)])
        basis = solve_kernel(m)
        assert len(basis) == 8 - m.rank()
        for v in basis:
            assert (m @ Matrix(8, 1, v)).is_zero()


@given(matrices(max_size=5))
def test_rank_matches_sympy(m):
    assert m.rank() == sympy_rank(m)


@given(matrices(max_size=4, elements=rationals))
def test_rank_nullity(m):
    assert m.rank() + len(solve_kernel(m)) == m.cols


@given(square(3))
def test_inverse(m):
    if m.rank() < 3:
        with pytest.raises(SingularMatrixError):
            m.inverse()
    else:
        assert m @ m.inverse() == Matrix.identity(3)
        assert m ** -1 == m.inverse()


@given(square(3), square(3), square(3))
def test_ring_axioms(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    assert (a @ b).trace() == (b @ a).trace()
    assert commutator(a, b).trace() == 0


def test_span_basis_canonical():
    u = span_basis([(1, 2, 3), (2, 4, 6), (0, 1, 1)], 3)
    v = span_basis([(0, 2, 2), (1, 3, 4)], 3)
    assert u == v
    assert rank_of_rows([], 3) == 0
    assert kernel_of_rows([], 2) == [(1, 0), (0, 1)]


def test_shape_errors():
    with pytest.raises(DimensionError):
        Matrix(2, 2, [1, 2, 3])
    with pytest.raises(DimensionError):
        Matrix.identity(2) @ Matrix.identity(3)
    with pytest.raises(TypeError):
        Matrix.identity(2) + 1


def test_block_diag():
    m = Matrix.block_diag([Matrix.identity(1), Matrix.from_rows([[1, 2], [3, 4]])])
    assert m.to_rows() == [[1, 0, 0], [0, 1, 2], [0, 3, 4]]
    assert m.block(1, 3, 1, 3) == Matrix.from_rows([[1, 2], [3, 4]])


# noncommutative polynomials

E12 = Matrix.unit(0, 1, 2)
E21 = Matrix.unit(1, 0, 2)


def test_nc_evaluate_examples():
    x, y = NcPolynomial.variables(("x", "y"))
    one = Matrix.identity(2)
    assert nc_evaluate(x * y - y * x, {"x": one, "y": one}, 2).is_zero()
    assert nc_evaluate(x * x, {"x": E12}, 2).is_zero()
    assert nc_evaluate(x * y + y * x, {"x": E12, "y": E21}, 2) == one


def test_nc_polynomial_algebra():
    x, y = NcPolynomial.variables(("x", "y"))
    p = (x + y) ** 2
    assert p == x * x + x * y + y * x + y * y
    assert p.degree() == 2
    assert (p - p).is_zero()
    assert 2 * x - x == x
    assert NcPolynomial.from_words(("x", "y"), [(1, ["x", "y"]), (-1, ["y", "x"])]) == x * y - y * x


@given(square(2), square(2), st.lists(st.tuples(st.integers(-3, 3), st.lists(st.sampled_from("xy"), max_size=4)),
                                        max_size=4))
def test_evaluation_is_a_homomorphism(a, b, words):
    gens = ("x", "y")
    p = NcPolynomial.from_words(gens, words)
    q = NcPolynomial.variables(gens)[0] + 1
    env = {"x": a, "y": b}
    assert nc_evaluate(p * q, env, 2) == nc_evaluate(p, env, 2) @ nc_evaluate(q, env, 2)
    assert nc_evaluate(p + q, env, 2) == nc_evaluate(p, env, 2) + nc_evaluate(q, env, 2)


# trace polynomials

def test_trace_poly_evaluate_examples():
    nu1, nu2 = TracePolynomial.nu(1), TracePolynomial.nu(2)
    assert trace_poly_evaluate(nu1 ** 2 - nu2, {1: 3, 2: 5}) == 4
    assert trace_poly_evaluate(TracePolynomial(), {}) == 0
    e2 = (nu1 ** 2 - nu2) * Fraction(1, 2)
    assert trace_poly_evaluate(e2, {1: 5, 2: 13}) == 6
    with pytest.raises(ValidationError):
        trace_poly_evaluate(nu2, {1: 1})


def test_trace_poly_substitute():
    nu1, nu2 = TracePolynomial.nu(1), TracePolynomial.nu(2)
    assert (nu2 * nu1).substitute({2: nu1 ** 2}) == nu1 ** 3
    assert repr(nu1 ** 2) == "nu1^2"
