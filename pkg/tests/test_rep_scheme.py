import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import two_term_oracle
from ncrep.errors import (CyclicQuiverError, DimensionError, RelationViolated, SchurCheckError,
                          SingularMatrixError, ValidationError)
from ncrep.exact import Matrix, NcPolynomial, nc_evaluate
from ncrep.quiver import Quiver, euler_form, loop_quiver
from ncrep.rep_scheme import (Presentation, QuiverRep, RepPoint, SemisimplePoint, base_change,
                              commutative_presentation, conjugate, direct_sum, ext1_dim_presented,
                              ext1_dim_quiver, fixture_b_presentation, free_presentation, free_product,
                              free_product_renaming, hom_dim, hom_dim_presented, is_absolutely_simple,
                              path_algebra_presentation, quiver_direct_sum, quiver_rep_embed,
                              semisimplify_acyclic, tangent_dim, verify_point, vertex_simple)
from ncrep.sampling import (CorpusConfig, corpus_quivers, random_dim_vector, random_invertible, random_matrix,
                            random_quiver, random_quiver_rep)

A2 = Quiver.from_edges(2, [("a", 0, 1)])


# points and presentations

def test_verify_point_examples():
    fp = free_presentation(["x", "y"])
    verify_point(fp, {"x": Matrix.unit(0, 1, 2), "y": Matrix.identity(2)}, 2)
    cp = commutative_presentation(["x", "y"])
    verify_point(cp, {"x": Matrix.diag([1, 2]), "y": Matrix.diag([3, 4])}, 2)
    with pytest.raises(RelationViolated) as err:
        verify_point(cp, {"x": Matrix.unit(0, 1, 2), "y": Matrix.unit(1, 0, 2)}, 2)
    assert err.value.index == 0
    B = fixture_b_presentation()
    verify_point(B, {"x": Matrix.zeros(1), "y": Matrix.zeros(1)}, 1)
    for x, y in [(1, 0), (0, 1), (1, 1), (2, -3)]:
        with pytest.raises(RelationViolated):
            verify_point(B, {"x": Matrix.from_rows([[x]]), "y": Matrix.from_rows([[y]])}, 1)
    with pytest.raises(DimensionError):
        verify_point(fp, {"x": Matrix.identity(2), "y": Matrix.identity(3)}, 2)
    with pytest.raises(ValidationError):
        verify_point(fp, {"x": Matrix.identity(2)}, 2)


def test_presentation_rejects_unknown_generators():
    z = NcPolynomial.variables(("z",))[0]
    with pytest.raises(ValidationError):
        Presentation(("x",), (z,))


@given(st.integers(0, 10 ** 6))
def test_conjugation_preserves_relations(seed):
    rng = random.Random(seed)
    cp = commutative_presentation(["x", "y"])
    x = RepPoint(cp, {"x": Matrix.diag([rng.randint(-3, 3) for _ in range(3)]),
                      "y": Matrix.diag([rng.randint(-3, 3) for _ in range(3)])})
    g = random_invertible(rng, 3)
    y = conjugate(x, g)
    verify_point(cp, y.assignment, 3)
    assert conjugate(y, g.inverse()) == x


def test_conjugate_examples():
    cp = commutative_presentation(["x"])
    x = RepPoint(cp, {"x": Matrix.diag([1, 2])})
    assert conjugate(x, Matrix.identity(2)) == x
    perm = Matrix.from_rows([[0, 1], [1, 0]])
    assert conjugate(x, perm).assignment["x"] == Matrix.diag([2, 1])
    with pytest.raises(SingularMatrixError):
        conjugate(x, Matrix.zeros(2))


def test_direct_sum_layout():
    fp = free_presentation(["x"])
    pts = [RepPoint(fp, {"x": Matrix.from_rows([[k]])}) for k in (1, 2, 3)]
    assert direct_sum(pts[:1]) == pts[0]
    assert direct_sum([direct_sum(pts[:2]), pts[2]]) == direct_sum(pts)
    assert direct_sum(pts).assignment["x"] == Matrix.diag([1, 2, 3])


def test_free_product():
    p, q = free_presentation(["x"]), free_presentation(["x", "y"])
    prod = free_product(p, q)
    assert prod.generators == ("x", "x'", "y") and not prod.relations
    assert free_product_renaming(p, q) == {"x": "x'", "y": "y"}
    cx, cy = commutative_presentation(["x"]), commutative_presentation(["y"])
    both = free_product(cx, cy)
    verify_point(both, {"x": Matrix.unit(0, 1, 2), "y": Matrix.unit(1, 0, 2)}, 2)


@given(st.integers(0, 10 ** 6))
def test_free_product_points_are_pairs(seed):
    rng = random.Random(seed)
    B, C = fixture_b_presentation(), commutative_presentation(["x", "z"])
    prod = free_product(B, C)
    ren = free_product_renaming(B, C)
    n = 2
    nil = Matrix.unit(0, 1, 2)
    cand_b = {"x": nil.scale(rng.randint(0, 2)), "y": nil.scale(rng.randint(0, 2)) if rng.random() < .5
              else Matrix.unit(1, 0, 2)}
    d = Matrix.diag([rng.randint(0, 2), rng.randint(0, 2)])
    cand_c = {"x": d, "z": d @ d if rng.random() < .5 else random_matrix(rng, 2, bound=2)}
    ok_b = all(nc_evaluate(r, cand_b, n).is_zero() for r in B.relations)
    ok_c = all(nc_evaluate(r, cand_c, n).is_zero() for r in C.relations)
    joint = dict(cand_b)
    joint.update({ren[k]: v for k, v in cand_c.items()})
    try:
        verify_point(prod, joint, n)
        accepted = True
    except RelationViolated:
        accepted = False
    assert accepted == (ok_b and ok_c)


# quiver representations

def test_quiver_rep_shapes():
    with pytest.raises(DimensionError):
        QuiverRep(A2, (1, 2), {"a": Matrix.zeros(1, 1)})
    with pytest.raises(ValidationError):
        QuiverRep(A2, (1, 1), {"zz": Matrix.zeros(1)})


def test_embed_examples():
    q = Quiver(2)
    x = quiver_rep_embed(QuiverRep(q, (1, 1)))
    names = path_algebra_presentation(q).generators
    assert x.assignment[names[0]] == Matrix.diag([1, 0]) and x.assignment[names[1]] == Matrix.diag([0, 1])
    X = Matrix.from_rows([[1, 2], [3, 4]])
    assert quiver_rep_embed(QuiverRep(loop_quiver(1), (2,), {"x": X})).assignment["x"] == X
    y = quiver_rep_embed(QuiverRep(A2, (1, 1), {"a": Matrix.from_rows([[5]])}))
    assert y.assignment["a"] == Matrix.from_rows([[0, 0], [5, 0]])
    verify_point(y.presentation, y.assignment, 2)


@given(st.integers(0, 10 ** 6))
def test_embedded_reps_satisfy_path_algebra(seed):
    rng = random.Random(seed)
    q = random_quiver(rng, CorpusConfig(max_vertices=3, max_arrows=4))
    rep = random_quiver_rep(rng, q, random_dim_vector(rng, q, 2))
    x = quiver_rep_embed(rep)
    verify_point(x.presentation, x.assignment, x.n)


def test_base_change_examples():
    rep = QuiverRep(loop_quiver(1), (2,), {"x": Matrix.from_rows([[1, 2], [3, 4]])})
    assert base_change(rep, [Matrix.identity(2)]) == rep
    g = Matrix.from_rows([[1, 1], [0, 1]])
    assert base_change(rep, [g]).matrix("x") == g @ rep.matrix("x") @ g.inverse()
    with pytest.raises(SingularMatrixError):
        base_change(rep, [Matrix.zeros(2)])


def test_hom_examples():
    q = corpus_quivers()["A3"]
    s0, s1 = vertex_simple(q, 0), vertex_simple(q, 1)
    assert hom_dim(s0, s0) == 1 and hom_dim(s0, s1) == 0
    lq = loop_quiver(1)
    lam = lambda c: QuiverRep(lq, (1,), {"x": Matrix.from_rows([[c]])})
    assert hom_dim(lam(2), lam(2)) == 1 and hom_dim(lam(2), lam(3)) == 0


def test_ext_examples():
    rigid = QuiverRep(A2, (1, 1), {"a": Matrix.from_rows([[1]])})
    assert ext1_dim_quiver(rigid, rigid) == 0
    zero = QuiverRep(A2, (1, 1))
    assert hom_dim(zero, zero) == 2 and ext1_dim_quiver(zero, zero) == 1
    for name, q in corpus_quivers().items():
        for i in q.vertices:
            for j in q.vertices:
                assert ext1_dim_quiver(vertex_simple(q, i), vertex_simple(q, j)) == len(q.arrows_between(i, j))


@given(st.integers(0, 10 ** 6))
def test_ext_matches_two_term_complex(seed):
    rng = random.Random(seed)
    q = random_quiver(rng, CorpusConfig(max_vertices=4, max_arrows=6))
    v = random_quiver_rep(rng, q, random_dim_vector(rng, q, 3, 0), bound=2)
    w = random_quiver_rep(rng, q, random_dim_vector(rng, q, 3, 0), bound=2)
    hom, ext = two_term_oracle(v, w)
    assert hom_dim(v, w) == hom
    assert ext1_dim_quiver(v, w) == ext
    assert hom - ext == euler_form(q, v.dim_vector, w.dim_vector)


# presented Hom / Ext / tangent

def _generic_simple(n, gens=2):
    """x = diag(1..n), y = cyclic shift: a simple point of the free algebra."""
    shift = Matrix(n, n, [1 if (i + 1) % n == j else 0 for i in range(n) for j in range(n)])
    mats = [Matrix.diag(list(range(1, n + 1))), shift] + [Matrix.identity(n)] * (gens - 2)
    return {f"x{k}": m for k, m in enumerate(mats)}


@pytest.mark.parametrize("g, n", [(2, 1), (2, 2), (2, 3), (3, 2)])
def test_ext_free_algebra(g, n):
    fp = free_presentation([f"x{k}" for k in range(g)])
    x = RepPoint(fp, _generic_simple(n, g))
    assert is_absolutely_simple(x)
    assert ext1_dim_presented(fp, x, x) == (g - 1) * n * n + 1
    assert tangent_dim(fp, x) == g * n * n


def test_ext_polynomial_ring():
    fp = free_presentation(["x"])
    s = RepPoint(fp, {"x": Matrix.from_rows([[3]])})
    t = RepPoint(fp, {"x": Matrix.from_rows([[4]])})
    assert ext1_dim_presented(fp, s, s) == 1
    assert ext1_dim_presented(fp, s, t) == 0
    assert hom_dim_presented(s, t) == 0


def test_ext_fixture_b():
    B = fixture_b_presentation()
    z = RepPoint(B, {"x": Matrix.zeros(1), "y": Matrix.zeros(1)})
    assert ext1_dim_presented(B, z, z) == 2
    assert tangent_dim(B, z) == 2


def test_tangent_commuting():
    cp = commutative_presentation(["x", "y"])
    x = RepPoint(cp, {"x": Matrix.diag([1, 2]), "y": Matrix.diag([3, 4])})
    assert tangent_dim(cp, x) == 6


@pytest.mark.parametrize("name", ["A2", "A3", "kronecker", "two_cycle", "jordan", "loop_and_arrow"])
def test_presented_ext_agrees_with_quiver_ext(name):
    q = corpus_quivers()[name]
    p = path_algebra_presentation(q)
    for i in q.vertices:
        for j in q.vertices:
            si, sj = vertex_simple(q, i), vertex_simple(q, j)
            assert ext1_dim_presented(p, quiver_rep_embed(si), quiver_rep_embed(sj)) == ext1_dim_quiver(si, sj)


@given(st.integers(0, 10 ** 6))
def test_path_algebra_tangent_is_fibre_bundle_dimension(seed):
    rng = random.Random(seed)
    q = random_quiver(rng, CorpusConfig(max_vertices=3, max_arrows=3))
    alpha = random_dim_vector(rng, q, 2)
    rep = random_quiver_rep(rng, q, alpha, bound=2)
    n = sum(alpha)
    expected = n * n - sum(a * a for a in alpha) + sum(alpha[a.source] * alpha[a.target] for a in q.arrows)
    x = quiver_rep_embed(rep)
    assert tangent_dim(x.presentation, x) == expected


# semisimple points

def test_semisimple_point_checks():
    fp = free_presentation(["x"])
    with pytest.raises(SchurCheckError):
        SemisimplePoint(((RepPoint(fp, {"x": Matrix.identity(2)}), 1),))
    s = RepPoint(fp, {"x": Matrix.from_rows([[1]])})
    with pytest.raises(SchurCheckError):
        SemisimplePoint(((s, 1), (s, 1)))
    with pytest.raises(ValidationError):
        SemisimplePoint(((s, 0),))
    # not split over Q: rotation by 90 degrees has End = Q(i), dimension 2
    rot = RepPoint(fp, {"x": Matrix.from_rows([[0, -1], [1, 0]])})
    with pytest.raises(SchurCheckError):
        SemisimplePoint(((rot, 1),))


def test_semisimplify_acyclic():
    rep = QuiverRep(A2, (1, 1), {"a": Matrix.from_rows([[7]])})
    x = semisimplify_acyclic(rep)
    assert x.multiplicities == (1, 1) and x.dims == (1, 1)
    y = semisimplify_acyclic(QuiverRep(Quiver(2), (2, 3)))
    assert y.multiplicities == (2, 3)
    assert y.quiver_representative() == quiver_direct_sum([vertex_simple(Quiver(2), 0)] * 2 +
                                                          [vertex_simple(Quiver(2), 1)] * 3)
    with pytest.raises(CyclicQuiverError):
        semisimplify_acyclic(QuiverRep(loop_quiver(1), (1,)))
