import random

import numpy as np
import pytest

from helpers import PRIMES, random_poly
from orthinv import graded
from orthinv.catalog import covariant_basis, forms, set_A, set_B, vector_invariants
from orthinv.errors import (
    BadDenominator,
    FieldMismatch,
    ModularOrder,
    NegativeCoefficient,
    NotHInvariant,
    NotInvariantGenerator,
)
from orthinv.invariants import (
    act,
    fixed_space,
    hilbert_dims,
    invariant_basis,
    is_invariant,
    relative_reynolds,
    relative_reynolds_image_dims,
    reynolds,
    subalgebra_basis,
    transfer,
    verify_free_basis,
    verify_generating_set,
)
from orthinv.linalg import det_mod, left_nullspace, rank, rref
from orthinv.matgroups import Mat2, ProductGroup, closure, orthogonal_group, random_gl2, special_subgroup, tau, xi
from orthinv.polyring import Polynomial, parse_poly
from orthinv.series import (
    hsop_denominator,
    quotient_numerator,
    s_invariant,
    series_expand,
    trim,
)

P = parse_poly


def so_plus(p):
    return special_subgroup(orthogonal_group(p, "plus"))


# ---------------------------------------------------------------------------
# linear algebra
# ---------------------------------------------------------------------------

def test_rref_and_rank():
    M = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.int64)
    R, piv = rref(M, 7)
    assert piv == [0, 1] and R.shape == (2, 3)
    assert rank(M, 7) == 2
    assert rank(np.zeros((0, 3), dtype=np.int64), 7) == 0


def test_left_nullspace():
    rng = np.random.default_rng(0)
    for p in PRIMES:
        M = rng.integers(0, p, size=(6, 4))
        N = left_nullspace(M, p)
        assert N.shape[0] == 6 - rank(M, p)
        assert not ((N @ M) % p).any()


def test_det_mod():
    assert det_mod([[1, 2], [3, 4]], 5) == 3
    assert det_mod([[1, 2], [2, 4]], 7) == 0


# ---------------------------------------------------------------------------
# action and operators
# ---------------------------------------------------------------------------

def test_act_examples():
    p = 5
    for u in range(3):
        for v in range(3):
            for s in range(3):
                for t in range(3):
                    m = Polynomial.monomial((u, v, s, t), p)
                    assert act(tau(2, p), m) == m.scale(pow(2, u + t - v - s, p))
    assert act(xi(p), P("x1*y1", p)) == P("x2*y2", p)
    f = P("x1^2*y2 + 3*x2", p)
    assert act(Mat2.identity(p), f) == f


def test_act_field_mismatch():
    with pytest.raises(FieldMismatch):
        act(tau(2, 5), P("x1", 7))


def test_reynolds_examples():
    G = orthogonal_group(5, "plus")
    assert str(reynolds(G, P("x1*y1", 5))) == "3*x1*y1 + 3*x2*y2"
    assert reynolds(G, P("x1*y1", 5)) == relative_reynolds(G, special_subgroup(G), P("x1*y1", 5))
    assert reynolds(G, P("x1", 5)).is_zero()
    inv = P("x1*x2 + 2*y1*y2", 5)
    assert reynolds(G, inv) == inv


def test_reynolds_modular_order():
    # |GL_2(F_3)| = 48 is divisible by 3
    from orthinv.matgroups import general_linear_group

    with pytest.raises(ModularOrder):
        reynolds(general_linear_group(3), P("x1", 3))


def test_relative_reynolds_examples():
    p = 5
    G = orthogonal_group(p, "plus")
    H = special_subgroup(G)
    half = pow(2, -1, p)
    assert relative_reynolds(G, H, P("x2*y2", p)) == P("x2*y2 + x1*y1", p).scale(half)
    G3 = orthogonal_group(3, "plus")
    H3 = special_subgroup(G3)
    for i in range(3):
        f = Polynomial.monomial((2 - i, 0, 0, i), 3)
        g = Polynomial.monomial((0, 2 - i, i, 0), 3)
        assert relative_reynolds(G3, H3, f) == (f + g).scale(2)
    assert relative_reynolds(G, H, P("x1*x2", p)) == P("x1*x2", p)
    with pytest.raises(NotHInvariant):
        relative_reynolds(G, H, P("x1", p))


def test_transfer_examples():
    G = orthogonal_group(3, "minus")
    assert transfer(G, Polynomial.constant(1, 3)) == Polynomial.constant(2, 3)
    fam = covariant_basis(3)
    assert transfer(G, P("x1^3*y1", 3)) == fam["f5"]
    assert is_invariant(G, transfer(G, P("x1^2*y2 + y1", 3)))


@pytest.mark.parametrize("p", PRIMES)
def test_reynolds_properties(p):
    rng = random.Random(10 * p)
    for G in (so_plus(p), orthogonal_group(p, "plus"), orthogonal_group(p, "minus")):
        for _ in range(200 // 3 + 1):
            f = random_poly(rng, p)
            R = reynolds(G, f)
            g = G.elements[rng.randrange(G.order)]
            assert reynolds(G, R) == R
            assert reynolds(G, act(g, f)) == R
            assert act(g, R) == R


@pytest.mark.parametrize("p", PRIMES)
def test_transfer_module_homomorphism(p):
    rng = random.Random(20 * p)
    G = orthogonal_group(p, "minus")
    invs = forms(p).polys + [P("x1*y1 + x2*y2", p)]
    for _ in range(50):
        f = random_poly(rng, p)
        h = invs[rng.randrange(len(invs))]
        T = transfer(G, f)
        assert is_invariant(G, T)
        assert transfer(G, h * f) == h * T


# ---------------------------------------------------------------------------
# fixed spaces and the graded engine
# ---------------------------------------------------------------------------

def test_fixed_space_examples():
    basis = fixed_space(so_plus(5), 2).basis(2)
    assert len(basis) == 4
    assert set(map(str, basis)) == {"x1*x2", "y1*y2", "x1*y1", "x2*y2"}
    assert fixed_space(so_plus(3), 2).dim(2) == 10
    for G in (so_plus(7), orthogonal_group(5, "minus"), ProductGroup(orthogonal_group(3, "minus"))):
        assert fixed_space(G, 0).dim(0) == 1


def test_fixed_space_members_are_invariant():
    G = orthogonal_group(5, "minus")
    for d in range(7):
        for f in fixed_space(G, d).basis(d):
            assert all(act(g, f) == f for g in G)


@pytest.mark.parametrize("p", [3, 5])
def test_fixed_space_matches_reynolds_image(p):
    # independent oracle: span of Reynolds images of all degree-d monomials
    G = orthogonal_group(p, "minus")
    for d in range(5):
        images = [reynolds(G, Polynomial.monomial(m, p)) for m in graded.degree_monomials(d)]
        rows = np.array([graded.to_vector(f, d) for f in images], dtype=np.int64)
        assert rank(rows, p) == fixed_space(G, d).dim(d)


@pytest.mark.parametrize("p", PRIMES)
def test_block_action_matches_substitution(p):
    rng = random.Random(p)
    elems = [random_gl2(p, rng) for _ in range(5)]
    G = orthogonal_group(p, "minus")
    elems += [G.rotation, G.reflection]
    for g in elems:
        for key in [(0, 0), (1, 0), (0, 2), (2, 1), (3, 2)]:
            M = graded.block_action(g, key)
            for m in graded.bidegree_monomials(*key):
                f = Polynomial.monomial(m, p)
                vec = (graded.to_vector(f, key) @ M) % p
                assert graded.to_poly(vec, key, p) == act(g, f)


def test_bigraded_and_total_degree_engines_agree():
    p = 5
    fam = set_A(p)
    sub_bi, bigraded = subalgebra_basis(fam.polys, 8)
    assert bigraded
    # mixing in a non-bihomogeneous generator forces total-degree grading
    mixed = fam.polys + [P("x1*x2 + y1*y2", p)]
    sub_tot, bigraded2 = subalgebra_basis(mixed, 8)
    assert not bigraded2
    assert sub_bi.dims(8) == sub_tot.dims(8)
    for d in range(9):
        assert np.array_equal(sub_bi.degree_rows(d), rref(sub_tot.degree_rows(d), p)[0])


def test_hilbert_dims_product_p3():
    B = ProductGroup(orthogonal_group(3, "minus"))
    dims = hilbert_dims(B, 8)
    assert dims == [1, 0, 2, 0, 5, 0, 8, 0, 14]
    assert list(series_expand([1], hsop_denominator([2, 2, 4, 4]), 8).coefficients) == dims


@pytest.mark.parametrize("p", PRIMES)
def test_product_invariants_vanish_in_odd_degree(p):
    B = ProductGroup(orthogonal_group(p, "minus"))
    dims = hilbert_dims(B, 7)
    assert all(dims[d] == 0 for d in range(1, 8, 2))


def test_invariant_basis_vs_fixed_space():
    G = orthogonal_group(7, "plus")
    basis = invariant_basis(G, 6)
    assert basis.dims(6) == [fixed_space(G, d).dim(d) for d in range(7)]


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

def test_series_examples():
    assert list(series_expand([1], [1, -1], 4).coefficients) == [1, 1, 1, 1, 1]
    assert list(series_expand([1], hsop_denominator([2, 2, 4, 4]), 4).coefficients) == [1, 0, 2, 0, 5]
    assert list(series_expand([1, 0, -1], [1, 0, -1], 3).coefficients) == [1, 0, 0, 0]
    with pytest.raises(BadDenominator):
        series_expand([1], [2, 1], 3)


def test_quotient_numerator_p3():
    G = orthogonal_group(3, "minus")
    num = trim(quotient_numerator(hilbert_dims(G, 12), [2, 4, 2, 4], 12))
    assert num == [1, 0, 1, 0, 4, 0, 1, 0, 1]
    assert s_invariant(num) == (8, 32)


def test_quotient_numerator_trivial_and_negative():
    p = 5
    G = orthogonal_group(p, "minus")
    # H = G: the invariant ring over itself is free of rank one; its series
    # is 1/((1-t^2)(1-t^6)) for the x-only forms, numerator 1
    x_dims = hilbert_dims(G, 12, x_only=True)
    assert trim(quotient_numerator(x_dims, [2, p + 1], 12)) == [1]
    assert s_invariant([1]) == (1, 0)
    with pytest.raises(NegativeCoefficient):
        quotient_numerator([1, 0, 0, 0, 0], [2, 2], 4)


@pytest.mark.parametrize("p", PRIMES)
def test_lemma31_values(p):
    G = orthogonal_group(p, "minus")
    D = 2 * (p + 1) + 4
    num = trim(quotient_numerator(hilbert_dims(G, D), [2, 2, p + 1, p + 1], D))
    assert all(c >= 0 for c in num)
    assert s_invariant(num) == (2 * (p + 1), 2 * (p + 1) ** 2)


# ---------------------------------------------------------------------------
# verification engines
# ---------------------------------------------------------------------------

def test_generating_set_examples():
    assert verify_generating_set(so_plus(5), set_A(5).polys, 10).passed
    B = set_B(5)
    assert verify_generating_set(B.group, B.polys, 10).passed


def test_dropping_a_generator_fails_at_degree_two():
    B = set_B(5)
    gens = [f for label, f in B.members if label != "B.x1x2"]
    report = verify_generating_set(B.group, gens, 10)
    assert not report.passed
    first = report.first_failure()
    assert (first.degree, first.dim_expected, first.dim_actual) == (2, 3, 2)


def test_non_invariant_generator_named():
    G = orthogonal_group(5, "plus")
    with pytest.raises(NotInvariantGenerator) as exc:
        verify_generating_set(G, [P("x1*x2", 5), P("x1*y1", 5)], 4, labels=["ok", "bad"])
    assert exc.value.label == "bad"


def test_generating_set_degree_guard():
    with pytest.raises(ValueError):
        verify_generating_set(so_plus(5), set_A(5).polys, 3)


@pytest.mark.parametrize("p,D", [(3, 12), (5, 16)])
def test_free_basis_examples(p, D):
    G = orthogonal_group(p, "minus")
    report = verify_free_basis(G, ProductGroup(G), forms(p).polys, covariant_basis(p).polys, D)
    assert report.passed
    assert report.notes[0].endswith(str(D))


def test_free_basis_p3_explicit_hsop():
    G = orthogonal_group(3, "minus")
    hsop = [P(t, 3) for t in ("x1^2 + x2^2", "x1^4 + x2^4", "y1^2 + y2^2", "y1^4 + y2^4")]
    assert verify_free_basis(G, ProductGroup(G), hsop, covariant_basis(3).polys, 12).passed


def test_free_basis_with_zero_member_fails_at_degree_two():
    G = orthogonal_group(3, "minus")
    basis = covariant_basis(3).polys
    basis[1] = Polynomial.zero(3)
    report = verify_free_basis(G, ProductGroup(G), forms(3).polys, basis, 12)
    assert not report.passed and report.first_failure().degree == 2


@pytest.mark.parametrize("p", PRIMES)
def test_relative_reynolds_surjective(p):
    G = orthogonal_group(p, "plus")
    for d, image, target in relative_reynolds_image_dims(G, special_subgroup(G), 2 * p):
        assert image == target, d


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("kind", ["so_plus", "plus", "minus"])
def test_vector_invariants_generate(p, kind):
    fam = vector_invariants(p, kind)
    G = {"so_plus": so_plus(p), "plus": orthogonal_group(p, "plus"), "minus": orthogonal_group(p, "minus")}[kind]
    assert verify_generating_set(G, fam.polys, 2 * p, x_only=True).passed


def test_vector_hypersurface_identity():
    for p in PRIMES:
        x1, x2, _, _ = Polynomial.variables(p)
        assert (x1 * x2) ** (p - 1) - x1 ** (p - 1) * x2 ** (p - 1) == Polynomial.zero(p)


def test_spans_for_trivial_group():
    # the trivial group fixes everything: dims are binomial counts
    G = closure([Mat2.identity(5)], 5)
    assert hilbert_dims(G, 3) == [1, 4, 10, 20]
