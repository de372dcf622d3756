import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from g2census import g2
from g2census.g2 import G0, KForm, dx

PHI = g2.standard_phi0()
F = Fraction


def const(form, *idx):
    return form.constant_coefficient(*idx)


def e(i):
    return g2.basis_vector(i)


# --- phi0 -------------------------------------------------------------------

def test_phi0_terms():
    assert len(PHI.terms) == 7
    assert const(PHI, 1, 2, 3) == 1
    assert const(PHI, 2, 5, 7) == -1
    assert const(PHI, 1, 2, 4) == 0
    assert set(PHI.constants().values()) == {1, -1}


# --- wedge / interior / d ---------------------------------------------------

def test_wedge_basics():
    assert dx(1) ^ dx(2) == dx(1, 2)
    assert not (dx(1) ^ dx(1))
    assert not (PHI ^ PHI)


def test_wedge_graded_commutative():
    rng = random.Random(5)
    for da, db in [(1, 2), (2, 3), (3, 3), (1, 1)]:
        a, b = g2.random_form(rng, da), g2.random_form(rng, db)
        assert a ^ b == (b ^ a) * (-1) ** (da * db)


def test_interior_examples():
    assert g2.interior(e(1), PHI) == dx(2, 3) + dx(4, 5) + dx(6, 7)
    assert not g2.interior(e(1), dx(2))
    assert g2.interior(e(1), dx(1)) == KForm.scalar(1)


def test_interior_rejects_functions():
    with pytest.raises(ValueError):
        g2.interior(e(1), KForm.scalar(1))


def test_interior_antiderivation():
    rng = random.Random(7)
    for _ in range(20):
        v = g2.random_vector(rng)
        a, b = g2.random_form(rng, 2), g2.random_form(rng, 3)
        lhs = g2.interior(v, a ^ b)
        rhs = (g2.interior(v, a) ^ b) + (a ^ g2.interior(v, b)) * (-1) ** a.degree
        assert lhs == rhs


def test_exterior_derivative_examples():
    x1dx2 = g2.KForm(1, {(1,): g2.coordinate(1)})
    assert g2.exterior_derivative(x1dx2) == dx(1, 2)
    assert g2.exterior_derivative(g2.interior_field(g2.radial_field(), PHI)) == PHI
    assert not g2.exterior_derivative(PHI)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(0, 5))
def test_dd_zero(seed, degree):
    a = g2.random_form(random.Random(seed), degree, poly_degree=2, density=0.4)
    assert not g2.exterior_derivative(g2.exterior_derivative(a))


# --- Hodge star -------------------------------------------------------------

def test_star_examples():
    assert g2.hodge_star(dx(1, 2, 3)) == dx(4, 5, 6, 7)
    assert g2.hodge_star(KForm.scalar(1)) == g2.volume_form()
    psi = g2.standard_psi0()
    assert g2.hodge_star(psi) == PHI


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(0, 7))
def test_star_involution_and_norm(seed, degree):
    a = g2.random_form(random.Random(seed), degree)
    s = g2.hodge_star(a)
    assert g2.hodge_star(s) == a
    assert (a ^ s) == g2.volume_form() * g2.norm_sq(a)


def test_star_rejects_degenerate_metric():
    zero = tuple(tuple(F(0) for _ in range(7)) for _ in range(7))
    with pytest.raises(ValueError):
        g2.hodge_star(dx(1), g2.Metric7(zero, 1))


# --- cross product ----------------------------------------------------------

def test_cross_examples():
    assert g2.cross(e(1), e(2)) == e(3)
    assert g2.cross(e(2), e(5)) == [-x for x in e(7)]
    u = [F(1, 2), 3, 0, -1, F(2, 3), 0, 1]
    assert all(x == 0 for x in g2.cross(u, u))


def test_cross_bilinear_antisymmetric():
    rng = random.Random(11)
    for _ in range(20):
        u, v, w = (g2.random_vector(rng) for _ in range(3))
        assert g2.cross(u, v) == [-x for x in g2.cross(v, u)]
        s = [a + b for a, b in zip(u, w)]
        assert g2.cross(s, v) == [a + b for a, b in zip(g2.cross(u, v), g2.cross(w, v))]


# --- metric recovery --------------------------------------------------------

def test_metric_from_phi0():
    g, vol = g2.metric_from_3form(PHI)
    assert g.matrix == G0.matrix and vol == 1 and g.orientation == 1


def test_metric_rejects_zero():
    with pytest.raises(g2.NotPositive):
        g2.metric_from_3form(KForm.zero(3))


def test_metric_rejects_degenerate_form():
    with pytest.raises(g2.NotPositive):
        g2.metric_from_3form(dx(1, 2, 3))


def test_metric_of_pullback():
    a = [[F(int(i == j)) for j in range(7)] for i in range(7)]
    a[0][0] = F(2)
    g, vol = g2.metric_from_3form(g2.pullback(PHI, a))
    # pullback metric A^T A = diag(4, 1, ...), volume factor det A = 2
    assert g.matrix[0][0] == 4 and g.matrix[1][1] == 1 and vol == 2


def test_metric_irrational_normalization_is_float():
    # B scales by c^3 under phi -> c phi, so det B = c^21 and the factor is c^(7/3)
    g, vol = g2.metric_from_3form(PHI * 2)
    assert isinstance(vol, float) and abs(vol - 2 ** (7 / 3)) < 1e-12


# --- type decomposition -----------------------------------------------------

def test_projection_examples():
    w = g2.interior(e(1), PHI)
    assert g2.project_7(w) == w and not g2.project_14(w)
    assert not g2.project_7(dx(2, 3) - dx(4, 5))
    assert not g2.project_7(KForm.zero(2))


def test_projection_rejects_degree():
    with pytest.raises(ValueError):
        g2.project_7(dx(1))


def test_eigenspaces():
    assert tuple(g2.eigenspace_dimensions()) == (7, 14)


def test_projections_complementary():
    rng = random.Random(13)
    for _ in range(20):
        w = g2.random_form(rng, 2)
        p7, p14 = g2.project_7(w), g2.project_14(w)
        assert p7 + p14 == w
        assert g2.project_7(p7) == p7 and not g2.project_7(p14)
        assert g2.inner_product(p7, p14) == 0


# --- energy / instanton identities -----------------------------------------

def test_energy_examples():
    assert g2.energy_identity_check(dx(2, 3) + dx(4, 5) + dx(6, 7)) == (6, 6)
    assert g2.energy_identity_check(KForm.zero(2)) == (0, 0)


def test_energy_random():
    rng = random.Random(17)
    for _ in range(100):
        lhs, rhs = g2.energy_identity_check(g2.random_form(rng, 2))
        assert lhs == rhs


def test_instanton_examples():
    assert g2.instanton_operator_identity(dx(1, 2))
    assert g2.instanton_operator_identity(g2.interior(e(3), PHI))
    assert g2.instanton_operator_identity(KForm.zero(2))


# --- associative planes -----------------------------------------------------

def test_associative_examples():
    assert g2.is_associative(e(1), e(2), e(3))
    assert not g2.is_associative(e(1), e(2), e(4))
    rng = random.Random(19)
    for _ in range(10):
        u, v = g2.random_vector(rng), g2.random_vector(rng)
        if g2.gram_det([u, v]) == 0:
            continue
        assert g2.is_associative(u, v, g2.cross(u, v))


def test_associative_orientation():
    assert not g2.is_associative(e(2), e(1), e(3))
    assert g2.is_associative(e(2), e(1), e(3), orientation=None)
    assert g2.is_associative(e(2), e(1), e(3), orientation=-1)


def test_associative_rejects_dependent():
    with pytest.raises(ValueError):
        g2.is_associative(e(1), e(2), e(1))


def _diag(*d):
    return [[F(d[i]) if i == j else F(0) for j in range(7)] for i in range(7)]


def test_fixed_subspace_examples():
    dim, basis = g2.fixed_subspace([_diag(1, 1, 1, -1, -1, -1, -1)])
    assert dim == 3
    assert g2.is_associative(*basis, orientation=None)
    dim, _ = g2.fixed_subspace([_diag(1, 1, 1, -1, -1, -1, -1), _diag(1, -1, -1, 1, 1, -1, -1)])
    assert dim == 1
    assert g2.fixed_subspace([_diag(*[1] * 7)])[0] == 7


# --- sphere inequality ------------------------------------------------------

def test_sphere_examples():
    assert g2.sphere_inequality_sample(dx(2, 3), 1)
    lhs, rhs = g2.sphere_sides(KForm.zero(2), 1)
    assert lhs == rhs == 0


def test_sphere_equality_case():
    # alpha = i_{e1} phi0: alpha^alpha^omega0 = 2r dx234567 and |alpha|^2 = 6
    lhs, rhs = g2.sphere_sides(dx(2, 3) + dx(4, 5) + dx(6, 7), 1)
    assert lhs == rhs == 6


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(1, 80))
def test_sphere_random(seed, r8):
    assert g2.sphere_inequality_sample(g2.random_form(random.Random(seed), 2), F(r8, 8))
