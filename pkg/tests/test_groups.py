from fractions import Fraction

import pytest

from g2census import groups
from g2census.groups import SPIN, BoundExceeded, close_group, quat, target


@pytest.mark.parametrize("name,order", [("1", 1), ("Z2", 2), ("V4", 4), ("Z4", 4), ("D4", 8),
                                        ("A4", 12), ("S4", 24), ("Q8", 8), ("2T", 24)])
def test_catalog_orders(name, order):
    assert target(name).order == order


def test_v4_elements():
    g = target("V4")
    diag = lambda *d: groups.mat3([[d[i] if i == j else 0 for j in range(3)] for i in range(3)])
    assert set(g.elements) == {groups.I3, diag(1, -1, -1), diag(-1, 1, -1), diag(-1, -1, 1)}
    assert g.names == ["1", "a", "b", "c"]
    assert g.elements[g.identity] == groups.I3


def test_q8_elements():
    g = target("Q8")
    units = {quat(*(s if i == k else 0 for i in range(4))) for k in range(4) for s in (1, -1)}
    assert set(g.elements) == units
    assert g.elements[g.minus_one] == quat(-1, 0, 0, 0)
    assert sorted(g.names) == sorted(["1", "-1", "i", "-i", "j", "-j", "k", "-k"])


def test_s4_is_signed_permutations():
    for m in groups.octahedral_rotations():
        assert groups.mat_det(m) == 1
        assert all(sum(1 for x in row if x != 0) == 1 for row in m)


def test_z4_from_quarter_turn():
    assert close_group([groups.ROT_X]).order == 4


def test_infinite_order_rotation():
    f = Fraction
    rot = [[1, 0, 0], [0, f(3, 5), f(-4, 5)], [0, f(4, 5), f(3, 5)]]
    with pytest.raises(BoundExceeded):
        close_group([rot])


def test_rejects_non_orthogonal():
    with pytest.raises(ValueError):
        close_group([[[2, 0, 0], [0, 1, 0], [0, 0, 1]]])
    with pytest.raises(ValueError):
        close_group([(1, 1, 0, 0)], kind=SPIN)


@pytest.mark.parametrize("name", groups.catalog_names())
def test_group_axioms(name):
    g = target(name)
    n = g.order
    e = g.identity
    for x in range(n):
        assert g.mult[x, e] == x == g.mult[e, x]
        assert g.mult[x, g.inverse[x]] == e
    for x in range(0, n, 3):
        for y in range(n):
            for z in range(0, n, 5):
                assert g.mult[g.mult[x, y], z] == g.mult[x, g.mult[y, z]]


@pytest.mark.parametrize("name", ["Q8", "2T"])
def test_spin_adjoint_is_homomorphism(name):
    g = target(name)
    for x in range(g.order):
        for y in range(g.order):
            assert groups.mat_mul(g.adjoint(x), g.adjoint(y)) == g.adjoint(int(g.mult[x, y]))


def test_adjoint_of_i():
    g = target("Q8")
    assert g.adjoint(g.names.index("i")) == groups.mat3([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    assert g.trace(g.names.index("i")) == 0 and g.trace(g.minus_one) == -2


@pytest.mark.parametrize("name", ["V4", "D4", "S4"])
def test_rotation_lift_covers(name):
    g = target(name)
    for i in range(g.order):
        q = g.lift(i)  # defined up to positive scale
        assert groups.qnorm(q) > 0
        assert groups.quat_adjoint(q) == g.elements[i]


def test_conjugacy_reps_and_center():
    assert len(target("S4").conjugacy_class_reps()) == 5
    assert len(target("Q8").conjugacy_class_reps()) == 5
    q8 = target("Q8")
    assert {i for i in range(8) if q8.is_central(i)} == {q8.identity, q8.minus_one}


def test_subgroup_closure():
    g = target("S4")
    a = g.index_of(groups.mat3(groups.A))
    b = g.index_of(groups.mat3(groups.B))
    assert len(g.subgroup_closure([a, b])) == 4
    assert len(g.subgroup_closure([])) == 1


def test_unknown_target():
    with pytest.raises(KeyError):
        target("SO3")
