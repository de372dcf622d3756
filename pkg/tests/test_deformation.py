import random

import numpy as np
import pytest

from conftest import REFERENCE_V4, reference_values
from g2census import census, deformation as dfm
from g2census.census import Rep
from g2census.deformation import GroupRingElement, fox_derivative
from g2census.groups import target
from g2census.presentation import PresentationError, builtin, parse_presentation, t3_projective

V4, S4, Q8 = target("V4"), target("S4"), target("Q8")
JOYCE = builtin("joyce-ex3")
X, XI, Y, YI = (0, 1), (0, -1), (1, 1), (1, -1)


def test_fox_examples():
    assert fox_derivative([X, Y, XI, YI], 0) == GroupRingElement({(): 1, (X, Y, XI): -1})
    assert fox_derivative([X, X], 0) == GroupRingElement({(): 1, (X,): 1})
    assert fox_derivative([Y], 0) == GroupRingElement()


def test_fox_product_rule():
    rng = random.Random(3)
    for _ in range(50):
        u = [rng.choice([X, XI, Y, YI]) for _ in range(rng.randint(0, 6))]
        v = [rng.choice([X, XI, Y, YI]) for _ in range(rng.randint(0, 6))]
        for g in (0, 1):
            lhs = fox_derivative(u + v, g)
            rhs = fox_derivative(u, g) + GroupRingElement.word(u) * fox_derivative(v, g)
            assert lhs == rhs


def test_ad_matrix_examples():
    i = Q8.names.index("i")
    rep = Rep(Q8, (i, 0, 0))
    assert dfm.ad_matrix(rep, i) == [[1, 0, 0], [0, -1, 0], [0, 0, -1]]
    assert dfm.ad_matrix(rep, Q8.identity) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    a = V4.names.index("a")
    assert dfm.ad_matrix(Rep(V4, (a,)), a) == [list(r) for r in V4.elements[a]]


def test_h0_examples():
    rho1 = Rep(V4, reference_values(V4, REFERENCE_V4["rho1"]))
    assert dfm.h0_dimension(rho1) == 0
    assert dfm.h0_dimension(Rep(V4, (0,) * 10)) == 3
    a = V4.names.index("a")
    assert dfm.h0_dimension(Rep(V4, (a, 0))) == 1


def test_h1_trivial_examples():
    free1 = parse_presentation("generators: x\n")
    assert dfm.h1_dimension(free1, Rep(V4, (0,))) == 3
    z2 = parse_presentation("generators: x y\nrelator: x y X Y\n")
    assert dfm.h1_dimension(z2, Rep(V4, (0, 0))) == 6


@pytest.mark.parametrize("row", sorted(REFERENCE_V4))
def test_reference_nondegenerate(row):
    rep = Rep(V4, reference_values(V4, REFERENCE_V4[row]))
    assert dfm.h1_dimension(JOYCE, rep) == 0
    assert dfm.walpuski_fixed_dim(JOYCE, rep) == 0
    assert dfm.nondegenerate(JOYCE, rep)


def test_trivial_rep_on_joyce():
    triv = Rep(V4, (0,) * 10)
    assert dfm.walpuski_fixed_dim(JOYCE, triv) == 0
    # finite abelianization: no invariant cocycles
    assert dfm.h1_dimension(JOYCE, triv) == 0
    assert dfm.nondegenerate(JOYCE, triv)


def test_walpuski_identity_action():
    p = parse_presentation("generators: x\naffine x: linear=I translation=(1,0,0,0,0,0,0)\n")
    assert dfm.walpuski_fixed_dim(p, Rep(V4, (0,))) == 21
    with pytest.raises(PresentationError):
        dfm.walpuski_fixed_dim(t3_projective(), Rep(Q8, (0, 0, 0)))


def test_t3_classes_h1_zero():
    i, j = Q8.names.index("i"), Q8.names.index("j")
    p = t3_projective()
    for c in (Q8.identity, Q8.minus_one):
        rep = Rep(Q8, (i, j, c))
        assert dfm.h1_dimension(p, rep) == 0
        assert dfm.nondegenerate(p, rep)


def test_consistency_failure_raised(monkeypatch):
    rho1 = Rep(V4, reference_values(V4, REFERENCE_V4["rho1"]))
    monkeypatch.setattr(dfm, "walpuski_fixed_dim", lambda p, r: 1)
    with pytest.raises(dfm.ConsistencyFailure):
        dfm.nondegenerate(JOYCE, rho1)


@pytest.mark.parametrize("name,group", [("joyce-ex3", "V4"), ("t3-k3", "Q8"), ("joyce-ex3-affine", "D4")])
def test_structural_identities(name, group):
    p, g = builtin(name), target(group)
    reps = census.enumerate_homs(p, g)
    rng = random.Random(0)
    for rep in rng.sample(reps, min(30, len(reps))):
        assert dfm.fox_identity_holds(p, rep)
        assert dfm.coboundaries_are_cocycles(p, rep)


def test_fox_identity_is_free():
    # the identity lives in the free group ring, so any assignment satisfies it
    arbitrary = Rep(S4, tuple(range(1, 11)))
    assert not all(arbitrary.evaluate(r) == S4.identity for r in JOYCE.relators)
    assert dfm.fox_identity_holds(JOYCE, arbitrary)


def test_batch_matches_single():
    reps = census.enumerate_array(JOYCE, V4)
    rng = np.random.default_rng(1)
    sample = reps[rng.choice(len(reps), 200, replace=False)].astype(np.int64)
    h0 = dfm.batch_h0(V4, sample)
    h1 = dfm.batch_h1(JOYCE, V4, sample, h0)
    w = dfm.batch_walpuski(JOYCE, V4, sample)
    for k, row in enumerate(sample):
        rep = Rep(V4, tuple(int(x) for x in row))
        assert h0[k] == dfm.h0_dimension(rep)
        assert h1[k] == dfm.h1_dimension(JOYCE, rep)
        assert w[k] == dfm.walpuski_fixed_dim(JOYCE, rep)
    assert dfm.batch_fox_identity(JOYCE, V4, sample).all()
    assert dfm.batch_coboundary_check(JOYCE, V4, sample).all()


def test_gauge_invariance():
    p = builtin("joyce-ex3-affine")
    reps = census.enumerate_homs(p, S4, prune=True)
    rng = random.Random(5)
    for rep in rng.sample(reps, 10):
        base = dfm.h1_dimension(p, rep)
        for h in rng.sample(range(S4.order), 3):
            assert dfm.h1_dimension(p, rep.conjugate(h)) == base
