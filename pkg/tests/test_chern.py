from fractions import Fraction

import pytest

from g2census import chern
from g2census.chern import FORMAL, GradedPoly

c1, c2, c3, c4, p1 = (GradedPoly.gen(n) for n in ("c1", "c2", "c3", "c4", "p1"))
R = GradedPoly.rank(FORMAL)


def test_power_sums():
    s1, s2, s3, s4 = chern.power_sums()
    assert s1 == c1
    assert s2 == c1 ** 2 - 2 * c2
    assert s3 == c1 ** 3 - 3 * c2 * c1 + 3 * c3
    assert s4 == c1 ** 4 - 4 * c2 * c1 ** 2 + 4 * c3 * c1 + 2 * c2 ** 2 - 4 * c4


def test_power_sums_rank_one():
    for k, s in enumerate(chern.power_sums(1), start=1):
        assert s.kill_chern_above(1) == c1 ** k


def test_truncation():
    assert not (c4 * c1)
    assert not (p1 ** 3)
    assert (c2 * p1).weight_part(4) == c2 * p1


def test_chern_character_parts():
    ch = chern.chern_character()
    assert ch.weight_part(0) == R
    assert ch.weight_part(2) == (c1 ** 2 - 2 * c2) / 2
    assert chern.chern_character(3).kill_chern_above(0) == GradedPoly.const(3)


def test_ch_adjoint_closed_form():
    ch = chern.ch_adjoint()
    assert ch == chern.ch_adjoint_closed_form()
    assert ch.weight_part(0) == R * R - 1
    assert chern.ch_adjoint(2).weight_part(2) == c1 ** 2 - 4 * c2
    assert chern.ch_adjoint(2).coefficient_at("c4") == Fraction(-2, 3)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_splitting_oracle(r):
    assert chern.splitting_oracle(r) == chern.ch_adjoint(r).kill_chern_above(r)


def test_splitting_oracle_rank_one_vanishes():
    assert not chern.splitting_oracle(1)


def test_splitting_oracle_range():
    with pytest.raises(ValueError):
        chern.splitting_oracle(5)


def test_newton_against_roots():
    for k, s in enumerate(chern.power_sums(4), start=1):
        assert chern.root_power_sum(4, k) == s


def test_p1_adjoint():
    assert chern.p1_adjoint(2) == c1 ** 2 - 4 * c2
    assert not chern.p1_adjoint(1).kill_chern_above(1)
    for r in (2, 3):
        assert chern.p1_adjoint(r) == chern.splitting_oracle(r).weight_part(2)


def test_index_integrand_examples():
    got = chern.index_integrand(chern.ch_adjoint())
    want = R * c2 * p1 / 12 + (-2 * R * c2 * c1 ** 2 + (2 * R - 6) * c3 * c1 + (R + 6) * c2 ** 2 - 2 * R * c4) / 6
    assert got == want
    got = chern.index_integrand(chern.chern_character())
    assert got == c2 * p1 / 24 + (-2 * c2 * c1 ** 2 + 2 * c3 * c1 + c2 ** 2 - 2 * c4) / 12
    assert not chern.index_integrand(R)


def test_parity_coefficients():
    par = chern.parity_combination()
    assert par.coefficient_at("c2", "p1") == Fraction(-1, 2)
    assert par.coefficient_at("c3", "c1") == -3
    assert chern.all_even_integers(chern.parity_remainder())
    # recomputed by hand: c2^2 cancels, c4 and c1^2 c2 keep coefficient 2
    assert par.coefficient_at("c2", "c2") == 0


@pytest.mark.parametrize("r", [1, 2, 3, 4, 7])
def test_parity_concrete_ranks(r):
    assert chern.all_even_integers(chern.parity_remainder(r))


def test_line_bundle_square():
    l1 = chern.chern_character(1).kill_chern_above(1)
    # ch(L)ch(L) = ch(L^2): substitute c1 -> 2 c1 in the rank-one character
    sq = l1 * l1
    assert sq.weight_part(1) == 2 * c1 and sq.weight_part(4) == (2 * c1) ** 4 / 24


def test_verify_all():
    for r in (FORMAL, 2, 3, 4):
        assert all(chern.verify(r).values())
