import random
from fractions import Fraction

import pytest

from conftest import get_field
from ramjumps.errors import DegenerateGroup, InvalidIndex, MonotonicityViolation, NotTotallyRamified
from ramjumps.families import polar_family_bottom, polar_family_expected, polar_family_pair, random_pair
from ramjumps.gfq import FqField
from ramjumps.jumps import NEG_INF, jump_set, omega, omega_orders, r2_special, r_top, s_diag
from ramjumps.laurent import LaurentSeries
from ramjumps.normalize import DefiningPair, normalize
from ramjumps.unipotent import UnipotentGroup

F3 = get_field(3)


def S(field, *pairs):
    return LaurentSeries.from_pairs(field, pairs)


@pytest.fixture
def small():
    return DefiningPair(S(F3, (-1, 1)), (S(F3, (-2, 1)), LaurentSeries(F3)))


@pytest.fixture
def polar(F9):
    return polar_family_pair(F9, F9.gen(), 2, 1, 0)


def test_polar_family_input(F9, polar):
    g = F9.gen()
    assert polar.a == S(F9, (-4, 1))
    assert polar.b == (S(F9, (-1, g)), S(F9, (-5, g * 2)))


def test_omega_examples(small, F9, polar):
    w = omega(small)
    assert w[0].g == S(F3, (-2, 1))
    assert w[1].g == S(F3, (-3, 2))
    assert omega_orders(small) == [2, 3]
    consts = DefiningPair(S(F3, (-1, 1)), (LaurentSeries.constant(F3, 2), S(F3, (-3, 1))))
    assert all(x.g.is_zero() for x in omega(consts))
    # omega = -eps v(1) t^-1 in the dlog representation: v(1) = (1, 0)
    v1 = UnipotentGroup(2, 3).v_map(F9.one)
    assert [x.g for x in omega(polar)] == [S(F9, (-1, -F9.gen() * c)) if c else LaurentSeries(F9)
                                           for c in v1]
    assert omega_orders(polar) == [1, NEG_INF]


def test_r_top_examples(small, polar):
    assert r_top(polar, 2) == Fraction(13, 3)
    assert r_top(small, 2) == 3
    with pytest.raises(InvalidIndex):
        r_top(small, 3)
    with pytest.raises(InvalidIndex):
        r_top(small, 1)


def test_top_component_zero_gives_a_larger_jump(F9):
    # with b_2 = 0 the differential omega_2 = -a db_1 dominates
    g = F9.gen()
    pair = DefiningPair(S(F9, (-4, 1)), (S(F9, (-1, g)), LaurentSeries(F9)))
    assert r_top(pair, 2) == 5


def test_polar_family_with_five_and_four_layers():
    F = FqField(5, 2)
    pair = polar_family_pair(F, F.gen(), 4, 0, 0)
    assert [r_top(pair, j) for j in (2, 3, 4)] == [Fraction(j - 1, 5) + 1 for j in (2, 3, 4)]


def test_r2_special_examples(small, polar, F9):
    assert r2_special(small) == 3
    assert r2_special(polar) == Fraction(13, 3)
    g = F9.gen()
    flat = DefiningPair(S(F9, (-1, 1)), (S(F9, (-1, g)), S(F9, (-2, g * 2))))
    assert omega_orders(flat)[1] == NEG_INF
    assert r2_special(flat) == Fraction(4, 3) == r_top(flat, 2)
    three = DefiningPair(S(F3, (-1, 1)), (S(F3, (-2, 1)),) * 3)
    with pytest.raises(InvalidIndex):
        r2_special(three)


def test_s_diag_examples(small, polar, F9):
    assert s_diag(polar, 2) == Fraction(13, 3)
    assert s_diag(small, 2) == 3
    g = F9.gen()
    flat = DefiningPair(S(F9, (-1, 1)), (S(F9, (-1, g)), S(F9, (-2, g * 2))))
    # only the (j - 1) m_a + m_1 term survives: psi^{-1}(2) at m_a = 1
    assert s_diag(flat, 2) == Fraction(4, 3)


def test_jump_set_examples(small, polar):
    prof = jump_set(polar)
    assert prof.U == (1, 4, Fraction(13, 3))
    assert prof.r == (4, Fraction(13, 3))
    prof = jump_set(small)
    assert prof.U == (1, 2, 3) and prof.r == (2, 3)
    with pytest.raises(DegenerateGroup):
        jump_set(DefiningPair(S(F3, (-1, 1)), (S(F3, (-1, 1)), LaurentSeries(F3))))


def test_jump_set_guards_monotonicity(small, monkeypatch):
    # genuine pairs never trip the guard, so force a collapsed upper jump
    import ramjumps.jumps as jumps_mod
    monkeypatch.setattr(jumps_mod, "r_top", lambda pair, j, orders=None: Fraction(1))
    with pytest.raises(MonotonicityViolation):
        jump_set(small)


def test_profile_json(polar):
    out = jump_set(polar).to_json()
    assert out == {
        "n": 2, "m_a": 4, "m": [1, 5], "omega_val": [1, None],
        "r": [{"num": 4, "den": 1}, {"num": 13, "den": 3}],
        "U": [{"num": 1, "den": 1}, {"num": 4, "den": 1}, {"num": 13, "den": 3}],
    }


CASES = [(3, 2)] + [(5, n) for n in (2, 3, 4)]


@pytest.mark.parametrize("p,n", CASES)
def test_polar_family_closed_form(p, n):
    F = FqField(p, 2)
    for eta in range(3):
        for eta2 in range(3):
            pair = polar_family_pair(F, F.gen(), n, eta, eta2)
            prof = jump_set(normalize(pair))
            assert set(prof.U[:len(prof.U) - (n - 1)]) | set(prof.r[1:]) == set(prof.U)
            assert set(prof.r[1:]) | polar_family_bottom(p, eta, eta2) == set(prof.U)
            assert list(prof.r[1:]) == [polar_family_expected(p, j, eta, eta2)
                                        for j in range(2, n + 1)]


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (3, 3), (5, 2), (5, 3)])
def test_formula_properties_on_random_pairs(p, n):
    F = FqField(p, 2)
    rng = random.Random(p * 1000 + n)
    seen = 0
    for _ in range(80):
        try:
            pair = normalize(random_pair(F, n, rng))
            prof = jump_set(pair)
        except (DegenerateGroup, NotTotallyRamified):
            continue
        seen += 1
        for j in range(2, n + 1):
            r = prof.r[j - 1]
            assert p % r.denominator == 0
            lifted = p * r - (p - 1) * prof.m_a
            assert lifted.denominator == 1 and lifted > 0 and lifted % p
            assert s_diag(pair, j) == r
        if n == 2:
            assert r2_special(pair) == prof.r[1]
        assert list(prof.r) == sorted(set(prof.r))
    assert seen > 20
