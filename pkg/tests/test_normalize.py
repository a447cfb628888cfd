import random

import pytest

from conftest import get_field
from ramjumps.errors import DegenerateGroup, InvalidOrder, NotApplicable, NotTotallyRamified
from ramjumps.families import random_pair, random_series
from ramjumps.gfq import FqField
from ramjumps.jumps import jump_set
from ramjumps.laurent import LaurentSeries
from ramjumps.normalize import (DefiningPair, check_conditions, normalize, op1_fix_a, op2_fix_b,
                                op3_applies, op3_untangle, twist)
from ramjumps.verify import check_pair


def S(field, *pairs):
    return LaurentSeries.from_pairs(field, pairs)


F2, F3 = get_field(2), get_field(3)


def test_defining_pair_validates_order():
    with pytest.raises(InvalidOrder):
        DefiningPair(S(F3, (-1, 1)), (S(F3, (-1, 1)),))
    with pytest.raises(InvalidOrder):
        DefiningPair(S(F2, (-1, 1)), (S(F2, (-1, 1)),) * 3)


def test_op1_example():
    b1, b2 = S(F3, (-2, 1), (-1, 2)), S(F3, (-5, 1))
    out = op1_fix_a(DefiningPair(S(F3, (-3, 1), (-1, 1)), (b1, b2)))
    assert out.a == S(F3, (-1, 2))
    # s = -t^-1, so A(s^3) = 1 - t^-3 A: the bottom entry is untouched
    assert out.b == (b1, b2 - S(F3, (-3, 1)) * b1)


def test_op1_fixed_point_and_char_two():
    pair = DefiningPair(S(F3, (-4, 1)), (S(F3, (-1, 1)), S(F3, (-2, 1))))
    assert op1_fix_a(pair) == pair
    out = op1_fix_a(DefiningPair(S(F2, (-4, 1)), (S(F2, (-1, 1)), S(F2, (-3, 1)))))
    assert out.a == S(F2, (-1, 1))
    s = S(F2, (-2, 1), (-1, 1))
    assert out.b == (S(F2, (-1, 1)), S(F2, (-3, 1)) + s.pth_power() * S(F2, (-1, 1)))


def test_op2_examples():
    a = S(F3, (-1, 1))
    out = op2_fix_b(DefiningPair(a, (S(F3, (-3, 1), (-1, 1)), LaurentSeries(F3))))
    assert out.b == (S(F3, (-1, 2)), S(F3, (-2, 1)))
    reduced = DefiningPair(a, (S(F3, (-2, 1)), S(F3, (-4, 1))))
    assert op2_fix_b(reduced) == reduced
    zero_top = DefiningPair(a, (S(F3, (-2, 1)), LaurentSeries(F3)))
    assert op2_fix_b(zero_top).b[1].is_zero()


def test_op3_examples(F9):
    a = S(F3, (-2, 1), (-1, 1))
    pair = DefiningPair(a, (S(F3, (-2, 2), (-1, 1)), LaurentSeries(F3)))
    assert op3_applies(pair)
    out = op3_untangle(pair)
    assert out.b == (S(F3, (-1, 2)), S(F3, (-4, 2), (-3, 1), (-1, 1)))
    with pytest.raises(NotApplicable):
        op3_untangle(DefiningPair(S(F9, (-1, 1)), (S(F9, (-1, F9.gen())), LaurentSeries(F9))))
    killed = op3_untangle(DefiningPair(S(F3, (-1, 1)), (S(F3, (-1, 2)), LaurentSeries(F3))))
    assert killed.b[0].is_zero()


def test_untangling_feeds_a_consistent_pair(rng):
    # b_1 = i a + lower terms forces the untangling step; the result must pass the oracle
    F = FqField(5, 2)
    triggered = 0
    for _ in range(40):
        a = random_series(F, rng, -9, -1)
        if a.valuation() % 5 == 0 or not a.terms:
            continue
        i = rng.randint(1, 4)
        b1 = a * i + random_series(F, rng, a.valuation() + 1, -1)
        pair = DefiningPair(a, (b1, random_series(F, rng)))
        if not op3_applies(op2_fix_b(op1_fix_a(pair))):
            continue
        try:
            out = normalize(pair)
        except (DegenerateGroup, NotTotallyRamified):
            continue
        triggered += 1
        assert check_conditions(out).ok
        assert check_pair(out).ok
    assert triggered >= 5


def test_normalize_examples():
    with pytest.raises(DegenerateGroup):
        normalize(DefiningPair(S(F3, (-1, 1)), (S(F3, (-1, 2)), LaurentSeries(F3))))
    # a and b_1 lie in the same class, so untangling kills b_1
    with pytest.raises(DegenerateGroup):
        normalize(DefiningPair(S(F3, (-3, 1), (-1, 1)), (S(F3, (-3, 1), (-1, 1)), LaurentSeries(F3))))
    out = normalize(DefiningPair(S(F3, (-3, 1), (-1, 1)), (S(F3, (-3, 1), (-2, 1)), LaurentSeries(F3))))
    assert out.m_a == 1 and out.m[0] == 2
    assert check_conditions(out).ok


def test_normalize_rejects_unramified_and_trivial(F9):
    r = next(x for x in F9.elements() if x.trace() != 0)
    with pytest.raises(NotTotallyRamified):
        normalize(DefiningPair(S(F9, (0, r)), (S(F9, (-1, 1)), LaurentSeries(F9))))
    with pytest.raises(DegenerateGroup):
        normalize(DefiningPair(S(F9, (-1, 1)), (S(F9, (1, 1)), LaurentSeries(F9))))


def test_check_conditions_examples(F9):
    rep = check_conditions(DefiningPair(S(F3, (-3, 1)), (S(F3, (-1, 1)), LaurentSeries(F3))))
    assert not rep.cond_i
    assert rep.m == (1, float("-inf"))
    # n = p: the independence condition is not imposed
    same = DefiningPair(S(F3, (-1, 1)), (S(F3, (-1, 1)), S(F3, (-1, 1)), S(F3, (-2, 1))))
    assert check_conditions(same).cond_iii
    rep = check_conditions(DefiningPair(S(F9, (-1, 1)), (S(F9, (-1, F9.gen())), S(F9, (-3, 1)))))
    assert rep.cond_i and not rep.cond_ii and rep.cond_iii


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (3, 3), (5, 2), (5, 4)])
def test_normalize_postconditions_and_idempotence(p, n):
    F = FqField(p, 2)
    rng = random.Random(100 + p * 10 + n)
    accepted = 0
    for _ in range(60):
        raw = random_pair(F, n, rng)
        try:
            out = normalize(raw)
        except (DegenerateGroup, NotTotallyRamified):
            continue
        accepted += 1
        assert check_conditions(out).ok
        assert normalize(out) == out
    assert accepted > 10


def _twist_instance(F, n, rng):
    s = random_series(F, rng, -6, 3)
    tau = tuple(random_series(F, rng, -6, 3) for _ in range(n))
    return s, tau


def _invariants(profile):
    return profile.U, profile.r, profile.m_a, profile.m[0]


@pytest.mark.parametrize("p,n", [(3, 2), (3, 3), (5, 3)])
def test_twisting_preserves_the_jumps(p, n):
    F = FqField(p, 2)
    rng = random.Random(7 * p + n)
    done = 0
    while done < 15:
        try:
            pair = normalize(random_pair(F, n, rng))
            base = jump_set(pair)
        except (DegenerateGroup, NotTotallyRamified):
            continue
        s, tau = _twist_instance(F, n, rng)
        moved = jump_set(normalize(twist(pair, s, tau)))
        assert _invariants(moved) == _invariants(base)
        done += 1
