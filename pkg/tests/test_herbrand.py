import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import psi_direct
from ramjumps.errors import InvalidConductor
from ramjumps.herbrand import (PLFunction, as_psi, herbrand_phi, pl_compose, pl_eval, pl_invert,
                               rational_from_json, rational_to_json, upper_jumps_from_lower)

PSI_GRID = [(p, m) for p in (2, 3, 5, 7) for m in range(1, 12) if m % p]


def test_as_psi_examples():
    psi = as_psi(3, 4)
    assert psi(Fraction(13, 3)) == 5
    assert psi(2) == 2
    assert as_psi(2, 1)(3) == 5
    assert psi.breakpoints == ((4, 4),)
    assert psi.slopes == (1, 3)


def test_as_psi_rejects_bad_conductor():
    for p, m in [(3, 0), (3, -2), (3, 6), (2, 4)]:
        with pytest.raises(InvalidConductor):
            as_psi(p, m)


def test_inverse_and_compositions():
    assert pl_eval(pl_invert(as_psi(3, 4)), 5) == Fraction(13, 3)
    comp = pl_compose(as_psi(3, 5), as_psi(3, 4))
    assert comp(6) == 20
    assert as_psi(3, 4)(6) == 10 and as_psi(3, 5)(10) == 20


@pytest.mark.parametrize("p,m", PSI_GRID)
def test_psi_matches_direct_formula(p, m):
    psi = as_psi(p, m)
    rng = random.Random(p * 100 + m)
    for _ in range(30):
        x = Fraction(rng.randint(-3, 60), rng.randint(1, 6))
        if x >= -1:
            assert psi(x) == psi_direct(p, m, x)


@pytest.mark.parametrize("p,m", PSI_GRID)
def test_invert_round_trip(p, m):
    psi = as_psi(p, m)
    inv = psi.invert()
    rng = random.Random(m)
    for _ in range(100):
        x = Fraction(rng.randint(-10, 400), rng.randint(1, 10))
        if x < -1:
            continue
        assert inv(psi(x)) == x
        assert psi(inv(x)) == x


def test_compose_with_identity():
    for p, m in PSI_GRID[:10]:
        f = as_psi(p, m)
        assert f.compose(PLFunction.identity()) == f
        assert PLFunction.identity().compose(f) == f


@given(st.sampled_from((2, 3, 5)), st.integers(1, 30), st.integers(1, 30))
def test_composites_of_psi_functions(p, m1, m2):
    if m1 % p == 0 or m2 % p == 0:
        return
    inner, outer = as_psi(p, m1), as_psi(p, m2)
    comp = outer.compose(inner)
    assert comp.is_convex()
    assert comp(0) == 0 and comp(-1) == -1
    assert all(s > 0 for s in comp.slopes)
    # breakpoints sit over m1 and over inner^{-1}(m2)
    xs = {x for x, _ in comp.breakpoints}
    expected = {Fraction(m1)} | {inner.invert()(m2)}
    assert xs <= expected
    for x in expected:
        left = comp.slope_right_of(x - Fraction(1, 1000))
        right = comp.slope_right_of(x)
        assert (x in xs) == (left != right)
    for k in range(-2, 80):
        x = Fraction(k, 2)
        assert comp(x) == outer(inner(x))


def test_domain_is_bounded_below():
    with pytest.raises(ValueError):
        as_psi(3, 1)(Fraction(-3, 2))


def test_rational_json_round_trip():
    for x in [Fraction(13, 3), Fraction(-2, 4), Fraction(0)]:
        obj = rational_to_json(x)
        assert obj["den"] > 0
        assert rational_from_json(obj) == x
    assert rational_to_json(Fraction(6, 4)) == {"num": 3, "den": 2}


def test_phi_of_a_single_layer_has_the_conductor_as_jump():
    # a degree-p extension with lower jump m: every sigma has i(sigma) = m + 1
    for p, m in PSI_GRID:
        phi = herbrand_phi([m + 1] * (p - 1))
        assert phi.invert() == as_psi(p, m)
        assert upper_jumps_from_lower([m + 1] * (p - 1)) == [m]


def test_phi_of_two_jumps():
    # (Z/2)^2 with lower jumps 1 and 3: upper jumps 1 and 2
    assert upper_jumps_from_lower([2, 2, 4]) == [1, 2]
