import itertools
import random

import pytest
from hypothesis import given

from conftest import elements, fields
from oracles import poly_inverse_euclid, poly_mulmod
from ramjumps.errors import DivisionByZero, FieldMismatch
from ramjumps.gfq import FqField, first_irreducible, is_irreducible

SMALL = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2), (3, 4)]


def test_generator_square_in_f9(F9):
    g = F9.gen()
    assert g * g == F9([1, 1])


def test_multiplicative_identity(rng):
    F = FqField(5, 3)
    for _ in range(50):
        x = F.random(rng)
        assert x * 1 == x
        assert x * F.one == x


def test_inverse_matches_extended_euclid(rng):
    for p, d in SMALL:
        F = FqField(p, d)
        for _ in range(20):
            x = F.random(rng, nonzero=True)
            assert x * x.inverse() == F.one
            assert list(x.inverse().coords) == poly_inverse_euclid(list(x.coords), F.modulus, p)


def test_product_matches_schoolbook(rng):
    for p, d in SMALL:
        F = FqField(p, d)
        for _ in range(20):
            x, y = F.random(rng), F.random(rng)
            assert list((x * y).coords) == poly_mulmod(list(x.coords), list(y.coords), F.modulus, p)


def test_division_errors(F9):
    with pytest.raises(DivisionByZero):
        F9.one / F9.zero
    with pytest.raises(ZeroDivisionError):
        F9.zero.inverse()
    with pytest.raises(FieldMismatch):
        F9.one + FqField(3, 1).one


def test_frobenius_fixes_prime_field():
    F = FqField(5, 2)
    for k in range(5):
        assert F(k).frobenius() == F(k)


def test_frobenius_of_generator_in_f9(F9):
    g = F9.gen()
    cube = g * g * g
    assert g.frobenius() == cube
    # g^3 = g (g + 1) = g^2 + g = 2g + 1
    assert cube == F9([1, 2])


def test_pth_root_round_trip(rng):
    F = FqField(3, 4)
    for _ in range(100):
        x = F.random(rng)
        assert x.frobenius().pth_root() == x
        assert x.pth_root().frobenius() == x


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (3, 4)])
def test_frobenius_is_a_ring_automorphism_exhaustively(p, d):
    F = FqField(p, d)
    elems = list(F.elements())
    assert len(set(x.frobenius() for x in elems)) == len(elems)
    for x, y in itertools.product(elems, repeat=2):
        assert (x + y).frobenius() == x.frobenius() + y.frobenius()
        assert (x * y).frobenius() == x.frobenius() * y.frobenius()
    for x in elems:
        assert x.pth_root().frobenius() == x == x.frobenius().pth_root()


def test_trace_small_cases():
    assert FqField(3, 2).zero.trace() == 0
    assert FqField(3, 1)(1).trace() == 1


def test_trace_kernel_in_f9(F9):
    kernel = {x for x in F9.elements() if x.trace() == 0}
    image = {y ** 3 - y for y in F9.elements()}
    assert kernel == image
    assert sorted(map(repr, kernel)) == ["0", "1 + g", "2 + 2*g"]


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (2, 4)])
def test_trace_kernel_is_artin_schreier_image(p, d):
    F = FqField(p, d)
    kernel = {x for x in F.elements() if x.trace() == 0}
    image = {y.frobenius() - y for y in F.elements()}
    assert kernel == image
    assert len(kernel) == p ** (d - 1)
    for r in F.elements():
        y = F.solve_artin_schreier(r)
        if r.trace() == 0:
            assert y.frobenius() - y == r
        else:
            assert y is None


def test_irreducibility_check_against_root_search():
    # degree 2 and 3 polynomials are irreducible exactly when they have no root
    for p in (2, 3, 5):
        for d in (2, 3):
            for low in itertools.product(range(p), repeat=d):
                f = list(low) + [1]
                has_root = any(sum(c * x ** i for i, c in enumerate(f)) % p == 0 for x in range(p))
                assert is_irreducible(f, p) == (not has_root)


def test_first_irreducible_is_irreducible():
    for p in (2, 3, 5, 7, 11, 13):
        for d in range(1, 5):
            f = first_irreducible(p, d)
            assert len(f) == d + 1 and f[-1] == 1 and is_irreducible(f, p)


def test_construction_validation():
    with pytest.raises(ValueError):
        FqField(4)
    with pytest.raises(ValueError):
        FqField(3, 2, [1, 0, 1, 0])
    with pytest.raises(ValueError):
        FqField(3, 2, [2, 0, 1])  # x^2 - 1 = (x - 1)(x + 1)
    with pytest.raises(ValueError):
        FqField(17)


@given(fields.flatmap(lambda F: elements(F).flatmap(
    lambda x: elements(F).flatmap(lambda y: elements(F).map(lambda z: (x, y, z))))))
def test_field_axioms(triple):
    x, y, z = triple
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == 0
    if y:
        assert (x / y) * y == x


def test_seeded_random_is_deterministic():
    F = FqField(5, 2)
    a = [F.random(random.Random(7)) for _ in range(3)]
    b = [F.random(random.Random(7)) for _ in range(3)]
    assert a == b
