"""Test inputs: a closed-form polar family and random defining pairs."""
from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

from .gfq import FqElem, FqField
from .laurent import LaurentSeries
from .normalize import DefiningPair


def _binom_coeffs(k: int) -> list[Fraction]:
    """Rational coefficients of X (X-1) ... (X-k+1) / k!, lowest degree first."""
    poly = [Fraction(1)]
    for r in range(k):
        # multiply by (X - r)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= r * c
        poly = nxt
    return [c / factorial(k) for c in poly]


def polar_family_f(field: FqField, j: int, eta: int, eta2: int) -> LaurentSeries:
    """f_j in x^{-1} with df_j/dx = -binom(x^{-eta p - 1}, j - 1) x^{-eta2 p - 2}, reduced mod p.

    Every denominator (a factorial below p, or an exponent prime to p) is a unit mod p.
    """
    p = field.p
    step = eta * p + 1
    terms = {}
    for i, c in enumerate(_binom_coeffs(j - 1)):
        if not c:
            continue
        e = -step * i - eta2 * p - 2   # exponent of the integrand term
        q = -c / (e + 1)
        coef = q.numerator * pow(q.denominator, -1, p) % p
        if coef:
            terms[e + 1] = field(coef)
    return LaurentSeries(field, terms)


def polar_family_pair(field: FqField, eps: FqElem, n: int, eta: int, eta2: int) -> DefiningPair:
    """a = t^{-eta p - 1}, b_j = eps f_j(t)."""
    p = field.p
    a = LaurentSeries.monomial(field, 1, -eta * p - 1)
    b = tuple(polar_family_f(field, j, eta, eta2).scale(eps) for j in range(1, n + 1))
    return DefiningPair(a, b)


def polar_family_expected(p: int, j: int, eta: int, eta2: int) -> Fraction:
    """Closed form of r_j for the polar family."""
    return (j - 1) * (eta + Fraction(1, p)) + eta2 + 1 + (p - 1) * max(eta, eta2)


def polar_family_bottom(p: int, eta: int, eta2: int) -> set[Fraction]:
    return {Fraction(eta * p + 1), Fraction(eta2 * p + 1)}


def random_series(field: FqField, rng: random.Random, lo: int = -12, hi: int = -1,
                  max_terms: int = 4) -> LaurentSeries:
    """1 to max_terms terms with exponents in [lo, hi] and uniform coefficients."""
    k = rng.randint(1, max_terms)
    terms = {}
    for _ in range(k):
        terms[rng.randint(lo, hi)] = field.random(rng)
    return LaurentSeries(field, terms)


def random_pair(field: FqField, n: int, rng: random.Random) -> DefiningPair:
    a = random_series(field, rng)
    b = tuple(random_series(field, rng) for _ in range(n))
    return DefiningPair(a, b)
