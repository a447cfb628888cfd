"""Bringing a defining pair (a, b) into normal form.

The tower M_n/K is cut out by alpha^p - alpha = a and F(gamma) - gamma =
A(-alpha^p) b. Twisting by elements of G(K) changes (a, b) without changing
the extension; three such twists are used:

* (I)   (a, b) -> (a + P(s), A(s^p) b), with s chosen so that a is reduced;
* (II)  (a, b) -> (a, b + (1 - A(a)) tau + F(tau) - tau), tau chosen one
        coordinate at a time, bottom-up, so every b_j is reduced;
* (III) (a, b) -> (a, b - i v(a)) when n <= p - 1, m_a = m_1 and the leading
        terms of b_1 and a differ by the factor i in F_p.

Vectors are bottom-up: b[0] is b_1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .artin_schreier import TRIVIAL, UNRAMIFIED, reduce
from .errors import DegenerateGroup, InvalidOrder, NotApplicable, NotTotallyRamified
from .gfq import FqField
from .laurent import LaurentField, LaurentSeries
from .unipotent import UnipotentGroup, a_apply, binom_polys
from .valued import INF


@dataclass(frozen=True)
class DefiningPair:
    a: LaurentSeries
    b: tuple[LaurentSeries, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        n, p = len(self.b), self.a.field.p
        if not 2 <= n <= p:
            raise InvalidOrder(f"order n={n} must satisfy 2 <= n <= p={p}")

    @property
    def field(self) -> FqField:
        return self.a.field

    @property
    def p(self) -> int:
        return self.a.field.p

    @property
    def n(self) -> int:
        return len(self.b)

    @property
    def m_a(self) -> int | float:
        return neg_val(self.a)

    @property
    def m(self) -> list[int | float]:
        return [neg_val(x) for x in self.b]


def neg_val(x: LaurentSeries) -> int | float:
    """-v_K(x), with -inf for the zero series."""
    return -x.valuation()


def _laurent(pair: DefiningPair) -> LaurentField:
    return LaurentField(pair.field)


def _leading_ratio(x: LaurentSeries, y: LaurentSeries):
    """lead(x) / lead(y) when both have the same valuation."""
    cx, ex = x.lead()
    cy, ey = y.lead()
    assert ex == ey
    return cx / cy


def op1_fix_a(pair: DefiningPair) -> DefiningPair:
    """Twist (I) with s = -c'' so that a + P(s) is the reduced representative."""
    rep = reduce(_laurent(pair), pair.a, strip_integral=False)
    s = -rep.c_dblprime
    if s.is_zero():
        return pair
    b = a_apply(s.pth_power(), pair.b, pair.p)
    return DefiningPair(rep.c_prime, tuple(b))


def _op2(pair: DefiningPair) -> tuple[DefiningPair, list[str]]:
    p, n = pair.p, pair.n
    K = _laurent(pair)
    bs = binom_polys(pair.a, n - 1, p)
    tau: list[LaurentSeries] = []
    out, statuses = [], []
    for j in range(n):
        # [(1 - A(a)) tau]_j only involves tau_1 .. tau_{j-1}
        acc = pair.b[j]
        for i in range(j):
            if not tau[i].is_zero():
                acc = acc - bs[j - i] * tau[i]
        rep = reduce(K, acc, strip_integral=False)
        tau.append(-rep.c_dblprime)
        out.append(rep.c_prime)
        statuses.append(rep.status)
    return DefiningPair(pair.a, tuple(out)), statuses


def op2_fix_b(pair: DefiningPair) -> DefiningPair:
    """Twist (II) with each tau_j the negated reduction witness of the
    accumulated j-th component."""
    result, _ = _op2(pair)
    return result


def op3_applies(pair: DefiningPair) -> bool:
    return _op3_ratio(pair) is not None


def _op3_ratio(pair: DefiningPair):
    p = pair.p
    m_a, m_1 = pair.m_a, neg_val(pair.b[0])
    if pair.n > p - 1 or m_a != m_1 or m_a <= 0 or m_a == INF or m_a % p == 0:
        return None
    ratio = _leading_ratio(pair.b[0], pair.a)
    if not ratio.in_prime_field():
        return None
    return int(ratio)


def op3_untangle(pair: DefiningPair) -> DefiningPair:
    """Twist (III): b -> b - i v(a), i = lead(b_1) / lead(a) in F_p."""
    i = _op3_ratio(pair)
    if i is None:
        raise NotApplicable("leading terms of a and b_1 are not F_p-dependent "
                            "with equal conductor (or n = p)")
    v = UnipotentGroup(pair.n, pair.p).v_map(pair.a)
    return DefiningPair(pair.a, tuple(bj - vj * i for bj, vj in zip(pair.b, v)))


@dataclass(frozen=True)
class ConditionReport:
    cond_i: bool
    cond_ii: bool
    cond_iii: bool
    m_a: int | float
    m: tuple[int | float, ...]

    @property
    def ok(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii


def check_conditions(pair: DefiningPair) -> ConditionReport:
    p = pair.p
    m_a, m = pair.m_a, pair.m

    def good(x):
        return x != INF and 0 < x and x % p != 0

    cond_i = good(m_a) and good(m[0])
    cond_ii = all(x <= 0 or x % p != 0 for x in m[1:])
    cond_iii = True
    if pair.n <= p - 1 and m_a == m[0] and m_a > 0:
        cond_iii = not _leading_ratio(pair.b[0], pair.a).in_prime_field()
    return ConditionReport(cond_i, cond_ii, cond_iii, m_a, tuple(m))


def _require_ramified(status: str, what: str) -> None:
    if status == TRIVIAL:
        raise DegenerateGroup(f"{what} defines the trivial class")
    if status == UNRAMIFIED:
        raise NotTotallyRamified(f"{what} defines an unramified class")


def normalize(pair: DefiningPair) -> DefiningPair:
    """(I), then (II); if the (III) trigger holds, (III) and (II) once more."""
    K = _laurent(pair)
    rep_a = reduce(K, pair.a, strip_integral=False)
    _require_ramified(rep_a.status, "a")
    pair = op1_fix_a(pair)
    m1_before = neg_val(pair.b[0])
    pair, statuses = _op2(pair)
    _require_ramified(statuses[0], "b_1")
    assert neg_val(pair.b[0]) <= m1_before, "twist (II) increased m_1"
    if _op3_ratio(pair) is not None:
        pair = op3_untangle(pair)
        m1_before = neg_val(pair.b[0])
        pair, statuses = _op2(pair)
        _require_ramified(statuses[0], "b_1 after untangling")
        assert neg_val(pair.b[0]) <= m1_before, "twist (II) increased m_1"
    report = check_conditions(pair)
    if not report.ok:
        raise NotTotallyRamified(f"normal form conditions fail after one untangling: {report}")
    return pair


def twist(pair: DefiningPair, s: LaurentSeries, tau: Sequence[LaurentSeries]) -> DefiningPair:
    """The general twist by (s, tau) in G(K):
    (a, b) -> (a + P(s), A(s^p) b - A(a + P(s)) tau + F(tau))."""
    p = pair.p
    a2 = pair.a + s.pth_power() - s
    b2 = a_apply(s.pth_power(), pair.b, p)
    at = a_apply(a2, tau, p)
    return DefiningPair(a2, tuple(x - y + z.pth_power() for x, y, z in zip(b2, at, tau)))
