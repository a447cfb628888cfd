"""Upper ramification jumps of M_n/K from a normalized defining pair.

With omega = A(-a) db (componentwise differentials) the jumps above the first
layer are

    r_j = max( max_{i <= j} ((j - i)/p * m_a - v(omega_i)),  ((j + p - 2) m_a + m_1)/p ),

terms with omega_i = 0 dropped. The bottom jumps come from the conductors of
the F_p-combinations of a and b_1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .artin_schreier import character_sweep
from .errors import InvalidIndex, MonotonicityViolation
from .herbrand import as_psi, rational_to_json
from .laurent import DifferentialRep
from .normalize import DefiningPair, neg_val
from .unipotent import a_apply
from .valued import INF

NEG_INF = -INF


def omega(pair: DefiningPair) -> list[DifferentialRep]:
    """omega_j = sum_{i <= j} binom(-a, j - i) db_i in the dlog representation."""
    gs = [b.dlog_derivative().g for b in pair.b]
    return [DifferentialRep(g) for g in a_apply(-pair.a, gs, pair.p)]


def omega_orders(pair: DefiningPair) -> list[int | float]:
    """-v_K(omega_j), -inf for omega_j = 0."""
    return [w.neg_valuation() for w in omega(pair)]


def _check_index(pair: DefiningPair, j: int) -> None:
    if not 2 <= j <= pair.n:
        raise InvalidIndex(f"j={j} outside [2, {pair.n}]")


def r_top(pair: DefiningPair, j: int, orders: list | None = None) -> Fraction:
    _check_index(pair, j)
    p, m_a, m_1 = pair.p, pair.m_a, pair.m[0]
    if orders is None:
        orders = omega_orders(pair)
    best = Fraction((j + p - 2) * m_a + m_1, p)
    for i in range(1, j + 1):
        w = orders[i - 1]
        if w != NEG_INF:
            best = max(best, Fraction((j - i) * m_a, p) + w)
    return best


def r2_special(pair: DefiningPair) -> Fraction:
    """r_2 = max(-v(db_2 - a db_1), m_a/p + m_1, m_a + m_1/p)."""
    if pair.n != 2:
        raise InvalidIndex(f"the two-step formula needs n = 2, got n={pair.n}")
    p, m_a, m_1 = pair.p, pair.m_a, pair.m[0]
    db1 = pair.b[0].dlog_derivative()
    db2 = pair.b[1].dlog_derivative()
    top = (db2 + db1 * (-pair.a)).neg_valuation()
    terms = [Fraction(m_a, p) + m_1, m_a + Fraction(m_1, p)]
    if top != NEG_INF:
        terms.append(Fraction(top))
    return max(terms)


def s_diag(pair: DefiningPair, j: int, orders: list | None = None) -> Fraction:
    """psi^{-1} of the bound max(max_i((j-i-p+1) m_a + p(-v(omega_i))), (j-1) m_a + m_1)
    on the conductor of c_j over L = K(alpha)."""
    _check_index(pair, j)
    p, m_a, m_1 = pair.p, pair.m_a, pair.m[0]
    if orders is None:
        orders = omega_orders(pair)
    bound = (j - 1) * m_a + m_1
    for i in range(1, j + 1):
        w = orders[i - 1]
        if w != NEG_INF:
            bound = max(bound, (j - i - p + 1) * m_a + p * w)
    return as_psi(p, m_a).invert()(bound)


@dataclass(frozen=True)
class JumpProfile:
    n: int
    m_a: int
    m: tuple[int | float, ...]
    omega_val: tuple[int | float, ...]
    r: tuple[Fraction, ...]
    U: tuple[Fraction, ...]

    def to_json(self) -> dict:
        def opt(x):
            return None if x == NEG_INF else int(x)

        return {
            "n": self.n,
            "m_a": self.m_a,
            "m": [opt(x) for x in self.m],
            "omega_val": [opt(x) for x in self.omega_val],
            "r": [rational_to_json(x) for x in self.r],
            "U": [rational_to_json(x) for x in self.U],
        }


def jump_set(pair: DefiningPair) -> JumpProfile:
    sweep = character_sweep(pair.a, pair.b[0])
    orders = omega_orders(pair)
    r = [sweep.r1] + [r_top(pair, j, orders) for j in range(2, pair.n + 1)]
    for j in range(1, len(r)):
        if not r[j - 1] < r[j]:
            raise MonotonicityViolation(f"r_{j} = {r[j - 1]} is not below r_{j + 1} = {r[j]}")
    U = tuple(sorted(set(sweep.U1) | set(r[1:])))
    return JumpProfile(pair.n, int(pair.m_a), tuple(pair.m), tuple(orders), tuple(r), U)
