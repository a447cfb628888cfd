"""Formula against oracle: per-pair verification and seeded random self-tests."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import RamificationError
from .families import random_pair
from .gfq import FqField
from .herbrand import rational_to_json
from .jumps import JumpProfile, jump_set, omega_orders, r2_special, s_diag
from .normalize import DefiningPair, normalize
from .tower import OracleProfile, oracle_profile


@dataclass
class PairCheck:
    """Everything compared for one normalized pair."""

    pair: DefiningPair
    profile: JumpProfile
    oracle: OracleProfile
    special: Fraction | None  # two-step formula, n = 2 only
    diagnostic: tuple[Fraction, ...]
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def rows(self) -> list[dict]:
        out = []
        for j in range(2, self.pair.n + 1):
            formula = self.profile.r[j - 1]
            oracle = self.oracle.r[j - 2]
            row = {
                "j": j,
                "formula": rational_to_json(formula),
                "oracle": rational_to_json(oracle),
                "m_prime": self.oracle.m_prime[j - 2],
                "diagnostic": rational_to_json(self.diagnostic[j - 2]),
                "match": formula == oracle,
            }
            if j == 2 and self.special is not None:
                row["special"] = rational_to_json(self.special)
            out.append(row)
        return out


def check_pair(pair: DefiningPair, cap: int | None = None) -> PairCheck:
    """Evaluate the closed formula and the oracle on a normalized pair and
    record every disagreement. Domain errors propagate."""
    profile = jump_set(pair)
    oracle = oracle_profile(pair.a, pair.b, cap)
    orders = omega_orders(pair)
    n, p, m_a = pair.n, pair.p, pair.m_a
    special = r2_special(pair) if n == 2 else None
    diag = tuple(s_diag(pair, j, orders) for j in range(2, n + 1))
    check = PairCheck(pair, profile, oracle, special, diag)
    for j in range(2, n + 1):
        r = profile.r[j - 1]
        if r != oracle.r[j - 2]:
            check.problems.append(f"r_{j}: formula {r} != oracle {oracle.r[j - 2]}")
        if diag[j - 2] != r:
            check.problems.append(f"r_{j}: diagnostic bound {diag[j - 2]} != formula {r}")
        lifted = p * r - (p - 1) * m_a
        if lifted.denominator != 1 or lifted <= 0 or gcd(int(lifted), p) != 1:
            check.problems.append(f"p r_{j} - (p-1) m_a = {lifted} is not a positive integer prime to p")
        elif int(lifted) != oracle.m_prime[j - 2]:
            check.problems.append(f"psi(r_{j}) = {lifted} != m'_{j} = {oracle.m_prime[j - 2]}")
    if special is not None and special != profile.r[1]:
        check.problems.append(f"two-step formula {special} != general formula {profile.r[1]}")
    mp = (m_a,) + oracle.m_prime
    if any(x >= y for x, y in zip(mp, mp[1:])):
        check.problems.append(f"conductors over L are not strictly increasing: {mp}")
    return check


def selftest_field(p: int, d: int = 2) -> FqField:
    return FqField(p, d)


def selftest(p: int, n: int, count: int, seed: int, d: int = 2,
             cap: int | None = None, keep: bool = False) -> dict:
    """``count`` seeded random pairs: normalize, then compare formula and oracle.

    Rejected pairs (domain errors during normalization or evaluation) are
    tallied by error code. With ``keep`` the accepted PairChecks are returned
    under "checks" (not JSON-serializable; for in-process callers).
    """
    field_ = selftest_field(p, d)
    rng = random.Random(seed)
    passed = failed = 0
    reasons: Counter = Counter()
    first = None
    kept = []
    for _ in range(count):
        raw = random_pair(field_, n, rng)
        try:
            check = check_pair(normalize(raw), cap)
        except RamificationError as e:
            reasons[e.code] += 1
            continue
        if keep:
            kept.append(check)
        if check.ok:
            passed += 1
        else:
            failed += 1
            if first is None:
                first = {"a": raw.a.to_pairs(), "b": [x.to_pairs() for x in raw.b],
                         "problems": check.problems}
    summary = {
        "p": p, "n": n, "d": d, "count": count, "seed": seed,
        "pass": passed, "fail": failed, "rejected": sum(reasons.values()),
        "rejections": dict(sorted(reasons.items())),
        "first_counterexample": first,
    }
    if keep:
        summary["checks"] = kept
    return summary
