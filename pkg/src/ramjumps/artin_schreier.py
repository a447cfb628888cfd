"""Artin-Schreier classes: reduced representatives, conductors, character sweeps.

Everything here is generic over :class:`~ramjumps.valued.ValuedField`, so the
same reduction runs over k((t)) and over any tower layer.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any

from .errors import DegenerateGroup, NotTotallyRamified, PrecisionExhausted
from .laurent import LaurentField, LaurentSeries
from .valued import INF, ValuedField

RAMIFIED = "ramified"
UNRAMIFIED = "unramified"
TRIVIAL = "trivial"


@dataclass(frozen=True)
class ReducedRep:
    """c = P(c_dblprime) + c_prime with c_prime reduced.

    ``steps`` lists the accumulator valuations at each p-th-root elimination;
    they strictly increase, which certifies termination.
    """

    c_prime: Any
    c_dblprime: Any
    m: int
    status: str
    steps: tuple[int, ...] = dc_field(default=())


def artin_schreier_p(field: ValuedField, x: Any) -> Any:
    """P(x) = x^p - x."""
    return field.frobenius(x) - x


def reduce(field: ValuedField, c: Any, strip_integral: bool = True) -> ReducedRep:
    """Reduce c modulo P(field).

    Leading terms of p-divisible negative valuation are removed by subtracting
    P(w), w a lift of the graded p-th root of the leading term. The loop stops
    at the first negative valuation prime to p (ramified, conductor = -v) or
    at valuation >= 0. In the latter case the residue constant decides between
    unramified and trivial via the trace; with ``strip_integral`` the part of
    positive valuation is also absorbed into the witness (to the field's
    precision cap) so that c_prime is a constant.
    """
    p = field.p
    acc = c
    witness = field.zero()
    steps = []
    while True:
        v = field.valuation(acc)
        if v == INF:
            return ReducedRep(acc, witness, 0, TRIVIAL, tuple(steps))
        if v < 0 and v % p:
            return ReducedRep(acc, witness, -v, RAMIFIED, tuple(steps))
        if v >= 0:
            break
        steps.append(v)
        w = field.lift(field.gr_pth_root(field.lead(acc)))
        acc = acc - artin_schreier_p(field, w)
        witness = witness + w

    residue = field.residue(acc)
    status = TRIVIAL if residue.trace() == 0 else UNRAMIFIED
    if not strip_integral:
        return ReducedRep(acc, witness, 0, status, tuple(steps))

    # x of positive valuation satisfies x = P(-(x + x^p + x^{p^2} + ...))
    x = acc - field.constant(residue)
    y = field.zero()
    while True:
        v, known = field.val_info(x)
        if v >= field.cap:
            break
        if not known:
            raise PrecisionExhausted("accumulator vanished before classification")
        y = y - x
        x = field.frobenius(x)
    witness = witness + field.truncate(y, field.cap)
    if status == TRIVIAL:
        rho = field.residue_field.solve_artin_schreier(residue)
        witness = witness + field.constant(rho)
        return ReducedRep(field.zero(), witness, 0, TRIVIAL, tuple(steps))
    return ReducedRep(field.constant(residue), witness, 0, UNRAMIFIED, tuple(steps))


def conductor(field: ValuedField, c: Any) -> int:
    return reduce(field, c, strip_integral=False).m


def base_field_of(x: LaurentSeries, cap: int | None = None) -> LaurentField:
    return LaurentField(x.field) if cap is None else LaurentField(x.field, cap)


@dataclass(frozen=True)
class SweepResult:
    r1: Fraction
    U1: tuple[Fraction, ...]
    conductors: dict  # (i, j) -> conductor of i a + j b1, one per F_p-line


def character_sweep(a: Any, b1: Any, field: ValuedField | None = None) -> SweepResult:
    """Upper jumps of the (Z/p)^2 extension cut out by P(x) = a, P(y) = b1.

    Its upper jumps are the conductors of the nonzero characters i a + j b1.
    Scaling by F_p^x does not change a conductor, so one representative per
    line suffices.
    """
    if field is None:
        field = base_field_of(a)
    p = field.p
    lines = [(1, j) for j in range(p)] + [(0, 1)]
    conductors = {}
    unramified = []
    for i, j in lines:
        rep = reduce(field, a * i + b1 * j, strip_integral=False)
        if rep.status == TRIVIAL:
            raise DegenerateGroup(f"{i}*a + {j}*b1 is in P(K): the classes are F_p-dependent")
        if rep.status == UNRAMIFIED:
            unramified.append((i, j))
        conductors[(i, j)] = rep.m
    if unramified:
        i, j = unramified[0]
        raise NotTotallyRamified(f"{i}*a + {j}*b1 defines an unramified extension")
    jumps = tuple(sorted({Fraction(m) for m in conductors.values()}))
    return SweepResult(r1=jumps[-1], U1=jumps, conductors=conductors)
