"""Sparse truncated Laurent series over F_q, i.e. elements of K = k((t)).

A series is a map exponent -> coefficient plus an absolute precision: the
value is known modulo t^prec. ``prec is None`` marks a finitely supported,
exact element. Only inversion of a non-monomial introduces truncation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import DivisionByZero, ExponentNotDivisible, FieldMismatch, PrecisionExhausted
from .gfq import FqElem, FqField
from .valued import INF, Mono, ValuedField

DEFAULT_PRECISION = 128

Scalar = Union[FqElem, int]


def _min_prec(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentSeries:
    __slots__ = ("field", "terms", "prec")

    def __init__(self, field: FqField, terms: dict[int, FqElem] | None = None,
                 prec: int | None = None):
        self.field = field
        self.prec = prec
        clean = {}
        if terms:
            for e, c in terms.items():
                if c and (prec is None or e < prec):
                    clean[e] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def monomial(cls, field: FqField, coef: Scalar, e: int, prec: int | None = None) -> LaurentSeries:
        return cls(field, {e: field(coef)}, prec)

    @classmethod
    def constant(cls, field: FqField, coef: Scalar) -> LaurentSeries:
        return cls.monomial(field, coef, 0)

    @classmethod
    def from_pairs(cls, field: FqField, pairs: Iterable, prec: int | None = None) -> LaurentSeries:
        """Build from (exponent, coefficient) pairs; repeated exponents add up."""
        terms: dict[int, FqElem] = {}
        for e, c in pairs:
            c = field(c)
            terms[e] = terms[e] + c if e in terms else c
        return cls(field, terms, prec)

    # -- inspection --------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.prec is None

    def exponents(self) -> list[int]:
        return sorted(self.terms)

    def coefficient(self, e: int) -> FqElem:
        if self.prec is not None and e >= self.prec:
            raise PrecisionExhausted(f"coefficient of t^{e} is beyond precision {self.prec}")
        return self.terms.get(e, self.field.zero)

    def valuation(self) -> int | float:
        if self.terms:
            return min(self.terms)
        if self.prec is None:
            return INF
        raise PrecisionExhausted(f"series is zero to precision O(t^{self.prec})")

    def _vlow(self) -> int | float:
        """Valuation, or a lower bound for it when the series is an inexact zero."""
        if self.terms:
            return min(self.terms)
        return INF if self.prec is None else self.prec

    def lead(self) -> tuple[FqElem, int]:
        v = self.valuation()
        if v == INF:
            raise ValueError("zero series has no leading term")
        return self.terms[v], v

    def is_zero(self) -> bool:
        """True when no nonzero term is known (exact zero or zero to precision)."""
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def agrees_with(self, other: LaurentSeries) -> bool:
        """Equality of the two series up to their common precision."""
        prec = _min_prec(self.prec, other.prec)
        return (self - other).truncate(prec).is_zero() if prec is not None else self == other

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> LaurentSeries | None:
        if isinstance(other, LaurentSeries):
            if other.field != self.field:
                raise FieldMismatch("series over different residue fields")
            return other
        if isinstance(other, (int, FqElem)):
            return LaurentSeries.constant(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return LaurentSeries(self.field, terms, _min_prec(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries(self.field, {e: -c for e, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c: Scalar) -> LaurentSeries:
        if isinstance(c, int):
            c = self.field(c)
        if not c:
            return LaurentSeries(self.field)
        return LaurentSeries(self.field, {e: x * c for e, x in self.terms.items()}, self.prec)

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by t^k."""
        prec = None if self.prec is None else self.prec + k
        return LaurentSeries(self.field, {e + k: c for e, c in self.terms.items()}, prec)

    def __mul__(self, other):
        if isinstance(other, (int, FqElem)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms and self.prec is None or not o.terms and o.prec is None:
            return LaurentSeries(self.field)
        prec = None
        if self.prec is not None:
            prec = self.prec + o._vlow()
        if o.prec is not None:
            prec = _min_prec(prec, o.prec + self._vlow())
        if prec == INF:
            prec = None
        zero = self.field.zero
        acc: dict[int, FqElem] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = e1 + e2
                if prec is not None and e >= prec:
                    continue
                acc[e] = acc.get(e, zero) + c1 * c2
        return LaurentSeries(self.field, acc, prec)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentSeries:
        if e < 0:
            return self.inverse() ** (-e)
        result = LaurentSeries.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self, cap: int = DEFAULT_PRECISION) -> LaurentSeries:
        """Multiplicative inverse.

        Inexact input of valuation v known to O(t^prec) gives O(t^{prec - 2v});
        exact non-monomial input is truncated at O(t^cap).
        """
        if not self.terms:
            if self.prec is None:
                raise DivisionByZero("inverse of the zero series")
            raise PrecisionExhausted("inverse of a series that is zero to precision")
        lead_c, v = self.lead()
        inv_lead = lead_c.inverse()
        if self.prec is None and len(self.terms) == 1:
            return LaurentSeries(self.field, {-v: inv_lead})
        out_prec = cap if self.prec is None else self.prec - 2 * v
        if out_prec <= -v:
            raise PrecisionExhausted("inverse has no terms below the precision cap")
        # unit part u = 1 + sum u_k t^k
        u = [(e - v, c * inv_lead) for e, c in self.terms.items() if e != v]
        rel = out_prec + v
        g = [self.field.zero] * rel
        g[0] = self.field.one
        for k in range(1, rel):
            s = self.field.zero
            for i, c in u:
                if i <= k:
                    gk = g[k - i]
                    if gk:
                        s = s + c * gk
            g[k] = -s
        return LaurentSeries(self.field, {k - v: c * inv_lead for k, c in enumerate(g)}, out_prec)

    def __truediv__(self, other):
        if isinstance(other, (int, FqElem)):
            return self.scale(self.field(other).inverse())
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def pth_power(self) -> LaurentSeries:
        p = self.field.p
        prec = None if self.prec is None else self.prec * p
        return LaurentSeries(self.field, {e * p: c.frobenius() for e, c in self.terms.items()}, prec)

    def derivative(self) -> LaurentSeries:
        prec = None if self.prec is None else self.prec - 1
        return LaurentSeries(self.field, {e - 1: c * e for e, c in self.terms.items()}, prec)

    def dlog_derivative(self) -> DifferentialRep:
        """df written as g * t^{-1} dt; returns g = t df/dt."""
        return DifferentialRep(LaurentSeries(
            self.field, {e: c * e for e, c in self.terms.items()}, self.prec))

    def truncate(self, bound: int | None) -> LaurentSeries:
        if bound is None:
            return self
        return LaurentSeries(self.field, self.terms, _min_prec(self.prec, bound))

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, FqElem)):
            other = LaurentSeries.constant(self.field, other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.field == other.field and self.prec == other.prec
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.prec))

    def to_pairs(self) -> list[list]:
        return [[e, list(self.terms[e].coords)] for e in self.exponents()]

    def __repr__(self) -> str:
        parts = []
        for e in self.exponents():
            c = self.terms[e]
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            cs = repr(c)
            if " + " in cs:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            else:
                parts.append(mono if c == 1 else f"{cs}*{mono}")
        if self.prec is not None:
            parts.append(f"O(t^{self.prec})")
        return " + ".join(parts) if parts else "0"


def pth_root_monomial(x: FqElem, e: int) -> LaurentSeries:
    """The p-th root of x t^e."""
    p = x.field.p
    if e % p:
        raise ExponentNotDivisible(f"exponent {e} is not divisible by p={p}")
    return LaurentSeries.monomial(x.field, x.pth_root(), e // p)


@dataclass(frozen=True)
class DifferentialRep:
    """The differential g * t^{-1} dt.

    Its order -v(chi) is -v(g): chi lies in F_n Omega exactly when g lies in
    F_n K, with F_n K the elements of valuation >= -n.
    """

    g: LaurentSeries

    def neg_valuation(self) -> int | float:
        """-v(chi); -inf for the zero differential."""
        return -self.g.valuation()

    def is_zero(self) -> bool:
        return self.g.is_zero() and self.g.is_exact

    def __add__(self, other: DifferentialRep) -> DifferentialRep:
        return DifferentialRep(self.g + other.g)

    def __mul__(self, f) -> DifferentialRep:
        return DifferentialRep(self.g * f)

    __rmul__ = __mul__


class LaurentField(ValuedField):
    """Handle for K = k((t)) used by the generic reduction code."""

    def __init__(self, residue_field: FqField, cap: int = DEFAULT_PRECISION):
        self.residue_field = residue_field
        self.cap = cap
        self.relations = ()

    def zero(self) -> LaurentSeries:
        return LaurentSeries(self.residue_field)

    def constant(self, kappa) -> LaurentSeries:
        return LaurentSeries.constant(self.residue_field, kappa)

    def t(self) -> LaurentSeries:
        return LaurentSeries.monomial(self.residue_field, 1, 1)

    def uniformizer(self) -> LaurentSeries:
        return self.t()

    def element(self, x) -> LaurentSeries:
        if isinstance(x, LaurentSeries):
            if x.field != self.residue_field:
                raise FieldMismatch("series over a different residue field")
            return x
        if isinstance(x, (int, FqElem)):
            return self.constant(x)
        raise FieldMismatch(f"cannot view {type(x).__name__} as an element of k((t))")

    def valuation(self, x: LaurentSeries) -> int | float:
        return x.valuation()

    def val_info(self, x: LaurentSeries) -> tuple[int | float, bool]:
        if x.terms:
            return min(x.terms), True
        if x.prec is None:
            return INF, True
        return x.prec, False

    def frobenius(self, x: LaurentSeries) -> LaurentSeries:
        return x.pth_power()

    def lead(self, x: LaurentSeries) -> Mono:
        c, e = x.lead()
        return Mono(c, (e,))

    def lift(self, mono: Mono) -> LaurentSeries:
        return LaurentSeries.monomial(self.residue_field, mono.coef, mono.exps[0])

    def truncate(self, x: LaurentSeries, bound: int) -> LaurentSeries:
        return x.truncate(bound)

    def deriv(self, x: LaurentSeries) -> LaurentSeries:
        return x.derivative()

    def inverse(self, x: LaurentSeries) -> LaurentSeries:
        return x.inverse(self.cap)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentField) and other.residue_field == self.residue_field

    def __hash__(self) -> int:
        return hash(("K", self.residue_field))

    def __repr__(self) -> str:
        return f"LaurentField({self.residue_field!r})"
