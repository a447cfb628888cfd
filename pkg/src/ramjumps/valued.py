"""Common interface for the valued fields reductions run over.

A field here is k((t)) or a tower of Artin-Schreier layers over it, each layer
totally ramified of degree p. Leading terms live in the associated graded ring,
which is modelled concretely: a graded monomial is

    coef * t^e * gamma_1^{i_1} * ... * gamma_L^{i_L},   0 <= i_l < p,

subject to gamma_l^p = (leading term of the layer-l defining element). Every
degree has exactly one basis monomial with coefficient 1, so a homogeneous
piece is identified with the residue field through that basis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from .errors import ExponentNotDivisible
from .gfq import FqElem, FqField

INF = math.inf


@dataclass(frozen=True)
class Mono:
    """A graded monomial; ``exps`` is (e, i_1, ..., i_L)."""

    coef: FqElem
    exps: tuple[int, ...]


class ValuedField:
    """Base class for k((t)) and its Artin-Schreier layers.

    Subclasses implement the element-level hooks (``zero``, ``valuation``,
    ``lead``, ``lift``, ...); the graded-ring arithmetic below is shared.
    """

    residue_field: FqField
    cap: int
    # (conductor, leading term of the defining element) for each layer, bottom first
    relations: tuple[tuple[int, Mono], ...] = ()

    @property
    def p(self) -> int:
        return self.residue_field.p

    @property
    def level(self) -> int:
        return len(self.relations)

    # -- element hooks ---------------------------------------------------
    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        return self.constant(self.residue_field.one)

    def constant(self, kappa: FqElem | int) -> Any:
        raise NotImplementedError

    def valuation(self, x: Any) -> int | float:
        raise NotImplementedError

    def lead(self, x: Any) -> Mono:
        raise NotImplementedError

    def lift(self, mono: Mono) -> Any:
        raise NotImplementedError

    def truncate(self, x: Any, bound: int) -> Any:
        """Discard everything of valuation >= bound, recording the loss as precision."""
        raise NotImplementedError

    def deriv(self, x: Any) -> Any:
        """d/dt, for t the uniformizer of the bottom field k((t))."""
        raise NotImplementedError

    def val_info(self, x: Any) -> tuple[int | float, bool]:
        """(valuation, True) when it is determined; (lower bound, False) when
        x vanishes to its working precision."""
        raise NotImplementedError

    def inverse(self, x: Any) -> Any:
        raise NotImplementedError

    def frobenius(self, x: Any) -> Any:
        return x ** self.p

    def t(self) -> Any:
        """The uniformizer t of the bottom field, as an element of this field."""
        raise NotImplementedError

    def uniformizer(self) -> Any:
        raise NotImplementedError

    def residue(self, x: Any) -> FqElem:
        """Image in k of an element of non-negative valuation."""
        v = self.valuation(x)
        if v < 0:
            raise ValueError("residue of an element with a pole")
        if v > 0:
            return self.residue_field.zero
        return self.lead(x).coef

    # -- graded ring -------------------------------------------------------
    def gr_degree(self, exps: tuple[int, ...]) -> int:
        v = exps[0]
        for (m, _), i in zip(self.relations, exps[1:]):
            v = self.p * v - i * m
        return v

    def gr_normalize(self, coef: FqElem, exps) -> Mono:
        exps = list(exps)
        p = self.p
        for l in range(self.level, 0, -1):
            _, chat = self.relations[l - 1]
            while exps[l] >= p:
                exps[l] -= p
                coef = coef * chat.coef
                for k, e in enumerate(chat.exps):
                    exps[k] += e
            while exps[l] < 0:
                exps[l] += p
                coef = coef / chat.coef
                for k, e in enumerate(chat.exps):
                    exps[k] -= e
        return Mono(coef, tuple(exps))

    def gr_mul(self, a: Mono, b: Mono) -> Mono:
        return self.gr_normalize(a.coef * b.coef, [x + y for x, y in zip(a.exps, b.exps)])

    def gr_inv(self, a: Mono) -> Mono:
        return self.gr_normalize(a.coef.inverse(), [-x for x in a.exps])

    def gr_pow(self, a: Mono, e: int) -> Mono:
        if e < 0:
            return self.gr_pow(self.gr_inv(a), -e)
        result = self.gr_basis(0)
        for _ in range(e):
            result = self.gr_mul(result, a)
        return result

    def gr_scale(self, a: Mono, kappa: FqElem | int) -> Mono:
        return Mono(a.coef * kappa, a.exps)

    def gr_add(self, a: Mono, b: Mono) -> Mono:
        if a.exps != b.exps:
            raise ValueError("graded monomials of different degree")
        return Mono(a.coef + b.coef, a.exps)

    def gr_basis(self, v: int) -> Mono:
        p = self.p
        exps = [0] * (self.level + 1)
        for l in range(self.level, 0, -1):
            m = self.relations[l - 1][0]
            i = (-v * pow(m, -1, p)) % p
            exps[l] = i
            v = (v + i * m) // p
        exps[0] = v
        return Mono(self.residue_field.one, tuple(exps))

    def gr_coefficient(self, a: Mono) -> FqElem:
        """Coordinate of ``a`` against the basis monomial of its degree."""
        basis = self.gr_basis(self.gr_degree(a.exps))
        assert basis.exps == a.exps, "graded monomial is not normalized"
        return a.coef

    def gr_pth_root(self, a: Mono) -> Mono:
        v = self.gr_degree(a.exps)
        if v % self.p:
            raise ExponentNotDivisible(f"degree {v} is not divisible by p={self.p}")
        root = self.gr_basis(v // self.p)
        power = self.gr_pow(root, self.p)
        assert power.exps == a.exps
        return Mono((a.coef / power.coef).pth_root(), root.exps)

    def gr_frobenius(self, a: Mono) -> Mono:
        return self.gr_pow(a, self.p)
