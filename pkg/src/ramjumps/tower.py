"""Artin-Schreier layers L = F(gamma), gamma^p - gamma = c, as explicit valued algebras.

An element of L is stored in the basis 1, gamma, ..., gamma^{p-1} over F. Since
v_F(c) = -m with p prime to m, the layer is totally ramified of degree p and

    v_L(sum f_i gamma^i) = min_i (p v_F(f_i) - i m),

with a unique minimizing i. Nothing is ever re-expanded in a uniformizer of L.
Layers stack: the base of a layer may itself be a layer.

This module is the independent route to the upper jumps: it reduces the
classes c_j directly over L = K(alpha) and pulls the conductors back through
the Herbrand function, and it can also brute-force the lower numbering of a
small tower from its Galois action.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .artin_schreier import RAMIFIED, reduce
from .errors import (DivisionByZero, FieldMismatch, InvalidIndex, InvalidOrder, NotRamified,
                     NotReduced, PrecisionExhausted)
from .gfq import FqElem
from .herbrand import PLFunction, as_psi, herbrand_phi
from .laurent import LaurentField, LaurentSeries
from .unipotent import binom_poly, binom_polys
from .valued import INF, Mono, ValuedField


def _is_null(x: Any) -> bool:
    """Exact zero (as opposed to zero only up to precision)."""
    if isinstance(x, LaurentSeries):
        return not x.terms and x.prec is None
    return x.is_null()


class ASLayer(ValuedField):
    """The field base(gamma) with gamma^p = gamma + c, c reduced of conductor m."""

    def __init__(self, base: ValuedField, c: Any):
        self.base = base
        self.residue_field = base.residue_field
        p = base.p
        rep = reduce(base, c, strip_integral=False)
        if rep.status != RAMIFIED:
            raise NotRamified(f"defining element is {rep.status}, not ramified")
        if base.valuation(c) != -rep.m:
            raise NotReduced(f"defining element has valuation {base.valuation(c)}, "
                             f"but its class has conductor {rep.m}")
        self.c = c
        self.m = rep.m
        self.e = p
        self.psi = as_psi(p, self.m)
        self.delta = (self.m + 1) * (p - 1)
        self.cap = base.cap * p
        self.relations = base.relations + ((self.m, base.lead(c)),)
        self._gamma_deriv = None
        self._frob_powers = None
        self._gamma_inv = None

    # -- structure -------------------------------------------------------------
    def contains(self, other: ValuedField) -> bool:
        """True when ``other`` is this layer or one of the fields below it."""
        f = self
        while True:
            if f is other or f == other:
                return True
            if not isinstance(f, ASLayer):
                return False
            f = f.base

    def bottom(self) -> LaurentField:
        f = self
        while isinstance(f, ASLayer):
            f = f.base
        return f

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, ASLayer) and self.base == other.base and self.c == other.c

    def __hash__(self) -> int:
        return hash(("L", self.base, self.m))

    def __repr__(self) -> str:
        return f"ASLayer(level={self.level}, m={self.m}, c={self.c!r})"

    # -- elements --------------------------------------------------------------
    def _wrap(self, coords) -> LayeredElem:
        return LayeredElem(self, tuple(coords))

    def element(self, x: Any) -> LayeredElem:
        if isinstance(x, LayeredElem) and x.layer is self:
            return x
        if isinstance(x, LayeredElem) and x.layer == self:
            return LayeredElem(self, x.coords)
        z = self.base.zero()
        return self._wrap([self.base.element(x)] + [z] * (self.p - 1))

    def zero(self) -> LayeredElem:
        z = self.base.zero()
        return self._wrap([z] * self.p)

    def constant(self, kappa) -> LayeredElem:
        return self.element(self.base.constant(kappa))

    def gamma(self) -> LayeredElem:
        z, one = self.base.zero(), self.base.one()
        return self._wrap([z, one] + [z] * (self.p - 2))

    def t(self) -> LayeredElem:
        return self.element(self.base.t())

    def uniformizer(self) -> LayeredElem:
        """gamma^x * (base uniformizer)^y with x m = -1 mod p, y = (1 + x m) / p."""
        p, m = self.p, self.m
        x = (-pow(m, -1, p)) % p
        y = (1 + x * m) // p
        return self.gamma() ** x * self.element(self.base.uniformizer() ** y)

    # -- valuation and graded pieces ------------------------------------------
    def _coord_vals(self, x: LayeredElem):
        out = []
        for i, f in enumerate(x.coords):
            v, known = self.base.val_info(f)
            if v != INF:
                out.append((self.p * v - i * self.m, known, i))
        return out

    def val_info(self, x: LayeredElem) -> tuple[int | float, bool]:
        vals = self._coord_vals(x)
        if not vals:
            return INF, True
        v, known, _ = min(vals)
        return v, known

    def valuation(self, x: LayeredElem) -> int | float:
        v, known = self.val_info(x)
        if not known:
            raise PrecisionExhausted(f"layered element is zero to precision O(pi^{v})")
        return v

    def _lead_index(self, x: LayeredElem) -> int:
        vals = self._coord_vals(x)
        if not vals:
            raise ValueError("zero element has no leading term")
        v, known, i = min(vals)
        if not known:
            raise PrecisionExhausted(f"layered element is zero to precision O(pi^{v})")
        return i

    def lead(self, x: LayeredElem) -> Mono:
        i = self._lead_index(x)
        inner = self.base.lead(x.coords[i])
        return Mono(inner.coef, inner.exps + (i,))

    def lift(self, mono: Mono) -> LayeredElem:
        i = mono.exps[-1]
        f = self.base.lift(Mono(mono.coef, mono.exps[:-1]))
        coords = [self.base.zero()] * self.p
        coords[i] = f
        return self._wrap(coords)

    def truncate(self, x: LayeredElem, bound: int) -> LayeredElem:
        p, m = self.p, self.m
        # p v(f_i) - i m >= bound  <=>  v(f_i) >= ceil((bound + i m) / p)
        return self._wrap(self.base.truncate(f, -((-(bound + i * m)) // p))
                          for i, f in enumerate(x.coords))

    # -- operations ------------------------------------------------------------
    def gamma_deriv(self) -> Any:
        """d gamma / dt = -dc/dt, an element of the base."""
        if self._gamma_deriv is None:
            self._gamma_deriv = -self.base.deriv(self.c)
        return self._gamma_deriv

    def deriv(self, x: LayeredElem) -> LayeredElem:
        p = self.p
        gp = self.gamma_deriv()
        coords = []
        for k in range(p):
            out = self.base.deriv(x.coords[k])
            if k + 1 < p and not _is_null(x.coords[k + 1]):
                out = out + x.coords[k + 1] * gp * (k + 1)
            coords.append(out)
        return self._wrap(coords)

    def frobenius(self, x: LayeredElem) -> LayeredElem:
        """sum f_i^p (gamma + c)^i."""
        if self._frob_powers is None:
            g = self.gamma() + self.element(self.c)
            powers = [self.one()]
            for _ in range(self.p - 1):
                powers.append(powers[-1] * g)
            self._frob_powers = powers
        out = self.zero()
        for f, power in zip(x.coords, self._frob_powers):
            if not _is_null(f):
                out = out + power * self.base.frobenius(f)
        return out

    def gamma_inverse(self) -> LayeredElem:
        """gamma^{-1} = c^{-1} (gamma^{p-1} - 1)."""
        if self._gamma_inv is None:
            cinv = self.base.inverse(self.c)
            self._gamma_inv = (self.gamma() ** (self.p - 1) - 1) * cinv
        return self._gamma_inv

    def inverse(self, x: LayeredElem) -> LayeredElem:
        v, known = self.val_info(x)
        if v == INF:
            raise DivisionByZero("inverse of zero in a layer")
        if not known:
            raise PrecisionExhausted("inverse of an element that is zero to precision")
        i = self._lead_index(x)
        if all(_is_null(f) for k, f in enumerate(x.coords) if k != i):
            lead_only = True
        else:
            lead_only = False
        minv = self.element(self.base.inverse(x.coords[i]))
        if i:
            minv = minv * self.gamma_inverse() ** i
        if lead_only and i == 0:
            return minv
        # Newton: with e = 1 - x y, the update y + y e squares the error
        bound = self.cap + v
        y = minv
        last = -INF
        while True:
            err = self.truncate(1 - x * y, bound)
            ev, known = self.val_info(err)
            # an inexact x caps the attainable precision below the bound
            if ev >= bound or not known or ev <= last:
                break
            last = ev
            y = self.truncate(y + y * err, self.cap)
        return self.truncate(y, self.cap)

    def apply_automorphism(self, x: LayeredElem, base_map: Callable[[Any], Any],
                           gamma_image: LayeredElem) -> LayeredElem:
        """sum base_map(f_i) * gamma_image^i."""
        out = self.zero()
        power = self.one()
        for k, f in enumerate(x.coords):
            if k:
                power = power * gamma_image
            if not _is_null(f):
                out = out + power * self.element(base_map(f))
        return out

    def galois_shift(self, x: LayeredElem, delta: int = 1) -> LayeredElem:
        """The automorphism gamma -> gamma + delta over the base."""
        return self.apply_automorphism(x, lambda f: f, self.gamma() + delta)


class LayeredElem:
    __slots__ = ("layer", "coords")

    def __init__(self, layer: ASLayer, coords: tuple):
        if len(coords) != layer.p:
            raise ValueError(f"expected {layer.p} coordinates, got {len(coords)}")
        self.layer = layer
        self.coords = coords

    def is_null(self) -> bool:
        return all(_is_null(f) for f in self.coords)

    def _coerce(self, other):
        if isinstance(other, LayeredElem):
            if other.layer is self.layer:
                return other
            if self.layer.contains(other.layer):
                return self.layer.element(other)
            if other.layer.contains(self.layer):
                return None
            raise FieldMismatch("elements of unrelated layers")
        if isinstance(other, (int, FqElem, LaurentSeries)):
            if isinstance(other, LaurentSeries) and other.field != self.layer.residue_field:
                raise FieldMismatch("series over a different residue field")
            return self.layer.element(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LayeredElem(self.layer, tuple(f + g for f, g in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> LayeredElem:
        return LayeredElem(self.layer, tuple(-f for f in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LayeredElem(self.layer, tuple(f - g for f, g in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, FqElem)):
            return LayeredElem(self.layer, tuple(f * other for f in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        layer = self.layer
        p = layer.p
        if o.coords[0] is not None and all(_is_null(g) for g in o.coords[1:]):
            g0 = o.coords[0]
            return LayeredElem(layer, tuple(f * g0 for f in self.coords))
        prod: list = [None] * (2 * p - 1)
        for i, f in enumerate(self.coords):
            if _is_null(f):
                continue
            for j, g in enumerate(o.coords):
                if _is_null(g):
                    continue
                h = f * g
                prod[i + j] = h if prod[i + j] is None else prod[i + j] + h
        # gamma^{p+k} = gamma^{k+1} + c gamma^k, from the top down
        for k in range(2 * p - 2, p - 1, -1):
            h = prod[k]
            if h is None:
                continue
            lo = k - p
            prod[lo + 1] = h if prod[lo + 1] is None else prod[lo + 1] + h
            hc = h * layer.c
            prod[lo] = hc if prod[lo] is None else prod[lo] + hc
        zero = layer.base.zero()
        return LayeredElem(layer, tuple(zero if h is None else h for h in prod[:p]))

    def __rmul__(self, other):
        if isinstance(other, (int, FqElem)):
            return self * other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, e: int) -> LayeredElem:
        if e < 0:
            return self.inverse() ** (-e)
        result = self.layer.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> LayeredElem:
        return self.layer.inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (int, FqElem)):
            return self * self.layer.residue_field(other).inverse()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def valuation(self) -> int | float:
        return self.layer.valuation(self)

    def __bool__(self) -> bool:
        return self.layer.val_info(self)[0] != INF

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, FqElem, LaurentSeries, LayeredElem)):
            try:
                o = self._coerce(other)
            except FieldMismatch:
                return False
            if o is None:
                return NotImplemented
            return self.coords == o.coords
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        parts = []
        for i, f in enumerate(self.coords):
            if _is_null(f):
                continue
            g = "" if i == 0 else ("*gamma" if i == 1 else f"*gamma^{i}")
            parts.append(f"({f!r}){g}")
        return " + ".join(parts) if parts else "0"


# -- single-layer checks --------------------------------------------------------

def build_layer(base: ValuedField, c: Any) -> ASLayer:
    return ASLayer(base, c)


def layer_uniformizer(layer: ASLayer) -> LayeredElem:
    return layer.uniformizer()


def lower_jump_check(layer: ASLayer) -> int:
    """v(sigma(pi) - pi) - 1 for the generator gamma -> gamma + 1."""
    pi = layer.uniformizer()
    return layer.valuation(layer.galois_shift(pi) - pi) - 1


def different_check(layer: ASLayer) -> int:
    """sum over sigma != 1 of v(sigma(pi) - pi)."""
    pi = layer.uniformizer()
    return sum(layer.valuation(layer.galois_shift(pi, k) - pi) for k in range(1, layer.p))


def lambda_element(layer: ASLayer, pi: LayeredElem | None = None) -> LayeredElem:
    """lambda = pi / (t d pi/dt), the ratio of t^{-1} dt to pi^{-1} d pi."""
    if pi is None:
        pi = layer.uniformizer()
    return pi * layer.inverse(layer.deriv(pi) * layer.t())


def theta_mono(layer: ASLayer, pi: LayeredElem | None = None) -> Mono:
    return layer.lead(lambda_element(layer, pi))


def theta(layer: ASLayer, pi: LayeredElem | None = None) -> FqElem:
    """Coordinate of the leading image of lambda against the graded basis."""
    return layer.gr_coefficient(theta_mono(layer, pi))


def kernel_check(layer: ASLayer) -> bool:
    """theta * ybar + pth_root(ybar) = 0 for ybar the leading image of c in L."""
    ybar = layer.lead(layer.element(layer.c))
    th = theta_mono(layer)
    lhs = layer.gr_mul(th, ybar)
    root = layer.gr_pth_root(ybar)
    return not layer.gr_add(lhs, root).coef


def measured_dlog_valuation(layer: ASLayer, x: LayeredElem) -> int | float:
    """v_L of dx expressed against pi^{-1} d pi: v_L(x' t lambda) with x' = dx/dt."""
    return layer.valuation(layer.deriv(x) * layer.t() * lambda_element(layer))


# -- the oracle for r_j -----------------------------------------------------------

def c_vector(a: LaurentSeries, b: Sequence[LaurentSeries], layer: ASLayer,
             alpha: LayeredElem | None = None) -> list[LayeredElem]:
    """c_j = sum_{i <= j} binom(-a - alpha, j - i) b_i, bottom-up.

    alpha defaults to the generator gamma of the layer (the case of reduced a).
    """
    p = layer.p
    n = len(b)
    if alpha is None:
        alpha = layer.gamma()
    x = -alpha - a
    bs = binom_polys(x, n - 1, p)
    return [sum((bs[j - i] * b[i] for i in range(1, j + 1)), bs[j] * b[0]) for j in range(n)]


@dataclass(frozen=True)
class OracleProfile:
    m_a: int
    m_prime: tuple[int, ...]  # conductors of c_2..c_n over L
    r: tuple[Fraction, ...]   # psi^{-1}(m'_j), j = 2..n


def oracle_profile(a: LaurentSeries, b: Sequence[LaurentSeries],
                   cap: int | None = None) -> OracleProfile:
    field = LaurentField(a.field) if cap is None else LaurentField(a.field, cap)
    layer = build_layer(field, a)
    psi_inv = layer.psi.invert()
    cs = c_vector(a, b, layer)
    m_prime = []
    for j, cj in enumerate(cs[1:], start=2):
        rep = reduce(layer, cj, strip_integral=False)
        if rep.status != RAMIFIED:
            raise NotRamified(f"c_{j} defines a {rep.status} class over L")
        m_prime.append(rep.m)
    return OracleProfile(layer.m, tuple(m_prime), tuple(psi_inv(m) for m in m_prime))


def oracle_r(a: LaurentSeries, b: Sequence[LaurentSeries], j: int) -> Fraction:
    if not 2 <= j <= len(b):
        raise InvalidIndex(f"j={j} outside [2, {len(b)}]")
    return oracle_profile(a, b[:j]).r[j - 2]


# -- stacked layers and brute-force lower numbering ------------------------------

def stack_layer(top: ValuedField, c: Any) -> tuple[ASLayer, Any]:
    """Adjoin a root of P(x) = c over ``top``: reduce c first, build the layer on
    the reduced representative and return it with the witness w (so that the
    new generator is root - w)."""
    rep = reduce(top, top.element(c), strip_integral=False)
    if rep.status != RAMIFIED:
        raise NotRamified(f"class is {rep.status} over the current layer")
    return ASLayer(top, rep.c_prime), rep.c_dblprime


def lower_indices(top: ASLayer, automorphisms: Sequence[Callable[[LayeredElem], LayeredElem]]) -> list[int]:
    """v(sigma(pi) - pi) for each given automorphism of the top layer."""
    pi = top.uniformizer()
    return [top.valuation(sigma(pi) - pi) for sigma in automorphisms]


def _lift_map(layer: ASLayer, base_map: Callable, gamma_image: LayeredElem) -> Callable:
    return lambda x: layer.apply_automorphism(layer.element(x), base_map, gamma_image)


def abelian_pair_tower(c1: LaurentSeries, c2: LaurentSeries, cap: int | None = None):
    """K(g1, g2) with P(g1) = c1, P(g2) = c2 (c1, c2 in K).

    Returns (L1, L2, automorphisms, psi) where the automorphisms are all
    non-identity elements of (Z/p)^2 acting on L2, and psi = psi_{L2/L1} o psi_{L1/K}.
    """
    K = LaurentField(c1.field) if cap is None else LaurentField(c1.field, cap)
    L1 = build_layer(K, c1)
    L2, w = stack_layer(L1, c2)
    p = K.p
    autos = []
    for s1, s2 in itertools.product(range(p), repeat=2):
        if s1 == s2 == 0:
            continue
        sig1 = _lift_map(L1, lambda f: f, L1.gamma() + s1)
        # g2 = gamma2 + w is sent to g2 + s2, so gamma2 -> gamma2 + w + s2 - sigma(w)
        img = L2.gamma() + L2.element(w) + s2 - L2.element(sig1(w))
        autos.append(_lift_map(L2, sig1, img))
    psi = L2.psi.compose(L1.psi)
    return L1, L2, autos, psi


def tower_upper_jumps_bruteforce(a: LaurentSeries, b: Sequence[LaurentSeries],
                                 cap: int | None = None) -> list[Fraction]:
    """Experimental: upper jumps of M_n/K from the lower numbering of the full
    tower L(gamma_1, ..., gamma_n), computed by letting every element of G(F_p)
    act explicitly. Intended for n = 2 and p in {2, 3}; cost grows like p^{n+1}
    automorphisms on an n+1 level tower.

    The action is sigma(alpha) = alpha + x and sigma(gamma) = A(-x)(gamma + y),
    which is forced by F(gamma) - gamma = A(-alpha^p) b. Neither a nor b need
    to be reduced: each root is adjoined through its reduced class and a witness.
    """
    n = len(b)
    K = LaurentField(a.field) if cap is None else LaurentField(a.field, cap)
    p = K.p
    if not 2 <= n <= p:
        raise InvalidOrder(f"order n={n} must satisfy 2 <= n <= p={p}")
    L, wa = stack_layer(K, a)
    cs = c_vector(a, b, L, L.gamma() + L.element(wa))
    layers = [L]
    witnesses = []
    for cj in cs:
        layer, w = stack_layer(layers[-1], cj)
        layers.append(layer)
        witnesses.append(w)
    top = layers[-1]

    def automorphism(x: int, y: tuple[int, ...]):
        maps = [_lift_map(L, lambda f: f, L.gamma() + x)]
        # gamma_j (original root) inside layer j+1 is its generator plus the witness
        for j in range(n):
            layer = layers[j + 1]
            img = layer.element(0)
            for i in range(j + 1):
                coef = binom_poly(-x, j - i, p) % p
                if coef:
                    gi = layers[i + 1].gamma() + layers[i + 1].element(witnesses[i]) + y[i]
                    img = img + layer.element(gi) * coef
            img = img - layer.element(maps[j](witnesses[j]))
            maps.append(_lift_map(layer, maps[j], img))
        return maps[-1]

    autos = []
    for x in range(p):
        for y in itertools.product(range(p), repeat=n):
            if x == 0 and not any(y):
                continue
            autos.append(automorphism(x, y))
    idx = lower_indices(top, autos)
    phi = herbrand_phi(idx)
    return sorted({phi(i - 1) for i in idx})


def psi_from_lower(indices: Sequence[int]) -> PLFunction:
    return herbrand_phi(indices).invert()
