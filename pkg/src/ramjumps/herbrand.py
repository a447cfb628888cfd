"""Exact piecewise-linear maps on [-1, oo): Herbrand psi and phi functions."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidConductor

Rational = Fraction


def rational_to_json(x: Fraction | int) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def rational_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


class PLFunction:
    """Continuous, strictly increasing, piecewise-linear function.

    ``points[0]`` is the left end of the domain; ``slopes[k]`` is the slope on
    [points[k].x, points[k+1].x] (the last one extends to infinity).
    """

    __slots__ = ("points", "slopes")

    def __init__(self, points: Sequence[tuple], slopes: Sequence):
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        sl = [Fraction(s) for s in slopes]
        if not pts or len(pts) != len(sl):
            raise ValueError("need one slope per point")
        if any(s <= 0 for s in sl):
            raise ValueError("slopes must be positive")
        for (x0, y0), (x1, y1), s in zip(pts, pts[1:], sl):
            if x1 <= x0 or y1 - y0 != s * (x1 - x0):
                raise ValueError("points are not consistent with the slopes")
        # drop points where the slope does not change
        keep_p, keep_s = [pts[0]], [sl[0]]
        for pt, s in zip(pts[1:], sl[1:]):
            if s != keep_s[-1]:
                keep_p.append(pt)
                keep_s.append(s)
        self.points = tuple(keep_p)
        self.slopes = tuple(keep_s)

    @classmethod
    def identity(cls, start=-1) -> PLFunction:
        return cls([(start, start)], [1])

    @property
    def domain_start(self) -> Fraction:
        return self.points[0][0]

    @property
    def breakpoints(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Points where the slope changes (the left end of the domain excluded)."""
        return self.points[1:]

    def _segment(self, x: Fraction) -> int:
        if x < self.domain_start:
            raise ValueError(f"{x} is below the domain start {self.domain_start}")
        k = 0
        while k + 1 < len(self.points) and self.points[k + 1][0] <= x:
            k += 1
        return k

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        k = self._segment(x)
        x0, y0 = self.points[k]
        return y0 + self.slopes[k] * (x - x0)

    def slope_right_of(self, x) -> Fraction:
        return self.slopes[self._segment(Fraction(x))]

    def compose(self, inner: PLFunction) -> PLFunction:
        """self o inner."""
        lo = inner.domain_start
        xs = {lo}
        xs.update(x for x, _ in inner.breakpoints)
        inv = inner.invert()
        xs.update(inv(y) for y, _ in self.points if y > inner(lo))
        xs = sorted(xs)
        pts = [(x, self(inner(x))) for x in xs]
        slopes = [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]
        last = xs[-1]
        slopes.append(inner.slope_right_of(last) * self.slope_right_of(inner(last)))
        return PLFunction(pts, slopes)

    def invert(self) -> PLFunction:
        return PLFunction([(y, x) for x, y in self.points], [1 / s for s in self.slopes])

    def is_convex(self) -> bool:
        return all(a <= b for a, b in zip(self.slopes, self.slopes[1:]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PLFunction):
            return NotImplemented
        return self.points == other.points and self.slopes == other.slopes

    def __hash__(self) -> int:
        return hash((self.points, self.slopes))

    def __repr__(self) -> str:
        segs = ", ".join(f"({x}, {y}) slope {s}" for (x, y), s in zip(self.points, self.slopes))
        return f"PLFunction[{segs}]"


def pl_compose(f: PLFunction, g: PLFunction) -> PLFunction:
    return f.compose(g)


def pl_invert(f: PLFunction) -> PLFunction:
    return f.invert()


def pl_eval(f: PLFunction, x) -> Fraction:
    return f(x)


def as_psi(p: int, m: int) -> PLFunction:
    """Herbrand psi of a degree-p Artin-Schreier extension with conductor m:
    x -> max(x, p x - (p - 1) m)."""
    if m <= 0 or m % p == 0:
        raise InvalidConductor(f"conductor must be positive and prime to p, got m={m}")
    return PLFunction([(-1, -1), (m, m)], [1, p])


def herbrand_phi(lower_indices: Iterable[int]) -> PLFunction:
    """phi_{G} of a totally ramified Galois extension from the lower indices
    i(sigma) = v(sigma(pi) - pi) of its non-identity elements."""
    indices = list(lower_indices)
    order = len(indices) + 1
    jumps = sorted({i - 1 for i in indices})
    pts = [(-1, -1)]
    slopes = [Fraction(1)]
    x, y = Fraction(0), Fraction(0)
    for u in jumps:
        if u < 0:
            raise ValueError("lower index below 1: extension is not totally ramified")
        # on (x, u] the group G_w is {sigma : i(sigma) - 1 >= u}
        size = 1 + sum(1 for i in indices if i - 1 >= u)
        s = Fraction(size, order)
        if u > x:
            pts.append((x, y))
            slopes.append(s)
            y += s * (u - x)
            x = Fraction(u)
    pts.append((x, y))
    slopes.append(Fraction(1, order))
    return PLFunction(pts, slopes)


def upper_jumps_from_lower(lower_indices: Iterable[int]) -> list[Fraction]:
    indices = list(lower_indices)
    phi = herbrand_phi(indices)
    return sorted({phi(i - 1) for i in indices})
