"""The group G of block matrices [[A(x), y], [0, 1]] over rings of characteristic p.

A is the n x n nilpotent matrix with ones on the superdiagonal and
A(x) = sum_{i<p} binom(x, i) A^i is the truncated binomial exponential.

Orientation convention used throughout the package:

* matrices are stored top-down, as displayed (A(x) is unit upper-triangular);
* vectors are stored bottom-up: ``y[0]`` is y_1, the last displayed entry.

Ring elements may be anything supporting +, -, * with ints and with each
other (FqElem, LaurentSeries, LayeredElem).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Any, Sequence

from .errors import IndexOutOfRange, InvalidOrder


def _const(x: Any, c: int) -> Any:
    """The ring constant c in the ring of x."""
    return x * 0 + c


def binom_poly(x: Any, i: int, p: int) -> Any:
    """x (x-1) ... (x-i+1) / i!, for 0 <= i <= p-1."""
    if not 0 <= i < p:
        raise IndexOutOfRange(f"binomial index {i} outside [0, {p - 1}]")
    out = _const(x, 1)
    for k in range(i):
        out = out * (x - k)
    return out * pow(factorial(i), -1, p)


def binom_polys(x: Any, top: int, p: int) -> list:
    """[binom(x, 0), ..., binom(x, top)] sharing the falling products."""
    if top >= p:
        raise IndexOutOfRange(f"binomial index {top} outside [0, {p - 1}]")
    out = [_const(x, 1)]
    falling = out[0]
    for k in range(top):
        falling = falling * (x - k)
        out.append(falling * pow(factorial(k + 1), -1, p))
    return out


def mat_vec(mat: Sequence[Sequence[Any]], y: Sequence[Any]) -> list:
    """Top-down matrix times bottom-up vector, result bottom-up."""
    n = len(y)
    top_down = list(reversed(y))
    out = []
    for r in range(n):
        acc = None
        for c in range(n):
            term = mat[r][c] * top_down[c]
            acc = term if acc is None else acc + term
        out.append(acc)
    return list(reversed(out))


def mat_mul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> list[list]:
    n = len(a)
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            acc = a[r][0] * b[0][c]
            for k in range(1, n):
                acc = acc + a[r][k] * b[k][c]
            row.append(acc)
        out.append(row)
    return out


def a_apply(x: Any, y: Sequence[Any], p: int) -> list:
    """A(x) y for a bottom-up vector y without forming the matrix:
    component j is sum_{i <= j} binom(x, j - i) y_i."""
    n = len(y)
    bs = binom_polys(x, n - 1, p)
    return [sum((bs[j - i] * y[i] for i in range(1, j + 1)), bs[j] * y[0])
            for j in range(n)]


@dataclass(frozen=True)
class GElem:
    """[[A(x), y], [0, 1]] with y stored bottom-up."""

    x: Any
    y: tuple


class UnipotentGroup:
    """G for a fixed order n and characteristic p, 2 <= n <= p."""

    def __init__(self, n: int, p: int):
        if not 2 <= n <= p:
            raise InvalidOrder(f"order n={n} must satisfy 2 <= n <= p={p}")
        self.n = n
        self.p = p

    def nilpotent(self, like: Any) -> list[list]:
        n = self.n
        return [[_const(like, int(c == r + 1)) for c in range(n)] for r in range(n)]

    def bigA(self, x: Any) -> list[list]:
        """A(x), top-down: entry (r, c) is binom(x, c - r) for c >= r."""
        n = self.n
        bs = binom_polys(x, n - 1, self.p)
        zero = _const(x, 0)
        return [[bs[c - r] if c >= r else zero for c in range(n)] for r in range(n)]

    def v_map(self, x: Any) -> list:
        """v(x) = S(A, x) e_bottom, bottom-up: component j is binom(x, j)."""
        if self.n > self.p - 1:
            raise InvalidOrder(f"v is only defined for n <= p - 1 (n={self.n}, p={self.p})")
        return binom_polys(x, self.n, self.p)[1:]

    def identity(self, like: Any) -> GElem:
        return GElem(_const(like, 0), tuple(_const(like, 0) for _ in range(self.n)))

    def mul(self, u: GElem, w: GElem) -> GElem:
        ay = a_apply(u.x, w.y, self.p)
        return GElem(u.x + w.x, tuple(a + b for a, b in zip(ay, u.y)))

    def inv(self, u: GElem) -> GElem:
        ay = a_apply(-u.x, u.y, self.p)
        return GElem(-u.x, tuple(-a for a in ay))

    def commutator(self, u: GElem, w: GElem) -> GElem:
        """u w (w u)^{-1}."""
        return self.mul(self.mul(u, w), self.inv(self.mul(w, u)))

    def lcs_level(self, u: GElem) -> int:
        """Largest j with u in Z_j G (x = y_1 = ... = y_j = 0)."""
        if u.x:
            return 0
        j = 0
        while j < self.n and not u.y[j]:
            j += 1
        return j

    def to_matrix(self, u: GElem) -> list[list]:
        """Full (n+1) x (n+1) block matrix, top-down."""
        a = self.bigA(u.x)
        col = list(reversed(u.y))
        rows = [list(a[r]) + [col[r]] for r in range(self.n)]
        rows.append([_const(u.x, 0)] * self.n + [_const(u.x, 1)])
        return rows
