"""Finite residue fields F_{p^d}.

Elements are stored as coordinate tuples in the power basis 1, g, ..., g^{d-1}
where g is a root of the user-supplied monic irreducible modulus.
Frobenius is F_p-linear, so it and its inverse are precomputed as matrices;
p-th roots then cost one matrix-vector product.
"""
from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from .errors import DivisionByZero, FieldMismatch

MAX_P = 13
MAX_D = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, int(n ** 0.5) + 1))


# --- dense polynomials over F_p, ascending coefficient lists -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead % p
        quot[shift] = coef
        for k, bc in enumerate(b):
            a[shift + k] = (a[shift + k] - coef * bc) % p
        _trim(a)
    return quot, a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
    return a


def _poly_powmod(base: list[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _poly_divmod(_poly_mul(result, base, p), mod, p)[1]
        base = _poly_divmod(_poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    f of degree d is reducible iff it shares a factor with x^{p^k} - x for
    some k <= d/2.
    """
    f = _trim([c % p for c in modulus])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    xpk = [0, 1]
    for _ in range(d // 2):
        xpk = _poly_powmod(xpk, p, f, p)
        diff = list(xpk) + [0] * max(0, 2 - len(xpk))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(f, _trim(diff), p)) > 1:
            return False
    return True


def first_irreducible(p: int, d: int) -> list[int]:
    """Lexicographically first monic irreducible of degree d over F_p."""
    for tail in itertools.product(range(p), repeat=d):
        cand = list(reversed(tail)) + [1]
        if is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {d} over F_{p}")


class FqField:
    """The finite field F_p[g]/(modulus(g))."""

    def __init__(self, p: int, d: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if p > MAX_P or not 1 <= d <= MAX_D:
            raise ValueError(f"supported range is p <= {MAX_P}, 1 <= d <= {MAX_D}")
        if modulus is None:
            modulus = first_irreducible(p, d)
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic with d + 1 ascending coefficients")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.d = d
        self.modulus = tuple(modulus)
        self.order = p ** d
        # g^k mod modulus for k = d .. 2d-2, as coordinate tuples
        self._high = []
        for k in range(d, 2 * d - 1):
            r = _poly_divmod([0] * k + [1], modulus, p)[1]
            self._high.append(tuple(r + [0] * (d - len(r))))
        self.zero = FqElem(self, (0,) * d)
        self.one = self(1)
        frob_cols = [(self.gen() ** p if d > 1 else self.one) ** k for k in range(d)]
        self._frob = tuple(c.coords for c in frob_cols)
        inv_cols = [self._basis(k) for k in range(d)]
        for _ in range(d - 1):
            inv_cols = [self._apply_frob(c) for c in inv_cols]
        self._inv_frob = tuple(inv_cols)

    def _basis(self, k: int) -> tuple[int, ...]:
        return tuple(int(i == k) for i in range(self.d))

    def _linear(self, cols: Sequence[tuple[int, ...]], coords: tuple[int, ...]) -> tuple[int, ...]:
        p, out = self.p, [0] * self.d
        for x, col in zip(coords, cols):
            if x:
                for i, c in enumerate(col):
                    out[i] += x * c
        return tuple(v % p for v in out)

    def _apply_frob(self, coords: tuple[int, ...]) -> tuple[int, ...]:
        return self._linear(self._frob, coords)

    def __call__(self, value: int | Sequence[int] | FqElem) -> FqElem:
        if isinstance(value, FqElem):
            if value.field != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FqElem(self, (value % self.p,) + (0,) * (self.d - 1))
        coords = tuple(int(c) % self.p for c in value)
        if len(coords) != self.d:
            raise ValueError(f"expected {self.d} coordinates, got {len(coords)}")
        return FqElem(self, coords)

    def gen(self) -> FqElem:
        if self.d == 1:
            return self(-self.modulus[0])
        return FqElem(self, self._basis(1))

    def elements(self) -> Iterator[FqElem]:
        for coords in itertools.product(range(self.p), repeat=self.d):
            yield FqElem(self, tuple(reversed(coords)))

    def random(self, rng: random.Random, nonzero: bool = False) -> FqElem:
        while True:
            x = FqElem(self, tuple(rng.randrange(self.p) for _ in range(self.d)))
            if x or not nonzero:
                return x

    def solve_artin_schreier(self, r: FqElem) -> FqElem | None:
        """Some y with y^p - y = r, or None when r is not in the image."""
        p, d = self.p, self.d
        # columns of Frob - I, augmented with r, row-reduced mod p
        rows = [[(self._frob[c][i] - (i == c)) % p for c in range(d)] + [r.coords[i]]
                for i in range(d)]
        pivots = []
        row = 0
        for col in range(d):
            piv = next((k for k in range(row, d) if rows[k][col]), None)
            if piv is None:
                continue
            rows[row], rows[piv] = rows[piv], rows[row]
            inv = pow(rows[row][col], p - 2, p)
            rows[row] = [v * inv % p for v in rows[row]]
            for k in range(d):
                if k != row and rows[k][col]:
                    f = rows[k][col]
                    rows[k] = [(a - f * b) % p for a, b in zip(rows[k], rows[row])]
            pivots.append(col)
            row += 1
        if any(rows[k][d] for k in range(row, d)):
            return None
        sol = [0] * d
        for k, col in enumerate(pivots):
            sol[col] = rows[k][d]
        return FqElem(self, tuple(sol))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FqField)
                and (self.p, self.modulus) == (other.p, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        return f"FqField(p={self.p}, d={self.d}, modulus={list(self.modulus)})"

    def to_json(self) -> dict:
        return {"p": self.p, "d": self.d, "modulus": list(self.modulus)}


class FqElem:
    __slots__ = ("field", "coords")

    def __init__(self, field: FqField, coords: tuple[int, ...]):
        self.field = field
        self.coords = coords

    def _coerce(self, other) -> FqElem | None:
        if isinstance(other, FqElem):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("operands live in different fields")
            return other
        if isinstance(other, int):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> FqElem:
        p = self.field.p
        return FqElem(self.field, tuple(-a % p for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FqElem(self.field, tuple((a - b) % p for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return FqElem(self.field, tuple(a * other % p for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        field = self.field
        p, d = field.p, field.d
        if d == 1:
            return FqElem(field, (self.coords[0] * o.coords[0] % p,))
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    prod[i + j] += a * b
        out = prod[:d]
        for k, h in enumerate(prod[d:]):
            if h:
                for i, r in enumerate(field._high[k]):
                    out[i] += h * r
        return FqElem(field, tuple(v % p for v in out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FqElem:
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FqElem:
        if not self:
            raise DivisionByZero("inverse of zero in F_q")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def frobenius(self) -> FqElem:
        return FqElem(self.field, self.field._apply_frob(self.coords))

    def pth_root(self) -> FqElem:
        return FqElem(self.field, self.field._linear(self.field._inv_frob, self.coords))

    def trace(self) -> int:
        """Absolute trace to F_p, returned as an integer in [0, p)."""
        total, x = self, self
        for _ in range(self.field.d - 1):
            x = x.frobenius()
            total = total + x
        return total.coords[0]

    def in_prime_field(self) -> bool:
        return not any(self.coords[1:])

    def __int__(self) -> int:
        if not self.in_prime_field():
            raise ValueError(f"{self!r} is not in the prime field")
        return self.coords[0]

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.coords == self.field(other).coords
        if isinstance(other, FqElem):
            return self.coords == other.coords and self.field == other.field
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        if self.field.d == 1:
            return str(self.coords[0])
        terms = []
        for k, c in enumerate(self.coords):
            if c:
                mono = "" if k == 0 else ("g" if k == 1 else f"g^{k}")
                terms.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(terms) if terms else "0"
