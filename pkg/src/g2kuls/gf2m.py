"""Exact arithmetic in GF(2^m) in the polynomial basis.

Elements are carried as Python ints (bit i = coefficient of x^i).  A
:class:`FieldElem` wrapper gives operator syntax for scalar work; the
matrix code in :mod:`g2kuls.linalg` works directly on numpy arrays of the
integer encodings using the tables cached on the :class:`FieldCtx`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

import numpy as np

MAX_DEGREE = 16


class FieldError(ValueError):
    """Invalid field parameters or an operation with no answer (e.g. 1/0)."""


def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2 over GF(2)."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if _poly_mod(poly, f) == 0:
                return False
    return True


def _lowest_irreducible(m: int) -> int:
    for poly in range(1 << m, 1 << (m + 1)):
        if is_irreducible(poly):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {m}")  # pragma: no cover


@dataclass(frozen=True)
class FieldCtx:
    """GF(2^m) = GF(2)[x]/(modulus)."""

    m: int
    modulus: int

    def __repr__(self) -> str:
        return f"GF(2^{self.m}) mod {self.modulus:#x}"

    @property
    def order(self) -> int:
        return 1 << self.m

    @property
    def coefficients(self) -> tuple[int, ...]:
        """Modulus coefficients, constant term first."""
        return tuple((self.modulus >> i) & 1 for i in range(self.m + 1))

    @property
    def dtype(self):
        return np.uint8 if self.m <= 8 else np.uint16

    # -- integer-level arithmetic -------------------------------------

    def reduce(self, a: int) -> int:
        return _poly_mod(a, self.modulus)

    def mul(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.m:
                a ^= self.modulus
        return r

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a = self.inv(a)
            n = -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no inverse")
        return self.pow(a, self.order - 2)

    def sqrt(self, a: int) -> int:
        # squaring is the Frobenius automorphism; its inverse is a -> a^(2^(m-1))
        for _ in range(self.m - 1):
            a = self.mul(a, a)
        return a

    def element_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.order - 1
        order = n
        for p in _prime_factors(n):
            while order % p == 0 and self.pow(a, order // p) == 1:
                order //= p
        return order

    def element_of_order(self, n: int) -> int:
        if n < 1 or (self.order - 1) % n:
            raise FieldError(
                f"no element of order {n} in GF(2^{self.m}): {n} does not divide {self.order - 1}"
            )
        for a in range(1, self.order):
            if self.element_order(a) == n:
                return a
        raise AssertionError("cyclic group has an element of every dividing order")  # pragma: no cover

    # -- wrappers -----------------------------------------------------

    def __call__(self, value: int) -> "FieldElem":
        if not 0 <= value < self.order:
            raise FieldError(f"{value} is not a canonical element of {self!r}")
        return FieldElem(self, value)

    def elements(self) -> Iterator["FieldElem"]:
        """All elements in lexicographic (integer) order."""
        for v in range(self.order):
            yield FieldElem(self, v)

    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    # -- numpy tables -------------------------------------------------

    @cached_property
    def exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        """Tables for a fixed primitive element g: exp[i] = g^i, log[g^i] = i."""
        n = self.order - 1
        g = self.element_of_order(n)
        exp = np.zeros(2 * n + 1, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        x = 1
        for i in range(2 * n + 1):
            exp[i] = x
            if i < n:
                log[x] = i
            x = self.mul(x, g)
        return exp, log

    @cached_property
    def mul_table(self) -> np.ndarray:
        if self.m > 8:
            raise FieldError("full multiplication table only built for m <= 8")
        exp, log = self.exp_log
        a = np.arange(self.order)
        t = exp[log[a][:, None] + log[a][None, :]].astype(self.dtype)
        t[0, :] = 0
        t[:, 0] = 0
        return t

    @cached_property
    def inv_table(self) -> np.ndarray:
        t = np.zeros(self.order, dtype=self.dtype)
        for a in range(1, self.order):
            t[a] = self.inv(a)
        return t

    def mul_arrays(self, a: np.ndarray, b) -> np.ndarray:
        """Elementwise product of integer-encoded arrays (broadcasting)."""
        if self.m <= 8:
            return self.mul_table[a, b]
        exp, log = self.exp_log
        a = np.asarray(a)
        b = np.asarray(b)
        out = exp[log[a] + log[b]].astype(self.dtype)
        return np.where((a == 0) | (b == 0), 0, out).astype(self.dtype)

    # -- serialization ------------------------------------------------

    def to_hex(self, value: int) -> str:
        """Coefficient bits packed least-significant coefficient first, as hex."""
        return f"{value:0{max(1, (self.m + 3) // 4)}x}"

    def from_hex(self, text: str) -> "FieldElem":
        return self(int(text, 16))


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def field_make(m: int) -> FieldCtx:
    """GF(2^m) with the numerically least irreducible modulus of degree m."""
    if not isinstance(m, int) or not 1 <= m <= MAX_DEGREE:
        raise FieldError(f"extension degree must be in 1..{MAX_DEGREE}, got {m!r}")
    return FieldCtx(m, _lowest_irreducible(m))


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.ctx.m))

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise FieldError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other & 1  # integers map through the prime field
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElem(self.ctx, self.value ^ v)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElem(self.ctx, self.ctx.mul(self.value, v))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return FieldElem(self.ctx, self.ctx.pow(self.value, n))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElem(self.ctx, self.ctx.mul(self.value, self.ctx.inv(v)))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"<{self.value:#x} in GF(2^{self.ctx.m})>"

    def hex(self) -> str:
        return self.ctx.to_hex(self.value)


def sqrt(a: FieldElem) -> FieldElem:
    """The unique square root; total because squaring is bijective in char 2."""
    return FieldElem(a.ctx, a.ctx.sqrt(a.value))


def element_order(a: FieldElem) -> int:
    return a.ctx.element_order(a.value)


def element_of_order(ctx: FieldCtx, n: int) -> FieldElem:
    """First element (in integer order) of multiplicative order n."""
    return FieldElem(ctx, ctx.element_of_order(n))
