"""Arithmetic in odd-characteristic finite fields F_{p^n}.

Elements are stored as canonical indices: the element with polynomial-basis
coefficients ``(c_0, ..., c_{n-1})`` (constant term first) has index
``sum(c_i * p**i)``.  Every arithmetic method of :class:`FiniteField` accepts
either Python ints or integer numpy arrays of indices and broadcasts, so the
same code path serves single evaluations and whole-field tables.

:class:`FieldElement` is a thin operator-overloading wrapper for interactive
use; the analysis modules work on raw indices.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

__all__ = [
    "FiniteField",
    "FieldElement",
    "make_field",
    "smallest_irreducible",
]


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``n`` over F_p.

    Coefficients are returned constant term first, and tuples are compared in
    that order.  For ``n == 1`` the placeholder ``x - 0`` is returned.
    """
    if n == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=n):
        if low[0] == 0:
            continue
        # sympy wants the leading coefficient first
        if gf_irreducible_p([1] + list(reversed(low)), p, ZZ):
            return tuple(low) + (1,)
    raise RuntimeError(f"no irreducible polynomial of degree {n} over F_{p}")


class FiniteField:
    """The field F_{p^n} in a polynomial basis, with a precomputed chi table."""

    def __init__(self, p: int, n: int, modulus: tuple[int, ...] | None = None):
        if n < 1:
            raise ValueError(f"extension degree must be >= 1, got {n}")
        if p % 2 == 0:
            raise ValueError(f"characteristic must be odd, got {p}")
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.n = n
        self.q = p**n
        if modulus is None:
            modulus = smallest_irreducible(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if n > 1 and not gf_irreducible_p(list(reversed(modulus)), p, ZZ):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = modulus
        self.r = (self.q + 1) // 4 if self.q % 4 == 3 else None
        self._pw = [p**i for i in range(n)]
        # x^n = -(m_0 + m_1 x + ... + m_{n-1} x^{n-1})
        self._red = [(-c) % p for c in modulus[:-1]]

        self.zero = 0
        self.one = 1
        self.minus_one = p - 1
        self.two = 2 % p

        everything = np.arange(self.q, dtype=np.int64)
        chi = self.pow(everything, (self.q - 1) // 2)
        table = np.zeros(self.q, dtype=np.int8)
        table[chi == 1] = 1
        table[chi == self.minus_one] = -1
        table.setflags(write=False)
        self.chi_table = table

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, n={self.n}, modulus={self.modulus})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    def __reduce__(self):
        return (make_field_with_modulus, (self.p, self.n, self.modulus))

    # -- element conversion -------------------------------------------------

    def coeffs(self, x: int) -> tuple[int, ...]:
        x = self._check_index(x)
        return tuple((x // w) % self.p for w in self._pw)

    def index(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(coeffs)}")
        return sum((int(c) % self.p) * w for c, w in zip(coeffs, self._pw))

    def from_int(self, k: int) -> int:
        """Image of the integer ``k`` under Z -> F_p -> F_q."""
        return int(k) % self.p

    def element(self, x) -> FieldElement:
        return FieldElement(self, self.coerce(x))

    def elements(self) -> np.ndarray:
        """All q elements in canonical order (position k holds index k)."""
        return np.arange(self.q, dtype=np.int64)

    def enumerate_elements(self) -> list[FieldElement]:
        return [FieldElement(self, i) for i in range(self.q)]

    def coerce(self, x) -> int:
        if isinstance(x, FieldElement):
            if x.field != self:
                raise ValueError("element belongs to a different field")
            return x.index
        return self._check_index(x)

    def _check_index(self, x) -> int:
        x = int(x)
        if not 0 <= x < self.q:
            raise ValueError(f"index {x} outside [0, {self.q})")
        return x

    # -- arithmetic on indices -----------------------------------------------

    def _digits(self, a):
        return [(a // w) % self.p for w in self._pw]

    def _compose(self, digits):
        out = digits[0]
        for d, w in zip(digits[1:], self._pw[1:]):
            out = out + d * w
        return out

    def add(self, a, b):
        if self.n == 1:
            return (a + b) % self.p
        p = self.p
        return self._compose([(x + y) % p for x, y in zip(self._digits(a), self._digits(b))])

    def sub(self, a, b):
        if self.n == 1:
            return (a - b) % self.p
        p = self.p
        return self._compose([(x - y) % p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        if self.n == 1:
            return (-a) % self.p
        return self._compose([(-x) % self.p for x in self._digits(a)])

    def mul(self, a, b):
        p, n = self.p, self.n
        if n == 1:
            return (a * b) % p
        da, db = self._digits(a), self._digits(b)
        c = [None] * (2 * n - 1)
        for i in range(n):
            for j in range(n):
                term = da[i] * db[j]
                c[i + j] = term if c[i + j] is None else c[i + j] + term
        c = [ck % p for ck in c]
        for k in range(2 * n - 2, n - 1, -1):
            top = c[k]
            for i, m in enumerate(self._red):
                if m:
                    c[k - n + i] = (c[k - n + i] + top * m) % p
        return self._compose(c[:n])

    def pow(self, a, e: int):
        e = int(e)
        if e < 0:
            raise ValueError("negative exponent; use inv first")
        result = a * 0 + 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def square(self, a):
        return self.mul(a, a)

    # -- quadratic character -------------------------------------------------

    def chi(self, a):
        """Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise."""
        if isinstance(a, (int, np.integer)):
            return int(self.chi_table[a])
        return self.chi_table[a]

    def sign(self, s: int) -> int:
        """Embed an integer sign in {-1, 0, 1} into the field."""
        return self.from_int(s)

    def sqrt_if_square(self, a):
        """Square root with the smaller index, or None for a non-square.

        Uses ``(a^r)^2 = a * chi(a)``, so it needs q = 3 (mod 4).
        """
        if self.r is None:
            raise ValueError("sqrt_if_square requires q = 3 (mod 4)")
        a = self.coerce(a)
        if self.chi(a) == -1:
            return None
        y = self.pow(a, self.r)
        return min(y, self.neg(y))

    @functools.cached_property
    def generator(self) -> int:
        """Smallest-index primitive element."""
        if self.q == 3:
            return 2
        order = self.q - 1
        cofactors = [order // l for l in sympy.factorint(order)]
        for g in range(2, self.q):
            if all(self.pow(g, c) != 1 for c in cofactors):
                return g
        raise RuntimeError("no generator found")  # pragma: no cover

    def quadrant_sizes(self) -> tuple[int, int, int, int]:
        """Sizes of S_00, S_01, S_10, S_11 (sign pairs of chi(x), chi(x+1))."""
        x = self.elements()
        cx = self.chi_table
        cx1 = self.chi_table[self.add(x, 1)]
        return (
            int(np.sum((cx == 1) & (cx1 == 1))),
            int(np.sum((cx == 1) & (cx1 == -1))),
            int(np.sum((cx == -1) & (cx1 == 1))),
            int(np.sum((cx == -1) & (cx1 == -1))),
        )

    def quadrant_labels(self) -> np.ndarray:
        """Per-element quadrant code 0..3 for S_00, S_01, S_10, S_11; -1 at 0 and -1."""
        x = self.elements()
        cx = self.chi_table.astype(np.int64)
        cx1 = self.chi_table[self.add(x, 1)].astype(np.int64)
        label = 2 * (cx == -1) + (cx1 == -1)
        label[(cx == 0) | (cx1 == 0)] = -1
        return label


@functools.lru_cache(maxsize=64)
def make_field(p: int, n: int = 1) -> FiniteField:
    """Build F_{p^n} with the smallest-lex irreducible modulus (cached)."""
    return FiniteField(p, n)


@functools.lru_cache(maxsize=64)
def make_field_with_modulus(p: int, n: int, modulus: tuple[int, ...]) -> FiniteField:
    return FiniteField(p, n, modulus)


@dataclass(frozen=True)
class FieldElement:
    """An element of a :class:`FiniteField`, with the usual operators."""

    field: FiniteField
    index: int

    def __post_init__(self):
        object.__setattr__(self, "index", self.field._check_index(self.index))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.index)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("operands belong to different fields")
            return other.index
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, i) -> FieldElement:
        return FieldElement(self.field, int(i))

    def __add__(self, other):
        o = self._other(other)
        return self._wrap(self.field.add(self.index, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return self._wrap(self.field.sub(self.index, o))

    def __rsub__(self, other):
        o = self._other(other)
        return self._wrap(self.field.sub(o, self.index))

    def __mul__(self, other):
        o = self._other(other)
        return self._wrap(self.field.mul(self.index, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return self._wrap(self.field.div(self.index, o))

    def __neg__(self):
        return self._wrap(self.field.neg(self.index))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.index, e))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.index))

    def chi(self) -> int:
        return self.field.chi(self.index)

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        if self.field.n == 1:
            return f"{self.index} (mod {self.field.p})"
        return f"{self.coeffs} in F_{self.field.q}"
