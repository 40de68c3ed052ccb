"""Quadratic character sums over F_q: direct evaluation, closed forms,
Weil-bound checks, Gamma, and a suite of exact identities."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FiniteField

__all__ = [
    "Poly",
    "IdentityResult",
    "char_sum",
    "chi_sum",
    "quad_char_sum_closed",
    "weil_check",
    "gamma",
    "gamma_decomposition",
    "gamma_bound_holds",
    "identity_suite",
]


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial over a field, coefficients as indices, constant first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(int(v) for v in self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_ints(cls, field: FiniteField, values) -> Poly:
        """Nonnegative entries are canonical indices; negative ones are integers mod p."""
        out = []
        for v in values:
            v = int(v)
            out.append(field.from_int(v) if v < 0 else field.coerce(v))
        return cls(tuple(out))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, field: FiniteField, x):
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = field.add(field.mul(acc, x), c)
        return acc


@dataclass(frozen=True)
class IdentityResult:
    name: str
    q: int
    computed: int | None
    expected: int | None
    applicable: bool
    match: bool

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "q": self.q,
            "computed": self.computed,
            "expected": self.expected,
            "applicable": self.applicable,
            "match": self.match,
        }


def chi_sum(field: FiniteField, values) -> int:
    return int(field.chi_table[np.asarray(values)].sum(dtype=np.int64))


def char_sum(field: FiniteField, poly: Poly) -> int:
    """sum over x in F_q of chi(poly(x)), with chi(0) = 0."""
    return chi_sum(field, poly(field, field.elements()))


def quad_char_sum_closed(field: FiniteField, a2, a1, a0) -> int:
    """Closed form of sum chi(a2 x^2 + a1 x + a0): -chi(a2) if d != 0 else (q-1) chi(a2)."""
    f = field
    a2, a1, a0 = f.coerce(a2), f.coerce(a1), f.coerce(a0)
    if a2 == 0:
        raise ValueError("leading coefficient must be nonzero")
    d = f.sub(f.square(a1), f.mul(f.from_int(4), f.mul(a0, a2)))
    return -f.chi(a2) if d != 0 else (f.q - 1) * f.chi(a2)


def weil_check(field: FiniteField, poly: Poly, d: int) -> bool:
    """|sum chi(poly(x))| <= (d - 1) sqrt(q), compared in integers.

    ``d`` is the number of distinct roots of ``poly`` in its splitting field.
    Constants trivially pass (there is nothing to bound).
    """
    if poly.degree <= 0:
        return True
    s = char_sum(field, poly)
    return s * s <= (d - 1) ** 2 * field.q


def _require_7mod8(field: FiniteField) -> None:
    if field.q % 8 != 7:
        raise ValueError("Gamma is defined here for q = 7 (mod 8)")


def gamma(field: FiniteField) -> int:
    """sum of chi(x(x^2 - 2x - 1)) over x with chi(x) != chi(x^4 - 1)."""
    _require_7mod8(field)
    f = field
    x = f.elements()
    chi = f.chi_table
    x4m1 = f.sub(f.pow(x, 4), 1)
    cubic = f.mul(x, f.sub(f.sub(f.square(x), f.mul(f.two, x)), 1))
    keep = chi[x] != chi[x4m1]
    return int(chi[cubic][keep].sum(dtype=np.int64))


def gamma_decomposition(field: FiniteField) -> tuple[int, int, int]:
    """Gamma through two unrestricted sums.

    With S1 = sum chi(x(x^2-2x-1)) and S2 = sum chi(x^4-1) chi(x^2+2x-1),
    Gamma = (S1 - S2 - 1) / 2.  Returns ``(S1, S2, Gamma)``.
    """
    _require_7mod8(field)
    f = field
    x = f.elements()
    chi = f.chi_table.astype(np.int64)
    s1 = chi_sum(f, f.mul(x, f.sub(f.sub(f.square(x), f.mul(f.two, x)), 1)))
    x4m1 = f.sub(f.pow(x, 4), 1)
    quad = f.sub(f.add(f.square(x), f.mul(f.two, x)), 1)
    s2 = int((chi[x4m1] * chi[quad]).sum())
    twice = s1 - s2 - 1
    if twice % 2:
        raise ArithmeticError("odd numerator in Gamma decomposition")
    return s1, s2, twice // 2


def gamma_bound_holds(field: FiniteField, value: int | None = None) -> bool:
    """|Gamma| <= 7 sqrt(q) + 1, checked exactly in integers."""
    g = gamma(field) if value is None else value
    slack = abs(g) - 1
    return slack <= 0 or slack * slack <= 49 * field.q


def _result(name, f, computed, expected, applicable) -> IdentityResult:
    if not applicable:
        return IdentityResult(name, f.q, None, expected, False, False)
    return IdentityResult(name, f.q, int(computed), expected, True, computed == expected)


def identity_suite(field: FiniteField, seed: int = 20240601, samples: int = 16) -> list[IdentityResult]:
    """Evaluate every identity; entries outside their residue class are marked inapplicable."""
    f = field
    q = f.q
    x = f.elements()
    chi = f.chi_table.astype(np.int64)
    c = f.from_int
    x2 = f.square(x)
    x4 = f.square(x2)
    neg1 = f.chi(f.minus_one) == -1
    neg2 = f.chi(f.neg(f.two)) == -1
    q34 = q % 4 == 3
    q78 = q % 8 == 7
    out = []

    out.append(_result("x^4-1", f, chi_sum(f, f.sub(x4, 1)), -1, q34))
    out.append(_result("x^4-16", f, chi_sum(f, f.sub(x4, c(16))), -1, q34))
    out.append(_result("x(x^2+4)", f, chi_sum(f, f.mul(x, f.add(x2, c(4)))), 0, neg1))
    out.append(_result("x(x^2-4)", f, chi_sum(f, f.mul(x, f.sub(x2, c(4)))), 0, neg1))

    rng = np.random.default_rng(seed)
    g = f.generator
    picks = [1, f.two, g, f.square(g)]
    if q > 1:
        picks += [int(v) for v in rng.integers(1, q, size=samples)]
    inv8 = f.inv(c(8))
    for a in dict.fromkeys(picks):
        quad = f.add(f.add(x2, f.mul(a, x)), f.mul(f.square(a), inv8))
        out.append(_result(f"x(x^2+ax+a^2/8) a={a}", f, chi_sum(f, f.mul(x, quad)), 0, neg2))

    quartic = f.add(f.sub(x4, f.mul(c(6), x2)), 1)
    val = int((chi[f.add(x2, 1)] * chi[quartic]).sum())
    out.append(_result("chi(x^2+1)chi(x^4-6x^2+1)", f, val, -1, neg2))

    # sums restricted to chi(x^2+1) = 1, and the x -> x/2 variants
    twisted = int((chi[f.sub(x4, 1)] * chi[f.sub(f.sub(x2, f.mul(f.two, x)), 1)]).sum())
    half = (-1 + twisted) // 2 if (-1 + twisted) % 2 == 0 else None
    if q78:
        r = f.r
        on = chi[f.add(x2, 1)] == 1
        core = chi[f.add(1, f.pow(f.add(x2, 1), r))]
        s_plain = int(core[on].sum())
        s_minus = int((chi[f.sub(x2, 1)] * core)[on].sum())
        s_lin = int((chi[f.add(x2, x)] * core)[on].sum())
        on4 = chi[f.add(x2, c(4))] == 1
        core4 = chi[f.add(f.two, f.pow(f.add(x2, c(4)), r))]
        t_plain = int(core4[on4].sum())
        t_minus = int((chi[f.sub(x2, c(4))] * core4)[on4].sum())
        t_lin = int((chi[f.add(x2, f.mul(f.two, x))] * core4)[on4].sum())
    else:
        s_plain = s_minus = s_lin = t_plain = t_minus = t_lin = None
    out.append(_result("S:chi(1+(x^2+1)^r)", f, s_plain, -1, q78))
    out.append(_result("S:chi(x^2-1)chi(1+(x^2+1)^r)", f, s_minus, -1, q78))
    out.append(_result("S:chi(x^2+x)chi(1+(x^2+1)^r)", f, s_lin, half, q78))
    out.append(_result("S4:chi(2+(x^2+4)^r)", f, t_plain, -1, q78))
    out.append(_result("S4:chi(x^2-4)chi(2+(x^2+4)^r)", f, t_minus, -1, q78))
    out.append(_result("S4:chi(x^2+2x)chi(2+(x^2+4)^r)", f, t_lin, half, q78))

    sizes = f.quadrant_sizes()
    if q34:
        expect = ((q - 3) // 4, (q + 1) // 4, (q - 3) // 4, (q - 3) // 4)
    else:
        expect = ((q - 5) // 4, (q - 1) // 4, (q - 1) // 4, (q - 1) // 4)
    for name, got, want in zip(("#S00", "#S01", "#S10", "#S11"), sizes, expect):
        out.append(_result(name, f, got, want, True))
    return out
