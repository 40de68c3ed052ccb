"""Function tables for the binomials x^r (1 + u chi(x)) and reference power maps."""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import FiniteField

__all__ = [
    "FunctionTable",
    "build_binomial",
    "build_power",
    "build_from_values",
    "is_permutation",
    "predict_permutation",
    "special_u",
]


@dataclass(frozen=True, eq=False)
class FunctionTable:
    """A map F_q -> F_q stored as its output column in canonical order."""

    field: FiniteField
    outputs: np.ndarray
    label: str = ""
    params: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        out = np.asarray(self.outputs, dtype=np.int64)
        if out.shape != (self.field.q,):
            raise ValueError(f"expected {self.field.q} outputs, got shape {out.shape}")
        if out.size and (out.min() < 0 or out.max() >= self.field.q):
            raise ValueError("outputs must be canonical indices")
        out.setflags(write=False)
        object.__setattr__(self, "outputs", out)

    def __call__(self, x):
        return self.outputs[x]

    def __len__(self) -> int:
        return self.field.q


def _resolve_r(field: FiniteField, r: int | None) -> int:
    if r is None:
        if field.r is None:
            raise ValueError("default exponent (q+1)/4 needs q = 3 (mod 4)")
        return field.r
    if r < 1:
        raise ValueError("exponent must be positive")
    return int(r)


def build_binomial(field: FiniteField, u=1, r: int | None = None) -> FunctionTable:
    """Table of F_{r,u}(x) = x^r (1 + u chi(x)); r defaults to (q+1)/4."""
    r = _resolve_r(field, r)
    u = field.coerce(u)
    x = field.elements()
    xr = field.pow(x, r)
    # factor 1 + u*chi(x) for chi = 0, 1, -1
    factors = np.array([1, field.add(1, u), field.sub(1, u)], dtype=np.int64)
    out = field.mul(xr, factors[field.chi_table])
    label = f"x^{r}" if u == 0 else f"x^{r}(1 + u chi(x)), u={u}"
    return FunctionTable(field, out, label, {"kind": "binomial", "r": r, "u": u})


def build_power(field: FiniteField, d: int) -> FunctionTable:
    if d < 1:
        raise ValueError("exponent must be positive")
    out = field.pow(field.elements(), d)
    return FunctionTable(field, out, f"x^{d}", {"kind": "power", "d": d})


def build_from_values(field: FiniteField, values, label: str = "custom") -> FunctionTable:
    return FunctionTable(field, np.asarray(values), label, {"kind": "custom"})


def is_permutation(table: FunctionTable) -> bool:
    counts = np.bincount(table.outputs, minlength=table.field.q)
    return bool(np.all(counts == 1))


def predict_permutation(field: FiniteField, u, r: int | None = None) -> bool:
    """Permutation test for x^r h(x^{(q-1)/2}) with h(t) = 1 + u t.

    F is a permutation iff gcd(r, (q-1)/2) = 1 and
    chi(1+u) != (-1)^r chi(1-u).  Only defined for u != +-1, where
    one of the two values of g on {1, -1} would be zero.
    """
    r = _resolve_r(field, r)
    u = field.coerce(u)
    if u in (field.one, field.minus_one):
        raise ValueError("permutation criterion is not applicable for u = +-1")
    if math.gcd(r, (field.q - 1) // 2) != 1:
        return False
    sign = -1 if r % 2 else 1
    return field.chi(field.add(1, u)) != sign * field.chi(field.sub(1, u))


def special_u(field: FiniteField) -> tuple[int, int]:
    """The pair u = +-(1 - 2^{r+1}) / 3 used for q = 3 (mod 8), p > 3."""
    if field.r is None or field.p == 3:
        raise ValueError("special u needs q = 3 (mod 4) and p > 3")
    num = field.sub(1, field.pow(field.two, field.r + 1))
    u = field.div(num, field.from_int(3))
    return u, field.neg(u)
