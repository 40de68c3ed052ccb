"""Boomerang analysis for possibly non-bijective maps.

beta(a, b) counts ordered pairs (x, y) with F(x) - F(y) = b and
F(x + a) - F(y + a) = b.  Rows are computed in one pass over all pairs,
bucketing by the common difference.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .diff import IdentityViolation, _reduction_targets
from .field import FiniteField
from .funcs import FunctionTable, build_binomial

__all__ = [
    "BoomSpectrum",
    "BoomQuadrantCounts",
    "beta",
    "bct_row",
    "bct",
    "boomerang_uniformity",
    "verify_boom_row_reduction",
    "boom_spectrum",
    "boom_quadrant_table",
    "boom_quadrant_counts",
    "predict_boom_pair_arrays",
    "predict_boom_pair_counts",
    "predict_boom_spectrum",
]

QUAD_PAIRS = tuple("".join(t) for t in itertools.product("01", repeat=4))
_CHUNK = 1 << 22
# full pair-difference matrix is kept in memory up to this q
_DENSE_Q = 2048


@dataclass(frozen=True)
class BoomSpectrum:
    """nu_i = #{b != 0 : beta(1, b) = i}, zero entries omitted."""

    counts: dict[int, int]

    @classmethod
    def from_row(cls, row: np.ndarray) -> BoomSpectrum:
        values, freq = np.unique(np.asarray(row)[1:], return_counts=True)
        return cls({int(v): int(c) for v, c in zip(values, freq)})

    @property
    def uniformity(self) -> int:
        return max(self.counts, default=0)

    def check(self, q: int) -> None:
        total = sum(self.counts.values())
        if total != q - 1:
            raise IdentityViolation(f"sum nu_i = {total}, expected {q - 1}")

    def __str__(self) -> str:
        inner = ", ".join(f"v{i}={c}" for i, c in sorted(self.counts.items()))
        return "{" + inner + "}"


def _x_chunks(q: int):
    step = max(1, _CHUNK // q)
    for start in range(0, q, step):
        yield np.arange(start, min(q, start + step), dtype=np.int64)


def bct_row(table: FunctionTable, a) -> np.ndarray:
    """beta(a, b) for every b (entry 0 is the b = 0 diagnostic column)."""
    f = table.field
    a = f.coerce(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    out = table.outputs
    shifted = out[f.add(f.elements(), a)]
    row = np.zeros(f.q, dtype=np.int64)
    for xs in _x_chunks(f.q):
        d1 = f.sub(out[xs][:, None], out[None, :])
        d2 = f.sub(shifted[xs][:, None], shifted[None, :])
        row += np.bincount(d1[d1 == d2], minlength=f.q)
    return row


def beta(table: FunctionTable, a, b) -> int:
    return int(bct_row(table, a)[table.field.coerce(b)])


def bct(table: FunctionTable) -> np.ndarray:
    """Full table indexed [a, b]; row a = 0 is left at zero."""
    f = table.field
    q = f.q
    res = np.zeros((q, q), dtype=np.int64)
    if q > _DENSE_Q:
        for a in range(1, q):
            res[a] = bct_row(table, a)
        return res
    out = table.outputs
    x = f.elements()
    d1 = f.sub(out[:, None], out[None, :])
    for a in range(1, q):
        shift = f.add(x, a)
        d2 = d1[np.ix_(shift, shift)]
        res[a] = np.bincount(d1[d1 == d2], minlength=q)
    return res


def boomerang_uniformity(table: FunctionTable) -> int:
    return int(bct(table)[1:, 1:].max())


def verify_boom_row_reduction(field: FiniteField, u, a, r: int | None = None) -> bool:
    """Check beta(a, b) == beta(1, g_a(b)) for every b.

    g_a(b) = b / a^r when a is a square, b / ((-1)^r a^r) otherwise.
    """
    table = build_binomial(field, u, r)
    a = field.coerce(a)
    row_a = bct_row(table, a)
    row_1 = bct_row(table, 1)
    target = _reduction_targets(field, table.params["r"], a, True)
    return bool(np.array_equal(row_a, row_1[target]))


def boom_spectrum(table: FunctionTable) -> BoomSpectrum:
    spec = BoomSpectrum.from_row(bct_row(table, 1))
    spec.check(table.field.q)
    return spec


# -- quadrant pairs (u = 1) ---------------------------------------------------


@dataclass(frozen=True)
class BoomQuadrantCounts:
    b: int
    counts: dict[str, int]
    boundary: int

    @property
    def eq23_sum(self) -> int:
        """B_0001 + B_0010 + B_0100 + B_1000."""
        return sum(self.counts[k] for k in ("0001", "0010", "0100", "1000"))

    @property
    def total(self) -> int:
        return sum(self.counts.values()) + self.boundary


def boom_quadrant_table(field: FiniteField, u=1):
    """Classify every solution pair of the boomerang system at a = 1.

    Returns ``(counts, boundary)``: ``counts[b, 4*i + j]`` is the number of
    pairs with x in quadrant i and y in quadrant j (codes as in
    :mod:`binomspec.diff`), ``boundary[b]`` counts pairs with x or y in {0, -1}.
    """
    f = field
    if f.coerce(u) != f.one:
        raise ValueError("quadrant-pair analysis is defined for u = 1")
    table = build_binomial(f, 1)
    q = f.q
    out = table.outputs
    shifted = out[f.add(f.elements(), 1)]
    label = f.quadrant_labels()
    counts = np.zeros(q * 16, dtype=np.int64)
    boundary = np.zeros(q, dtype=np.int64)
    for xs in _x_chunks(q):
        d1 = f.sub(out[xs][:, None], out[None, :])
        d2 = f.sub(shifted[xs][:, None], shifted[None, :])
        hit = d1 == d2
        lx = np.broadcast_to(label[xs][:, None], d1.shape)
        ly = np.broadcast_to(label[None, :], d1.shape)
        edge = hit & ((lx < 0) | (ly < 0))
        inner = hit & ~((lx < 0) | (ly < 0))
        boundary += np.bincount(d1[edge], minlength=q)
        counts += np.bincount(d1[inner] * 16 + 4 * lx[inner] + ly[inner], minlength=16 * q)
    return counts.reshape(q, 16), boundary


def boom_quadrant_counts(field: FiniteField, b, u=1) -> BoomQuadrantCounts:
    b = field.coerce(b)
    if b == 0:
        raise ValueError("b must be nonzero")
    counts, boundary = boom_quadrant_table(field, u)
    return BoomQuadrantCounts(
        b, {k: int(counts[b, i]) for i, k in enumerate(QUAD_PAIRS)}, int(boundary[b])
    )


def _require_7mod8(field: FiniteField) -> None:
    if field.q % 8 != 7:
        raise ValueError("pair-count prediction needs q = 7 (mod 8)")


def predict_boom_pair_arrays(field: FiniteField, b: np.ndarray):
    """(c01, c10) arrays: B_0001 + B_0100 and B_0010 + B_1000 from characters."""
    _require_7mod8(field)
    f = field
    chi = f.chi_table
    b = np.asarray(b, dtype=np.int64)
    four = f.from_int(4)
    b2 = f.square(b)
    c01 = (chi[f.sub(b2, four)] == 1) & (chi[f.add(b2, f.mul(f.two, b))] == -1)
    p4 = f.add(b2, four)
    c10 = (chi[p4] == 1) & (chi[f.add(f.two, f.pow(p4, f.r))] == 1)
    return c01.astype(np.int64), c10.astype(np.int64)


def predict_boom_pair_counts(field: FiniteField, b) -> tuple[int, int]:
    b = field.coerce(b)
    if b == 0:
        raise ValueError("b must be nonzero")
    c01, c10 = predict_boom_pair_arrays(field, np.array([b]))
    return int(c01[0]), int(c10[0])


def predict_boom_spectrum(field: FiniteField, gamma_value: int | None = None) -> BoomSpectrum:
    """Closed-form boomerang spectrum of F_{r,+-1}.

    All zero for q = 3 (mod 8); for q = 7 (mod 8) parametrised by the
    restricted character sum Gamma (computed when not supplied).
    """
    q = field.q
    if q % 4 != 3:
        raise ValueError("closed form needs q = 3 (mod 4)")
    if q % 8 == 3:
        return BoomSpectrum({0: q - 1})
    if gamma_value is None:
        from .charsum import gamma

        gamma_value = gamma(field)
    g = gamma_value
    nu0, r0 = divmod(9 * (q + 1) + 4 * g, 16)
    nu1, r1 = divmod(3 * q - 13 - 4 * g, 8)
    nu2, r2 = divmod(q + 1 + 4 * g, 16)
    if r0 or r1 or r2:
        raise IdentityViolation(f"Gamma = {g} gives non-integral spectrum for q = {q}")
    return BoomSpectrum({i: c for i, c in ((0, nu0), (1, nu1), (2, nu2)) if c})
