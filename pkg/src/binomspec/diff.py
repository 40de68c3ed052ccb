"""Differential analysis: DDT entries, spectra, locality, quadrant counts.

Quadrants partition F_q minus {0, -1} by the sign pair (chi(x), chi(x+1)):
code 0 = S_00 (+,+), 1 = S_01 (+,-), 2 = S_10 (-,+), 3 = S_11 (-,-).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import FiniteField
from .funcs import FunctionTable, build_binomial

__all__ = [
    "IdentityViolation",
    "DiffSpectrum",
    "QuadrantCounts",
    "QuadrantPrediction",
    "delta",
    "ddt_row",
    "ddt",
    "differential_uniformity",
    "verify_row_reduction",
    "diff_spectrum",
    "classify_locality",
    "quadrant_table",
    "quadrant_counts",
    "predict_quadrants_u1",
    "predict_quadrants_general",
    "predict_quadrant_arrays",
    "check_witnesses",
    "predict_diff_spectrum_u1",
]

QUADRANTS = ("00", "01", "10", "11")
_CHUNK = 1 << 22


class IdentityViolation(ArithmeticError):
    """A spectrum failed its counting identity; indicates an arithmetic bug."""


@dataclass(frozen=True)
class DiffSpectrum:
    """omega_i = #{b : delta(1, b) = i}, zero entries omitted."""

    counts: dict[int, int]

    @classmethod
    def from_row(cls, row: np.ndarray) -> DiffSpectrum:
        values, freq = np.unique(np.asarray(row), return_counts=True)
        return cls({int(v): int(c) for v, c in zip(values, freq)})

    @property
    def uniformity(self) -> int:
        return max(self.counts, default=0)

    def check(self, q: int) -> None:
        total = sum(self.counts.values())
        weighted = sum(i * c for i, c in self.counts.items())
        if total != q or weighted != q:
            raise IdentityViolation(
                f"sum omega_i = {total}, sum i*omega_i = {weighted}, expected {q}"
            )

    def __str__(self) -> str:
        inner = ", ".join(f"w{i}={c}" for i, c in sorted(self.counts.items()))
        return "{" + inner + "}"


def delta(table: FunctionTable, a, b) -> int:
    f = table.field
    a, b = f.coerce(a), f.coerce(b)
    if a == 0:
        raise ValueError("a must be nonzero")
    x = f.elements()
    d = f.sub(table.outputs[f.add(x, a)], table.outputs)
    return int(np.count_nonzero(d == b))


def ddt_row(table: FunctionTable, a) -> np.ndarray:
    """delta(a, b) for every b, as a length-q vector indexed by b."""
    f = table.field
    a = f.coerce(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    x = f.elements()
    d = f.sub(table.outputs[f.add(x, a)], table.outputs)
    return np.bincount(d, minlength=f.q)


def ddt(table: FunctionTable) -> np.ndarray:
    """Full q x q table; row 0 is the trivial row (q at b = 0)."""
    f = table.field
    q = f.q
    out = np.zeros((q, q), dtype=np.int64)
    out[0, 0] = q
    x = f.elements()
    step = max(1, _CHUNK // q)
    for start in range(1, q, step):
        a = np.arange(start, min(q, start + step), dtype=np.int64)
        d = f.sub(table.outputs[f.add(x[None, :], a[:, None])], table.outputs[None, :])
        flat = d + q * np.arange(len(a))[:, None]
        out[start : start + len(a)] = np.bincount(flat.ravel(), minlength=q * len(a)).reshape(len(a), q)
    return out


def differential_uniformity(table: FunctionTable) -> int:
    return int(ddt(table)[1:].max())


def _reduction_targets(f: FiniteField, r: int, a: int, boomerang: bool) -> np.ndarray:
    """Map b -> b' such that row a at b equals row 1 at b'."""
    scale = f.pow(a, r)
    if f.chi(a) == -1:
        flip = (r + (0 if boomerang else 1)) % 2 == 1
        if flip:
            scale = f.neg(scale)
    return f.mul(f.elements(), f.inv(scale))


def verify_row_reduction(field: FiniteField, u, a, r: int | None = None) -> bool:
    """Check delta(a, b) == delta(1, g_a(b)) for every b.

    g_a(b) = b / a^r when a is a square, b / ((-1)^{r+1} a^r) otherwise.
    """
    table = build_binomial(field, u, r)
    a = field.coerce(a)
    r = table.params["r"]
    row_a = ddt_row(table, a)
    row_1 = ddt_row(table, 1)
    return bool(np.array_equal(row_a, row_1[_reduction_targets(field, r, a, False)]))


def diff_spectrum(table: FunctionTable) -> DiffSpectrum:
    """Spectrum of row a = 1; meaningful when every row reduces to it."""
    spec = DiffSpectrum.from_row(ddt_row(table, 1))
    spec.check(table.field.q)
    return spec


def classify_locality(table: FunctionTable, mode: str = "punctured") -> str:
    """'locally-PN', 'locally-APN' or 'neither', judged on row a = 1.

    ``strict`` ranges b over F_q minus F_p (empty for prime fields);
    ``punctured`` ranges b over all nonzero elements.
    """
    f = table.field
    row = ddt_row(table, 1)
    if mode == "strict":
        window = row[f.p :]
    elif mode == "punctured":
        window = row[1:]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    worst = int(window.max()) if window.size else 0
    if worst <= 1:
        return "locally-PN"
    if worst <= 2:
        return "locally-APN"
    return "neither"


# -- quadrant decomposition --------------------------------------------------


@dataclass(frozen=True)
class QuadrantCounts:
    b: int
    d00: int
    d01: int
    d10: int
    d11: int
    sol_at_0: bool
    sol_at_neg1: bool

    @property
    def total(self) -> int:
        return self.d00 + self.d01 + self.d10 + self.d11 + self.sol_at_0 + self.sol_at_neg1

    def as_tuple(self) -> tuple:
        return (self.d00, self.d01, self.d10, self.d11, self.sol_at_0, self.sol_at_neg1)


@dataclass(frozen=True)
class QuadrantPrediction:
    b: int
    d00: int
    d01: int
    d10: int
    d11: int
    sol_at_0: bool
    sol_at_neg1: bool
    R1: int
    R2: int
    degenerate: bool = False
    witnesses: dict[str, tuple[int, ...]] = dc_field(default_factory=dict)

    @property
    def total(self) -> int:
        return self.d00 + self.d01 + self.d10 + self.d11 + self.sol_at_0 + self.sol_at_neg1

    def as_tuple(self) -> tuple:
        return (self.d00, self.d01, self.d10, self.d11, self.sol_at_0, self.sol_at_neg1)


def quadrant_table(field: FiniteField, u=1, r: int | None = None):
    """Brute-force solution counts of F(x+1) - F(x) = b by quadrant, for all b.

    Returns ``(counts, b_at_0, b_at_neg1)`` where ``counts`` has shape (q, 4)
    and the two scalars are the right-hand sides hit by x = 0 and x = -1.
    """
    table = build_binomial(field, u, r)
    f = field
    x = f.elements()
    out = table.outputs
    b = f.sub(out[f.add(x, 1)], out)
    label = f.quadrant_labels()
    keep = label >= 0
    counts = np.bincount(b[keep] * 4 + label[keep], minlength=4 * f.q).reshape(f.q, 4)
    return counts, int(b[0]), int(b[f.minus_one])


def quadrant_counts(field: FiniteField, b, u=1, r: int | None = None) -> QuadrantCounts:
    b = field.coerce(b)
    counts, b0, bm1 = quadrant_table(field, u, r)
    return QuadrantCounts(b, *(int(c) for c in counts[b]), b == b0, b == bm1)


def _require_default_r(field: FiniteField, r: int | None) -> int:
    if field.r is None:
        raise ValueError("quadrant predictions need q = 3 (mod 4)")
    if r is not None and r != field.r:
        raise ValueError("quadrant predictions hold only for r = (q+1)/4")
    return field.r


def predict_quadrant_arrays(field: FiniteField, u, b: np.ndarray) -> dict:
    """Closed-form quadrant counts for many b at once (u may be any value but 0).

    For u = 1 the character conditions of the u = 1 lemmas are used; for
    u != +-1 the general ones.  Entries of ``b`` must be nonzero.
    Witness arrays hold -1 where no solution is predicted.
    """
    f = field
    r = _require_default_r(f, None)
    u = f.coerce(u)
    b = np.asarray(b, dtype=np.int64)
    if np.any(b == 0):
        raise ValueError("b must be nonzero")
    chi = f.chi_table
    b2 = f.square(b)
    none = np.full(b.shape, -1, dtype=np.int64)
    res: dict = {}

    if u == f.one:
        four = f.from_int(4)
        p4, m4 = f.add(b2, four), f.sub(b2, four)
        cb = chi[b]
        c2 = f.chi(f.two)
        d00 = (chi[f.mul(b, p4)] == 1) & (chi[f.mul(b, m4)] == -1)
        d01 = (cb == -c2) & (chi[p4] == -1)
        d10 = (cb == c2) & (chi[m4] == -1)
        x00 = f.div(f.square(f.sub(four, b2)), f.mul(f.from_int(16), b2))
        x01 = f.div(b2, four)
        x10 = f.div(m4, four)
        res.update(
            d00=d00.astype(np.int64),
            d01=d01.astype(np.int64),
            d10=d10.astype(np.int64),
            d11=np.zeros(b.shape, dtype=np.int64),
            R1=f.pow(p4, r),
            R2=f.pow(m4, r),
            x00=np.where(d00, x00, none),
            x01=(np.where(d01, x01, none), none),
            x10=(np.where(d10, x10, none), none),
            x11=none,
            degenerate=np.zeros(b.shape, dtype=bool),
        )
    else:
        if u in (0, f.minus_one):
            raise ValueError("general predictor needs u not in {0, 1, -1}")
        c = f.add(1, u)  # 1 + u
        e = f.sub(1, u)  # 1 - u
        cc, ee = f.square(c), f.square(e)
        s = f.add(1, f.square(u))  # 1 + u^2
        two_s = f.mul(f.two, s)
        four = f.from_int(4)
        four_s2 = f.mul(four, f.square(s))

        # S_00 and S_11: at most one solution each
        d00 = (chi[f.add(cc, b2)] == chi[f.sub(cc, b2)]) & (
            chi[f.sub(cc, b2)] == chi[f.mul(f.mul(f.two, b), c)]
        )
        x00 = f.div(f.square(f.sub(cc, b2)), f.mul(f.mul(four, b2), cc))
        cbe = -chi[f.mul(b, e)]
        d11 = (chi[f.add(ee, b2)] == chi[f.sub(ee, b2)]) & (chi[f.sub(ee, b2)] == cbe)
        x11 = f.neg(f.div(f.square(f.add(b2, ee)), f.mul(f.mul(four, b2), ee)))

        # S_01: roots of a quadratic with discriminant -4b^2(1-u^2)^2(b^2+2(1+u^2))
        disc1 = f.add(b2, two_s)
        R1 = f.pow(disc1, r)
        ok1 = chi[disc1] != 1
        x01, n01 = [], np.zeros(b.shape, dtype=np.int64)
        for eps in (1, -1):
            eR = R1 if eps == 1 else f.neg(R1)
            P = f.sub(f.mul(b, e), f.mul(c, eR))
            Q = f.add(f.mul(b, c), f.mul(e, eR))
            good = ok1 & (chi[P] == f.chi(s)) & (chi[Q] == -f.chi(two_s))
            if eps == -1:
                good &= R1 != 0  # double root already counted
            x01.append(np.where(good, f.div(f.square(Q), four_s2), none))
            n01 += good
        # S_10: discriminant -4b^2(1-u^2)^2(b^2-2(1+u^2))
        disc2 = f.sub(b2, two_s)
        R2 = f.pow(disc2, r)
        ok2 = chi[disc2] != 1
        x10, n10 = [], np.zeros(b.shape, dtype=np.int64)
        for eps in (1, -1):
            eR = R2 if eps == 1 else f.neg(R2)
            P = f.sub(f.mul(b, e), f.mul(c, eR))
            Q = f.add(f.mul(b, c), f.mul(e, eR))
            good = ok2 & (chi[Q] == f.chi(two_s)) & (chi[P] == -f.chi(s))
            if eps == -1:
                good &= R2 != 0
            x10.append(np.where(good, f.neg(f.div(f.square(P), four_s2)), none))
            n10 += good
        res.update(
            d00=d00.astype(np.int64),
            d01=n01,
            d10=n10,
            d11=d11.astype(np.int64),
            R1=R1,
            R2=R2,
            x00=np.where(d00, x00, none),
            x01=tuple(x01),
            x10=tuple(x10),
            x11=np.where(d11, x11, none),
            degenerate=(b2 == cc) | (b2 == ee),
        )

    sign = f.one if (r + 1) % 2 == 0 else f.minus_one
    res["sol_at_0"] = b == f.add(1, u)
    res["sol_at_neg1"] = b == f.mul(sign, f.sub(1, u))
    return res


def _prediction_from_arrays(b: int, arr: dict) -> QuadrantPrediction:
    def pick(v):
        return int(np.asarray(v)[0])

    witnesses = {}
    for name, key in (("00", "x00"), ("11", "x11")):
        if pick(arr[key]) >= 0:
            witnesses[name] = (pick(arr[key]),)
    for name, key in (("01", "x01"), ("10", "x10")):
        found = tuple(pick(v) for v in arr[key] if pick(v) >= 0)
        if found:
            witnesses[name] = found
    return QuadrantPrediction(
        b=b,
        d00=pick(arr["d00"]),
        d01=pick(arr["d01"]),
        d10=pick(arr["d10"]),
        d11=pick(arr["d11"]),
        sol_at_0=bool(np.asarray(arr["sol_at_0"])[0]),
        sol_at_neg1=bool(np.asarray(arr["sol_at_neg1"])[0]),
        R1=pick(arr["R1"]),
        R2=pick(arr["R2"]),
        degenerate=bool(np.asarray(arr["degenerate"])[0]),
        witnesses=witnesses,
    )


def predict_quadrants_u1(field: FiniteField, b) -> QuadrantPrediction:
    """Character-condition prediction of the quadrant counts for u = 1, b != 0."""
    b = field.coerce(b)
    if b == 0:
        raise ValueError("b must be nonzero")
    return _prediction_from_arrays(b, predict_quadrant_arrays(field, 1, np.array([b])))


def predict_quadrants_general(field: FiniteField, u, b) -> QuadrantPrediction:
    """Character-condition prediction for u not in {0, 1, -1}, b != 0."""
    u, b = field.coerce(u), field.coerce(b)
    if u in (0, field.one, field.minus_one):
        raise ValueError("u must not be 0, 1 or -1")
    if b == 0:
        raise ValueError("b must be nonzero")
    return _prediction_from_arrays(b, predict_quadrant_arrays(field, u, np.array([b])))


def check_witnesses(table: FunctionTable, pred: QuadrantPrediction) -> bool:
    """Every witness solves F(x+1) - F(x) = b and sits in its declared quadrant."""
    f = table.field
    labels = f.quadrant_labels()
    for name, xs in pred.witnesses.items():
        code = QUADRANTS.index(name)
        for x in xs:
            if labels[x] != code:
                return False
            if f.sub(table.outputs[f.add(x, 1)], table.outputs[x]) != pred.b:
                return False
    return True


def predict_diff_spectrum_u1(field: FiniteField) -> DiffSpectrum:
    """Closed-form spectrum of x^r (1 + chi(x)), r = (q+1)/4, merged on collisions."""
    q = field.q
    if q % 4 != 3:
        raise ValueError("closed form needs q = 3 (mod 4)")
    top = (q + 1) // 4
    if q % 8 == 3:
        parts = [(0, (q - 3) // 4), (1, (3 * q - 1) // 4), (top, 1)]
    else:
        parts = [(0, (q - 3) // 2), (1, (q + 5) // 4), (2, (q - 3) // 4), (top, 1)]
    counts: dict[int, int] = {}
    for i, c in parts:
        counts[i] = counts.get(i, 0) + c
    return DiffSpectrum({i: c for i, c in sorted(counts.items()) if c})
