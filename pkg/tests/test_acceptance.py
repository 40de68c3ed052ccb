"""Acceptance criteria 1-10, exact integer comparisons throughout.

Each test records a one-line verdict; ``conftest.py`` prints them at the end
of the session, and running this file directly prints them too.
"""
import json
import time

import numpy as np
import pytest

from binomspec import boom, charsum, cli, diff, verify
from binomspec.field import make_field
from binomspec.funcs import build_binomial
from binomspec.verify import ScanConfig, enumerate_prime_powers, scan

VERDICTS: dict[int, str] = {}

# Differential spectra of x^r(1 + chi(x)) for q < 200, as tabulated in the source.
TABLE_DS = {
    3: {1: 3},
    7: {0: 2, 1: 3, 2: 2},
    11: {0: 2, 1: 8, 3: 1},
    19: {0: 4, 1: 14, 5: 1},
    23: {0: 10, 1: 7, 2: 5, 6: 1},
    27: {0: 6, 1: 20, 7: 1},
    31: {0: 14, 1: 9, 2: 7, 8: 1},
    43: {0: 10, 1: 32, 11: 1},
    47: {0: 22, 1: 13, 2: 11, 12: 1},
    59: {0: 14, 1: 44, 15: 1},
    67: {0: 16, 1: 50, 17: 1},
    71: {0: 34, 1: 19, 2: 17, 18: 1},
    79: {0: 38, 1: 21, 2: 19, 20: 1},
    83: {0: 20, 1: 62, 21: 1},
    103: {0: 50, 1: 27, 2: 25, 26: 1},
    107: {0: 26, 1: 80, 27: 1},
    127: {0: 62, 1: 33, 2: 31, 32: 1},
    131: {0: 32, 1: 98, 33: 1},
    139: {0: 34, 1: 104, 35: 1},
    151: {0: 74, 1: 39, 2: 37, 38: 1},
    163: {0: 40, 1: 122, 41: 1},
    167: {0: 82, 1: 43, 2: 41, 42: 1},
    179: {0: 44, 1: 134, 45: 1},
    191: {0: 94, 1: 49, 2: 47, 48: 1},
    199: {0: 98, 1: 51, 2: 49, 50: 1},
}

# q -> (Gamma, boomerang spectrum) for q = 7 (mod 8), q < 790, as tabulated.
TABLE_BS = {
    7: (-2, {0: 4, 1: 2}),
    23: (2, {0: 14, 1: 6, 2: 2}),
    31: (-8, {0: 16, 1: 14}),
    47: (4, {0: 28, 1: 14, 2: 4}),
    71: (6, {0: 42, 1: 22, 2: 6}),
    79: (-4, {0: 44, 1: 30, 2: 4}),
    103: (-4, {0: 58, 1: 38, 2: 6}),
    127: (16, {0: 76, 1: 38, 2: 12}),
    151: (2, {0: 86, 1: 54, 2: 10}),
    167: (-10, {0: 92, 1: 66, 2: 8}),
    191: (-16, {0: 104, 1: 78, 2: 8}),
    199: (-2, {0: 112, 1: 74, 2: 12}),
    223: (24, {0: 132, 1: 70, 2: 20}),
    239: (-12, {0: 132, 1: 94, 2: 12}),
    263: (6, {0: 150, 1: 94, 2: 18}),
    271: (-4, {0: 152, 1: 102, 2: 16}),
    311: (-14, {0: 172, 1: 122, 2: 16}),
    343: (10, {0: 196, 1: 122, 2: 24}),
    359: (-2, {0: 202, 1: 134, 2: 22}),
    367: (4, {0: 208, 1: 134, 2: 24}),
    383: (-16, {0: 212, 1: 150, 2: 20}),
    431: (52, {0: 256, 1: 134, 2: 40}),
    439: (18, {0: 252, 1: 154, 2: 32}),
    463: (-20, {0: 256, 1: 182, 2: 24}),
    479: (-40, {0: 260, 1: 198, 2: 20}),
    487: (-10, {0: 272, 1: 186, 2: 28}),
    503: (10, {0: 286, 1: 182, 2: 34}),
    599: (-6, {0: 336, 1: 226, 2: 36}),
    607: (-40, {0: 332, 1: 246, 2: 28}),
    631: (-22, {0: 350, 1: 246, 2: 34}),
    647: (6, {0: 366, 1: 238, 2: 42}),
    719: (12, {0: 408, 1: 262, 2: 48}),
    727: (-6, {0: 408, 1: 274, 2: 44}),
    743: (22, {0: 424, 1: 266, 2: 52}),
}


def record(n: int, ok: bool, detail: str) -> None:
    VERDICTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def _spec(d: dict) -> dict:
    return {int(k): v for k, v in d.items()}


def _cli_json(*argv):
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main([*argv, "--format", "json", "--jobs", "1"])
    return code, json.loads(buf.getvalue())["rows"]


def test_c01_table_ds():
    t = time.perf_counter()
    code, rows = _cli_json("scan", "--q-max", "200", "--theorem", "ds")
    elapsed = time.perf_counter() - t
    got = {r["q"]: _spec(r["computed"]["spectrum"]) for r in rows}
    ok = code == 0 and len(rows) == 25 and got == TABLE_DS and all(r["match"] for r in rows)
    record(1, ok and elapsed < 1, f"25 rows equal the DS table ({elapsed:.2f} s)")
    assert got == TABLE_DS
    assert code == 0 and len(rows) == 25
    assert elapsed < 1


# The tabulated Gamma at q = 103 is -4, yet the same row's spectrum
# {58, 38, 6} forces Gamma = -2 via nu_2 = (q + 1 + 4 Gamma) / 16.  -4 is the
# unrestricted sum S1 at that q.  It cannot be reproduced from the definition.
TABLE_BS_INCONSISTENT = {103}


def _bs_rows():
    t = time.perf_counter()
    code, rows = _cli_json("scan", "--q-max", "790", "--filter", "7mod8", "--theorem", "bs")
    elapsed = time.perf_counter() - t
    got = {r["q"]: (r["gamma"], _spec(r["computed"]["spectrum"])) for r in rows}
    return code, got, elapsed


def test_c02_table_bs():
    code, got, elapsed = _bs_rows()
    extra = sorted(set(got) - set(TABLE_BS))
    spectra_ok = all(got.get(q, (None, None))[1] == spec for q, (_, spec) in TABLE_BS.items())
    gamma_bad = sorted(q for q, (g, _) in TABLE_BS.items() if q not in got or got[q][0] != g)
    ok = code == 0 and spectra_ok and not gamma_bad and extra == [751] and elapsed < 30
    record(
        2,
        ok,
        f"34 tabulated spectra match; Gamma differs from the table at q={gamma_bad} "
        f"(table entry contradicts its own spectrum); unlisted q={extra} also matches ({elapsed:.1f} s)",
    )
    assert spectra_ok
    assert gamma_bad == sorted(TABLE_BS_INCONSISTENT)
    # 751 = 7 (mod 8) is prime and below 790 but absent from the table
    assert extra == [751] and code == 0
    assert elapsed < 30


@pytest.mark.xfail(strict=True, reason="tabulated Gamma at q=103 contradicts the tabulated spectrum")
def test_c02_gamma_q103_as_tabulated():
    f = make_field(103)
    assert charsum.gamma(f) == TABLE_BS[103][0]


def test_c02_gamma_q103_consistent_with_spectrum():
    f = make_field(103)
    g = charsum.gamma(f)
    assert g == -2
    assert boom.predict_boom_spectrum(f, g).counts == TABLE_BS[103][1]
    assert charsum.gamma_decomposition(f)[0] == TABLE_BS[103][0]


def test_c03_ds_closed_form():
    t = time.perf_counter()
    reports = scan(ScanConfig(q_max=2000, theorem="DS", jobs=1))
    elapsed = time.perf_counter() - t
    qs = [q for *_, q in enumerate_prime_powers(2000, "3mod4")]
    ok = [r.q for r in reports] == qs and all(r.match for r in reports) and elapsed < 60
    record(3, ok, f"{len(reports)} fields q <= 2000 equal the closed form ({elapsed:.1f} s)")
    assert [r.q for r in reports if not r.match] == []
    assert [r.q for r in reports] == qs
    assert elapsed < 60


def test_c04_beta_zero_full_bct():
    t = time.perf_counter()
    reports = scan(ScanConfig(q_max=500, theorem="BU3", u_policy="pm1", jobs=1))
    elapsed = time.perf_counter() - t
    full = all(r.computed["full_bct"] for r in reports)
    ok = all(r.match for r in reports) and full and elapsed < 120
    record(4, ok, f"full BCT zero for u = +-1 on {len(reports)} fields q = 3 (mod 8) ({elapsed:.1f} s)")
    assert full
    assert [r.q for r in reports if not r.match] == []
    assert elapsed < 120


def test_c05_bs_closed_form():
    t = time.perf_counter()
    reports = scan(ScanConfig(q_max=2000, theorem="BS", jobs=1))
    elapsed = time.perf_counter() - t
    nu2_ok = all(_spec(r.computed["spectrum"]).get(2, 0) > 0 for r in reports if r.q > 790)
    beta_ok = all(r.computed["beta"] == (1 if r.q in (7, 31) else 2) for r in reports)
    ok = all(r.match for r in reports) and nu2_ok and beta_ok and elapsed < 600
    record(5, ok, f"{len(reports)} fields q = 7 (mod 8) <= 2000; nu_2 > 0 above 790; beta = 2 except 7, 31 ({elapsed:.1f} s)")
    assert [r.q for r in reports if not r.match] == []
    assert nu2_ok and beta_ok
    assert elapsed < 600


def test_c06_quadrant_oracle():
    t = time.perf_counter()
    reports = scan(ScanConfig(q_max=343, theorem="QUADRANTS", jobs=1))
    elapsed = time.perf_counter() - t
    ok = all(r.match for r in reports) and elapsed < 600
    cases = sum(r.computed["u_checked"] for r in reports)
    record(6, ok, f"predictions and witnesses equal brute force for {cases} (q, u) pairs, q <= 343 ({elapsed:.1f} s)")
    assert [(r.q, r.computed["failures"]) for r in reports if not r.match] == []
    assert elapsed < 600


def test_c07_du_bounds():
    du = scan(ScanConfig(q_max=343, theorem="DU", jobs=1))
    special = scan(ScanConfig(q_max=343, theorem="SPECIAL_U", jobs=1))
    notes = [n for r in du for n in r.informational]
    ok = all(r.match for r in du) and all(r.match for r in special)
    record(7, ok, f"bounds hold on {len(du)} fields, special u on {len(special)}; {len(notes)} informational notes")
    assert [(r.q, r.computed["violations"]) for r in du if not r.match] == []
    assert [r.q for r in special if not r.match] == []


def test_c08_identity_suite():
    t = time.perf_counter()
    reports = scan(ScanConfig(q_max=2000, theorem="IDENTITIES", jobs=1))
    elapsed = time.perf_counter() - t
    bound = all(r.computed.get("gamma_bound", True) for r in reports)
    ok = all(r.match for r in reports) and bound and elapsed < 120
    record(8, ok, f"all applicable identities hold on {len(reports)} fields; |Gamma| bound holds ({elapsed:.1f} s)")
    assert [(r.q, r.computed["failed"]) for r in reports if not r.match] == []
    assert bound
    assert elapsed < 120


def test_c09_row_reduction():
    reports = scan(ScanConfig(q_max=200, theorem="LEMMA5", u_policy="sample", jobs=1))
    sizes = {len(r.computed["u_values"]) for r in reports if r.q > 11}
    ok = all(r.match for r in reports) and sizes == {10}
    record(9, ok, f"all rows a != 0 reduce to row 1 on {len(reports)} fields (u = +-1 plus 8 random)")
    assert [r.q for r in reports if not r.match] == []
    assert sizes == {10}


def test_c10_property_suite():
    counts = {"diff": 0, "boom": 0, "quad": 0}
    for p, n, q in enumerate_prime_powers(200, "3mod4"):
        f = make_field(p, n)
        for u in range(q):
            neg = f.neg(u)
            if neg < u:
                continue
            for kind, fn in (("diff", diff.diff_spectrum), ("boom", boom.boom_spectrum)):
                a = fn(build_binomial(f, u))  # the counting identity is checked inside
                b = fn(build_binomial(f, neg))
                assert a == b, (kind, q, u)
                counts[kind] += 1
    rng = np.random.default_rng(20240601)
    for p, n, q in enumerate_prime_powers(2000, "3mod4"):
        f = make_field(p, n)
        x = f.elements()
        for _ in range(20):
            a2, a1, a0 = int(rng.integers(1, q)), int(rng.integers(0, q)), int(rng.integers(0, q))
            direct = charsum.char_sum(f, charsum.Poly((a0, a1, a2)))
            assert direct == charsum.quad_char_sum_closed(f, a2, a1, a0)
            counts["quad"] += 1
    record(10, True, f"u/-u spectra agree ({counts['diff']} diff, {counts['boom']} boom pairs); "
           f"{counts['quad']} random quadratics match the closed form")


if __name__ == "__main__":
    import sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(VERDICTS[k] for k in sorted(VERDICTS)))
    sys.exit(0 if all("PASS" in v for v in VERDICTS.values()) else 1)
