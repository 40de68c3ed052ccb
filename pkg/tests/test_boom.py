import numpy as np
import pytest

from binomspec import boom, charsum
from binomspec.boom import BoomSpectrum
from binomspec.diff import IdentityViolation
from binomspec.field import make_field
from binomspec.funcs import build_binomial, build_power
from binomspec.verify import enumerate_prime_powers


def _brute_beta(t, a, b):
    f = t.field
    n = 0
    for x in range(f.q):
        for y in range(f.q):
            if f.sub(t(x), t(y)) == b and f.sub(t(f.add(x, a)), t(f.add(y, a))) == b:
                n += 1
    return n


def test_identity_map(f7):
    ident = build_power(f7, 1)
    assert boom.beta(ident, 3, 5) == 7
    assert boom.boomerang_uniformity(ident) == 7


@pytest.mark.parametrize("u", [1, 2, 6])
def test_row_matches_double_loop(f7, u):
    t = build_binomial(f7, u)
    for a in (1, 3):
        row = boom.bct_row(t, a)
        assert row.tolist() == [_brute_beta(t, a, b) for b in range(7)]


def test_bct_matches_rows(f27):
    t = build_binomial(f27, 4)
    full = boom.bct(t)
    assert not full[0].any()
    for a in (1, 5, 26):
        assert np.array_equal(full[a], boom.bct_row(t, a))


def test_f11_beta_zero(f11):
    t = build_binomial(f11, 1)
    assert boom.boomerang_uniformity(t) == 0
    assert boom.beta(t, 3, 4) == 0


def test_f7_row_one(f7):
    row = boom.bct_row(build_binomial(f7, 1), 1)[1:]
    assert row.max() == 1 and (row == 1).sum() == 2


def test_uniformity_examples():
    assert boom.boomerang_uniformity(build_binomial(make_field(31), 1)) == 1
    assert boom.boomerang_uniformity(build_binomial(make_field(23), 1)) == 2


def test_reduction_examples():
    for q in (7, 23):
        f = make_field(q)
        for a in range(1, q):
            assert boom.verify_boom_row_reduction(f, 1, a)
    f27 = make_field(3, 3)
    for u in (1, 2, 7):
        for a in range(1, 27):
            assert boom.verify_boom_row_reduction(f27, u, a)


def test_spectrum_examples():
    assert boom.boom_spectrum(build_binomial(make_field(7), 1)).counts == {0: 4, 1: 2}
    assert boom.boom_spectrum(build_binomial(make_field(47), 1)).counts == {0: 28, 1: 14, 2: 4}
    assert boom.boom_spectrum(build_binomial(make_field(11), 1)).counts == {0: 10}


def test_spectrum_identity():
    BoomSpectrum({0: 4, 1: 2}).check(7)
    with pytest.raises(IdentityViolation):
        BoomSpectrum({0: 4, 1: 3}).check(7)
    assert BoomSpectrum({0: 4, 1: 2}).uniformity == 1


@pytest.mark.parametrize("q", [7, 23, 31, 47, 71])
def test_boomerang_quadrant_lemmas(q):
    f = make_field(q)
    counts, boundary = boom.boom_quadrant_table(f, 1)
    row = boom.bct_row(build_binomial(f, 1), 1)
    names = boom.QUAD_PAIRS
    for b in range(1, q):
        bc = boom.boom_quadrant_counts(f, b)
        assert bc.boundary == 0
        for k, v in bc.counts.items():
            if "11" in (k[:2], k[2:]):
                assert v == 0
        for k in ("0000", "0101", "0110", "1010", "1001"):
            assert bc.counts[k] == 0
        assert bc.eq23_sum == row[b] == bc.total
        c01, c10 = boom.predict_boom_pair_counts(f, b)
        assert c01 == bc.counts["0001"] + bc.counts["0100"]
        assert c10 == bc.counts["0010"] + bc.counts["1000"]
        assert c01 + c10 == row[b]
    assert counts.shape == (q, len(names)) and boundary.shape == (q,)


def test_pair_prediction_boundary_values():
    for q in (7, 23, 31, 47):
        f = make_field(q)
        assert boom.predict_boom_pair_counts(f, 2)[0] == 0
        assert boom.predict_boom_pair_counts(f, f.neg(2))[0] == 0


def test_pair_prediction_needs_7_mod_8(f11):
    with pytest.raises(ValueError):
        boom.predict_boom_pair_counts(f11, 1)
    with pytest.raises(ValueError):
        boom.boom_quadrant_counts(make_field(7), 0)
    with pytest.raises(ValueError):
        boom.boom_quadrant_table(make_field(7), 2)


def test_predicted_spectrum_examples():
    assert boom.predict_boom_spectrum(make_field(7), -2).counts == {0: 4, 1: 2}
    assert boom.predict_boom_spectrum(make_field(31), -8).counts == {0: 16, 1: 14}
    assert boom.predict_boom_spectrum(make_field(743), 22).counts == {0: 424, 1: 266, 2: 52}
    assert boom.predict_boom_spectrum(make_field(19)).counts == {0: 18}
    with pytest.raises(IdentityViolation):
        boom.predict_boom_spectrum(make_field(7), -1)
    with pytest.raises(ValueError):
        boom.predict_boom_spectrum(make_field(13))


def test_spectrum_symmetric_in_u():
    rng = np.random.default_rng(11)
    for p, n, q in enumerate_prime_powers(200, "3mod4"):
        f = make_field(p, n)
        for u in {1} | {int(v) for v in rng.integers(1, q, size=2)}:
            a = boom.boom_spectrum(build_binomial(f, u))
            b = boom.boom_spectrum(build_binomial(f, f.neg(u)))
            assert a == b, (q, u)


def test_pointwise_relation_between_u_and_minus_u():
    # beta_{-u}(1, c) = beta_u(1, (-1)^r c)
    for q, n in ((7, 1), (11, 1), (3, 3), (23, 1)):
        f = make_field(q, n)
        sign = f.sign((-1) ** f.r)
        c = f.elements()
        for u in range(f.q):
            lhs = boom.bct_row(build_binomial(f, f.neg(u)), 1)
            rhs = boom.bct_row(build_binomial(f, u), 1)[f.mul(sign, c)]
            assert np.array_equal(lhs, rhs)


def test_closed_form_small_range():
    for p, n, q in enumerate_prime_powers(400, "7mod8"):
        f = make_field(p, n)
        got = boom.boom_spectrum(build_binomial(f, 1))
        assert got == boom.predict_boom_spectrum(f, charsum.gamma(f))
