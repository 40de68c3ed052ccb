import numpy as np
import pytest

from binomspec.field import make_field
from binomspec.funcs import (
    build_binomial,
    build_from_values,
    build_power,
    is_permutation,
    predict_permutation,
    special_u,
)
from binomspec.verify import enumerate_prime_powers


def test_binomial_f7_values(f7):
    t = build_binomial(f7, 1)
    assert t(2) == 1
    assert t(3) == 0
    assert t.outputs.tolist() == [0, 2, 1, 0, 4, 0, 0]
    assert t.params == {"kind": "binomial", "r": 2, "u": 1}


@pytest.mark.parametrize("p,n", [(7, 1), (11, 1), (3, 3), (19, 1)])
def test_zero_maps_to_zero(p, n):
    f = make_field(p, n)
    for u in range(f.q):
        assert build_binomial(f, u)(0) == 0
    assert build_binomial(f, 2, r=5)(0) == 0


def test_u_zero_is_power_map(f11):
    assert np.array_equal(build_binomial(f11, 0).outputs, build_power(f11, 3).outputs)


def test_power_maps(f7, f11):
    assert build_power(f7, 1).outputs.tolist() == list(range(7))
    assert build_power(f7, 2).outputs.tolist() == [0, 1, 4, 2, 2, 4, 1]
    assert is_permutation(build_power(f11, 3))
    assert is_permutation(build_power(f7, 1))
    assert not is_permutation(build_binomial(f7, 1))


def test_table_validation(f7):
    with pytest.raises(ValueError):
        build_from_values(f7, [0, 1, 2])
    with pytest.raises(ValueError):
        build_from_values(f7, [0, 1, 2, 3, 4, 5, 7])
    t = build_from_values(f7, range(7))
    with pytest.raises(ValueError):
        t.outputs[0] = 3


def test_predict_permutation_f11(f11):
    assert predict_permutation(f11, 3)
    assert is_permutation(build_binomial(f11, 3))


def test_predict_permutation_rejects_pm1(f7):
    for u in (1, f7.minus_one):
        with pytest.raises(ValueError):
            predict_permutation(f7, u)


def test_default_r_needs_3_mod_4():
    with pytest.raises(ValueError):
        build_binomial(make_field(5), 1)
    assert build_binomial(make_field(5), 1, r=3).params["r"] == 3


def test_predict_permutation_exhaustive():
    for p, n, q in enumerate_prime_powers(500, "3mod4"):
        f = make_field(p, n)
        sign = -1 if f.r % 2 else 1
        for u in range(1, q):
            if u in (f.one, f.minus_one):
                continue
            pred = predict_permutation(f, u)
            assert pred == is_permutation(build_binomial(f, u)), (q, u)
            # the non-permutation branch is exactly chi(1+u) = (-1)^r chi(1-u)
            assert pred == (f.chi(f.add(1, u)) != sign * f.chi(f.sub(1, u)))


def test_special_u():
    f = make_field(11)
    u, v = special_u(f)
    assert f.add(u, v) == 0
    assert f.mul(u, 3) == f.sub(1, f.pow(2, f.r + 1))
    with pytest.raises(ValueError):
        special_u(make_field(3, 3))
    with pytest.raises(ValueError):
        special_u(make_field(13))
