import random

import pytest

from ajsf.digitset import digit_set, wnaf_digit_set
from ajsf.expansion import (JointExpansion, ajsf, ajsf_weight, ajsf_weight_1d,
                            expansion_from_json, hamming_weight, is_wnaf,
                            validate_ajsf, value, wnaf)

from conftest import all_digit_sets


def exp_from_rows(rows, ds):
    length = len(rows[0])
    cols = tuple(tuple(r[length - 1 - j] for r in rows) for j in range(length))
    return JointExpansion(cols, ds, len(rows))


def test_value_example_dim3():
    ds = digit_set(0, 2)
    e = exp_from_rows([[1, 0, 1, 1], [0, 0, 2, 0], [2, 0, 0, 1]], ds)
    assert value(e) == (11, 4, 17)
    assert hamming_weight(e) == 3


def test_value_empty():
    e = JointExpansion((), digit_set(-1, 1), 2)
    assert value(e) == (0, 0)
    assert hamming_weight(e) == 0


def test_example_7_11():
    ds = digit_set(-2, 3)
    e = exp_from_rows([[1, 0, 0, -1], [1, 0, 0, 3]], ds)
    assert value(e) == (7, 11)
    assert hamming_weight(e) == 2
    assert validate_ajsf(e)
    assert ajsf((7, 11), ds) == e
    assert ajsf_weight((7, 11), ds) == 2


def test_ajsf_zero_and_powers():
    ds = digit_set(-2, 3)
    assert ajsf((0, 0), ds).columns == ()
    assert ajsf_weight((0, 0), ds) == 0
    for k in range(12):
        assert ajsf_weight((1 << k,), ds) == 1


def test_ajsf_of_11_4_17():
    ds = digit_set(0, 2)
    e = ajsf((11, 4, 17), ds)
    assert value(e) == (11, 4, 17)
    assert validate_ajsf(e)
    assert hamming_weight(e) <= 3


def test_rejects_negative_when_l_zero():
    ds = digit_set(0, 3)
    with pytest.raises(ValueError):
        ajsf_weight((-1,), ds)
    with pytest.raises(ValueError):
        ajsf((3, -4), ds)


def test_digits_out_of_bounds_rejected():
    ds = digit_set(-1, 1)
    with pytest.raises(ValueError):
        JointExpansion(((2,),), ds, 1)


@pytest.mark.parametrize("l,u", all_digit_sets(2, 3) + [(-3, 11), (-9, 17), (-1, 32)])
def test_weight_1d_matches_general(l, u):
    ds = digit_set(l, u)
    lo = 0 if (ds.l == 0 and not ds.negated) else -(1 << 12)
    for n in range(lo, 1 << 12):
        assert ajsf_weight_1d(n, ds) == ajsf_weight((n,), ds), n


def test_weight_1d_examples():
    assert ajsf_weight_1d(0, digit_set(-2, 3)) == 0
    assert ajsf_weight_1d(7, digit_set(-1, 1)) == 2


def test_wnaf_examples():
    e = wnaf(7, 2)
    assert e.rows() == [[1, 0, 0, -1]]
    assert value(e) == (7,) and is_wnaf(e, 2)
    assert wnaf(0, 5).columns == ()


@pytest.mark.parametrize("w", [2, 3, 4, 5])
def test_wnaf_equals_ajsf_on_symmetric_set(w):
    ds = wnaf_digit_set(w)
    for n in range(-(1 << 10), 1 << 10):
        e = wnaf(n, w)
        assert value(e) == (n,)
        assert is_wnaf(e, w)
        assert validate_ajsf(e)
        assert hamming_weight(e) == ajsf_weight_1d(n, ds)
        if n >= 0:
            assert ajsf(n, ds) == e


def test_validate_rejects_adjacent_nonzeros():
    ds = digit_set(-1, 1)
    e = exp_from_rows([[1, 1]], ds)
    assert not validate_ajsf(e)


def test_validate_on_algorithm_output():
    rng = random.Random(7)
    for l, u in [(-1, 1), (-2, 3), (0, 3), (-3, 11)]:
        ds = digit_set(l, u)
        for _ in range(300):
            d = rng.choice([1, 2, 3])
            vec = tuple(rng.randrange(0, 1 << 14) for _ in range(d))
            e = ajsf(vec, ds)
            assert value(e) == vec
            assert validate_ajsf(e)
            assert hamming_weight(e) == ajsf_weight(vec, ds)


def test_negated_set_round_trip():
    ds = digit_set(-11, 3)
    assert ds.negated
    for n in range(-500, 500):
        e = ajsf((n,), ds)
        assert value(e) == (n,)
        lo, hi = e.digit_bounds()
        assert (lo, hi) == (-11, 3)
        assert validate_ajsf(e)
        assert hamming_weight(e) == ajsf_weight_1d(n, ds)


def test_reset_additivity_spot():
    for l, u in [(-1, 1), (-2, 3)]:
        ds = digit_set(l, u)
        pad = 4 * ds.w
        rng = random.Random(3)
        for _ in range(500):
            p = rng.randrange(0, 12)
            n = rng.randrange(0, 1 << 16)
            m = rng.randrange(0, 1 << p)
            lhs = ajsf_weight_1d((n << (p + pad)) + m, ds)
            assert lhs == ajsf_weight_1d(n, ds) + ajsf_weight_1d(m, ds)


def test_json_round_trip():
    ds = digit_set(-2, 3)
    e = ajsf((7, 11), ds)
    back = expansion_from_json(e.to_json())
    assert back == e
    assert value(back) == (7, 11)


def test_canonical_trimming():
    ds = digit_set(-1, 1)
    e1 = JointExpansion(((1,), (0,), (0,)), ds, 1)
    e2 = JointExpansion(((1,),), ds, 1)
    assert e1 == e2 and len(e1) == 1
