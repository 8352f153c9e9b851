import math
import random
from fractions import Fraction

import numpy as np
import pytest

from ajsf.digitset import digit_set, wnaf_digit_set
from ajsf.errors import BudgetExceeded
from ajsf.expansion import ajsf_weight_1d
from ajsf.automata import ajsf_transducer
from ajsf.spectral import spectral_constants
from ajsf.stats import (MomentEngine, empirical_stats, exact_moments,
                        fluctuation_table, moments_upto, normality_check,
                        psi_at, weight_histogram)

from conftest import representative_sets


@pytest.mark.parametrize("ds", representative_sets(), ids=str)
@pytest.mark.parametrize("d", [1, 2])
def test_exact_matches_empirical(ds, d):
    for n in [1, 2, 3, 5, 31, 64, 100, 255]:
        ex = exact_moments(ds, d, n)
        em = empirical_stats(ds, d, n)
        assert ex.mean == em.mean
        assert ex.variance == em.variance
        assert ex.count == n ** d


def test_trivial_cases():
    ds = digit_set(-2, 3)
    assert exact_moments(ds, 3, 1).mean == 0
    for dsx in representative_sets():
        assert exact_moments(dsx, 1, 2).mean == Fraction(1, 2)


def test_moments_upto_agrees():
    ds = digit_set(-1, 1)
    rows = moments_upto(ds, 2, 64)
    for n in (1, 2, 17, 64):
        c, s, q = rows[n - 1]
        rep = exact_moments(ds, 2, n)
        assert Fraction(s, c) == rep.mean
        assert Fraction(q, c) - rep.mean ** 2 == rep.variance


def test_mean_ratio_converges_to_constant_d2():
    ds = digit_set(-2, 3)
    e = Fraction(32, 89)
    gaps = []
    for k in (8, 14, 20):
        rep = exact_moments(ds, 2, 1 << k)
        gaps.append(abs(float(rep.mean) / k - float(e)))
    assert gaps[2] < gaps[1] < gaps[0]
    assert gaps[2] < 0.03


def test_big_n_object_path():
    ds = digit_set(-1, 1)
    rep = exact_moments(ds, 1, (1 << 80) + 12345)
    assert rep.count == (1 << 80) + 12345
    ratio = float(rep.mean) / 80
    assert abs(ratio - 1 / 3) < 0.01


def test_lemma_recursion_closed_form_d1():
    ds = digit_set(-2, 3)
    eng = MomentEngine(ajsf_transducer(ds, 1))
    a_mat = eng.b_matrix(0, 0)
    y = eng.y_vector()
    for n in range(1, 1 << 9):
        prefixes = eng.chain_with_prefixes(n)
        bits = n.bit_length()
        acc = eng.zero_vec()
        for p in range(bits):
            if not (n >> p) & 1:
                continue
            suffix = n >> (p + 1)
            term = eng.h_vector(prefixes[suffix]) if suffix else y.copy()
            for _ in range(p):
                term = eng.matvec(a_mat, term)
            acc = acc + term
        lhs = prefixes[n][0]
        assert np.array_equal(acc.c, lhs.c) and np.array_equal(acc.s, lhs.s) \
            and np.array_equal(acc.q, lhs.q), n


def test_psi_is_one_at_t_zero():
    ds = digit_set(-1, 1)
    for x in (0, 0.25, 0.5, 0.75):
        assert abs(psi_at(ds, 1, x, truncation=40) - 1.0) < 1e-6


def test_psi_truncation_tail():
    ds = digit_set(-1, 1)
    a = psi_at(ds, 1, 0.3, truncation=40)
    b = psi_at(ds, 1, 0.3, truncation=80)
    beta_ratio = 0.5  # beta0 / 2 for the width-2 symmetric set
    assert abs(a - b) <= beta_ratio ** 38


def test_psi_continuity_at_dyadic_power():
    ds = digit_set(-1, 1)
    x0 = math.log2(1.5)
    left = psi_at(ds, 1, x0 - 1e-7, truncation=40)
    right = psi_at(ds, 1, x0 + 1e-7, truncation=40)
    assert abs(left - right) < 1e-5


def test_fluctuation_residual_agreement_of_n_and_4n():
    ds = digit_set(-1, 1)
    rows = {n: r for n, _, r in
            fluctuation_table(ds, 1, [300, 1200, 300 << 6, 1200 << 6])}
    near = abs(rows[300] - rows[1200])
    far = abs(rows[300 << 6] - rows[1200 << 6])
    assert far < near


def test_fluctuation_residual_bounded():
    ds = digit_set(-2, 3)
    e = spectral_constants(ajsf_transducer(ds, 1)).e
    rows = fluctuation_table(ds, 1, [1 << k for k in range(8, 21)], e)
    residuals = [r for _, _, r in rows]
    assert max(abs(r) for r in residuals) < 2.0
    # full blocks: E(2^k) = e k + O(1), so consecutive residuals stabilize
    assert abs(residuals[-1] - residuals[-2]) < 0.01


def test_normality_degenerate_and_trend():
    ds = wnaf_digit_set(2)
    ks_tiny = normality_check(ds, 1, 2)
    assert 0 < ks_tiny <= 1
    assert normality_check(ds, 1, 1 << 16) < normality_check(ds, 1, 1 << 10)


def test_weight_histogram_sharded_matches():
    ds = digit_set(-2, 3)
    a = weight_histogram(ds, 1, 50_000, jobs=1)
    b = weight_histogram(ds, 1, 50_000, jobs=2)
    assert np.array_equal(a, b)


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        empirical_stats(digit_set(-1, 1), 2, 1 << 13, budget=1 << 24)


def test_reset_additivity_sum_identity():
    # weight sums over [N, N+g) split exactly when N is a padded multiple
    ds = digit_set(-1, 1)
    pad = 4 * ds.w
    rng = random.Random(5)
    for _ in range(50):
        p = rng.randrange(1, 8)
        a = rng.randrange(1, 1 << 8)
        g = rng.randrange(1, 1 << p)
        n0 = a << (p + pad)
        lhs = sum(ajsf_weight_1d(n0 + m, ds) for m in range(g))
        rhs = g * ajsf_weight_1d(a, ds) \
            + sum(ajsf_weight_1d(m, ds) for m in range(g))
        assert lhs == rhs
