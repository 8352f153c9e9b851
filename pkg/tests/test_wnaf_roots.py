import cmath
import math

import pytest

from ajsf.digitset import wnaf_digit_set
from ajsf.automata import ajsf_transducer_1d
from ajsf.spectral import spectral_constants
from ajsf.wnaf_roots import delta_of, find_roots, second_eigenvalue_sectors

# smallest window width from which the closed-form gap bound holds (observed)
DELTA_BOUND_MIN_W = 16


def test_w2_exact_factorization():
    rep = find_roots(2)
    assert rep.roots[0] == 1
    assert abs(rep.roots[1] + 2) < 1e-12
    assert abs(rep.eigenvalues[1] + 1) < 1e-12
    assert rep.delta == 1.0


@pytest.mark.parametrize("w", [4, 6, 8, 12, 17, 33, 64])
def test_one_root_per_sector(w):
    rep = find_roots(w)
    assert len(rep.roots) == w
    assert rep.roots[0] == 1 and rep.residual(0) == 0
    for k in range(w):
        assert rep.residual(k) < 1e-10
    for k in range(1, w):
        assert abs(rep.roots[k] - rep.roots[w - k].conjugate()) < 1e-9
        assert abs(rep.roots[k]) > 1


def test_second_eigenvalue_sectors():
    for w in (10, 40, 120):
        assert second_eigenvalue_sectors(find_roots(w)) == (1, w - 1)


def test_delta_bound_from_threshold():
    for w in range(DELTA_BOUND_MIN_W, 130):
        assert delta_of(w) >= math.log2(1 + 3 * math.pi ** 2 / w ** 3), w
    # below the threshold the closed-form bound genuinely fails
    assert delta_of(DELTA_BOUND_MIN_W - 1) < \
        math.log2(1 + 3 * math.pi ** 2 / (DELTA_BOUND_MIN_W - 1) ** 3)


def test_expansion_of_first_sector_root():
    for w in (100, 200):
        z = find_roots(w).roots[1]
        approx = 1 + 2j * math.pi / w - 2 * math.pi ** 2 / w ** 2 \
            - 2j * math.pi / w ** 2
        assert abs(z - approx) < 100 / w ** 3


def test_only_low_sectors_near_disk():
    w = 120
    rep = find_roots(w)
    radius = 1 + 10 * math.pi ** 2 / w ** 3
    inside = [k for k, z in enumerate(rep.roots) if abs(z) <= radius]
    assert sorted(inside) == [0, 1, w - 1]


@pytest.mark.parametrize("w", range(2, 9))
def test_cross_module_beta0(w):
    rep = find_roots(w)
    res = spectral_constants(ajsf_transducer_1d(wnaf_digit_set(w)))
    assert abs(res.beta0 - rep.beta0) < 1e-8


def test_rejects_bad_w():
    with pytest.raises(ValueError):
        find_roots(1)
