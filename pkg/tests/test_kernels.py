import numpy as np
import pytest

from ajsf import _kernels, _kernels_np
from ajsf.digitset import digit_set
from ajsf.expansion import ajsf_weight, ajsf_weight_1d
from ajsf.automata import ajsf_transducer, ajsf_transducer_1d, run

compiled = pytest.importorskip("ajsf._weight_kernels") \
    if _kernels.HAVE_COMPILED else None
needs_compiled = pytest.mark.skipif(not _kernels.HAVE_COMPILED,
                                    reason="compiled kernels not built")


@needs_compiled
def test_compiled_matches_fallback_range():
    tr = ajsf_transducer_1d(digit_set(-2, 3))
    nxt, out = _kernels.transducer_tables(tr)
    a = compiled.transducer_weights_range(nxt, out, tr.initial, 0, 1 << 15,
                                          15, tr.reset_len)
    b = _kernels_np.transducer_weights_range(nxt, out, tr.initial, 0, 1 << 15,
                                             15, tr.reset_len)
    assert np.array_equal(a, b)


@needs_compiled
def test_compiled_matches_fallback_grid_and_inputs():
    tr = ajsf_transducer(digit_set(-2, 3), 2)
    nxt, out = _kernels.transducer_tables(tr)
    a = compiled.transducer_weights_grid(nxt, out, tr.initial, 2, 48, 6,
                                         tr.reset_len)
    b = _kernels_np.transducer_weights_grid(nxt, out, tr.initial, 2, 48, 6,
                                            tr.reset_len)
    assert np.array_equal(a, b)
    rng = np.random.default_rng(0)
    arr = np.ascontiguousarray(rng.integers(0, 1 << 14, size=(500, 2)))
    a = compiled.transducer_weights_inputs(nxt, out, tr.initial, arr, 14,
                                           tr.reset_len)
    b = _kernels_np.transducer_weights_inputs(nxt, out, tr.initial, arr, 14,
                                              tr.reset_len)
    assert np.array_equal(a, b)


@needs_compiled
@pytest.mark.parametrize("l,u", [(-1, 1), (-2, 3), (0, 3), (-3, 11)])
def test_compiled_matches_fallback_recode(l, u):
    ds = digit_set(l, u)
    a = compiled.recode_weights_range(ds.l, ds.u, ds.w, -(1 << 12), 1 << 12)
    b = _kernels_np.recode_weights_range(ds.l, ds.u, ds.w, -(1 << 12), 1 << 12)
    assert np.array_equal(a, b)


def test_range_matches_scalar_run():
    ds = digit_set(-3, 11)
    tr = ajsf_transducer_1d(ds)
    weights = _kernels.weights_range(tr, 0, 4096)
    for n in (0, 1, 5, 100, 4095):
        assert weights[n] == run(tr, n)


def test_grid_ordering():
    ds = digit_set(-1, 1)
    tr = ajsf_transducer(ds, 2)
    grid = _kernels.weights_grid(tr, 16)
    for a in range(16):
        for b in range(16):
            assert grid[a * 16 + b] == ajsf_weight((a, b), ds)


def test_inputs_matches_algorithm():
    ds = digit_set(-2, 3)
    tr = ajsf_transducer(ds, 3)
    rng = np.random.default_rng(1)
    arr = rng.integers(0, 1 << 10, size=(200, 3))
    weights = _kernels.weights_inputs(tr, arr)
    for k in range(arr.shape[0]):
        assert weights[k] == ajsf_weight(tuple(int(x) for x in arr[k]), ds)


def test_recode_range_negative_and_negated():
    ds = digit_set(-11, 3)
    weights = _kernels.recode_weights_range(ds, -200, 200)
    for i, n in enumerate(range(-200, 200)):
        assert weights[i] == ajsf_weight_1d(n, ds)


def test_recode_range_rejects_bad_domain():
    with pytest.raises(ValueError):
        _kernels.recode_weights_range(digit_set(0, 3), -5, 5)
