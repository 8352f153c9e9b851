"""Kernel dispatch: compiled extension when present, numpy fallback otherwise.

Set AJSF_PURE_PYTHON=1 to force the fallback (used by the benchmark and the
kernel equivalence tests).
"""

from __future__ import annotations

import os

import numpy as np

from .automata import Transducer

if os.environ.get("AJSF_PURE_PYTHON") == "1":
    from . import _kernels_np as _impl
    HAVE_COMPILED = False
else:
    try:
        from . import _weight_kernels as _impl  # type: ignore[attr-defined]
        HAVE_COMPILED = True
    except ImportError:
        from . import _kernels_np as _impl
        HAVE_COMPILED = False

_TABLE_CACHE: dict[int, tuple] = {}


def transducer_tables(tr: Transducer) -> tuple[np.ndarray, np.ndarray]:
    """Transition and output tables as C-contiguous arrays (cached per machine)."""
    key = id(tr)
    hit = _TABLE_CACHE.get(key)
    if hit is not None and hit[0] is tr:
        return hit[1], hit[2]
    nxt = np.ascontiguousarray(np.array(tr.nxt, dtype=np.int32))
    out = np.ascontiguousarray(np.array(tr.out, dtype=np.uint8))
    _TABLE_CACHE[key] = (tr, nxt, out)
    return nxt, out


def weights_range(tr: Transducer, start: int, stop: int) -> np.ndarray:
    """Weights h(n) for all start <= n < stop (d=1, non-negative range)."""
    if tr.d != 1:
        raise ValueError("weights_range needs a one-dimensional transducer")
    if start < 0:
        raise ValueError("range must be non-negative")
    if stop <= start:
        return np.zeros(0, dtype=np.int32)
    nxt, out = transducer_tables(tr)
    nbits = int(stop - 1).bit_length()
    return _impl.transducer_weights_range(nxt, out, tr.initial, int(start),
                                          int(stop), nbits, tr.reset_len)


def weights_grid(tr: Transducer, n_max: int) -> np.ndarray:
    """Weights over the full grid [0, n_max)^d, coordinate 1 slowest."""
    if n_max <= 0:
        return np.zeros(0, dtype=np.int32)
    nxt, out = transducer_tables(tr)
    nbits = int(n_max - 1).bit_length()
    return _impl.transducer_weights_grid(nxt, out, tr.initial, tr.d,
                                         int(n_max), nbits, tr.reset_len)


def weights_inputs(tr: Transducer, inputs) -> np.ndarray:
    """Weights for an array of input vectors (count x d, non-negative)."""
    arr = np.ascontiguousarray(np.asarray(inputs, dtype=np.int64))
    if arr.ndim != 2 or arr.shape[1] != tr.d:
        raise ValueError(f"expected shape (count, {tr.d})")
    if arr.size and arr.min() < 0:
        raise ValueError("inputs must be non-negative")
    nxt, out = transducer_tables(tr)
    nbits = int(arr.max()).bit_length() if arr.size else 0
    return _impl.transducer_weights_inputs(nxt, out, tr.initial, arr, nbits,
                                           tr.reset_len)


def recode_weights_range(ds, start: int, stop: int) -> np.ndarray:
    """One-dimensional recoding weights for start <= n < stop (any signs)."""
    if stop <= start:
        return np.zeros(0, dtype=np.int32)
    if ds.l == 0 and not ds.negated and start < 0:
        raise ValueError("negative range needs a digit set with l < 0")
    if ds.negated:
        rev = _impl.recode_weights_range(ds.l, ds.u, ds.w, -(stop - 1), -start + 1)
        return rev[::-1].copy()
    return _impl.recode_weights_range(ds.l, ds.u, ds.w, int(start), int(stop))
