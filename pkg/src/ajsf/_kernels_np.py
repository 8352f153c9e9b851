"""Vectorized numpy implementations of the batch weight kernels.

Used when the compiled extension is unavailable (or disabled via
AJSF_PURE_PYTHON=1).  Signatures mirror ajsf._weight_kernels exactly.
"""

from __future__ import annotations

import numpy as np


def transducer_weights_range(nxt, out, initial, start, stop, nbits, pad):
    n = np.arange(start, stop, dtype=np.int64)
    state = np.full(n.shape, initial, dtype=np.int32)
    weight = np.zeros(n.shape, dtype=np.int32)
    for p in range(nbits):
        b = ((n >> p) & 1).astype(np.int32)
        weight += out[state, b]
        state = nxt[state, b]
    zero = np.zeros(n.shape, dtype=np.int32)
    for _ in range(pad):
        weight += out[state, zero]
        state = nxt[state, zero]
    return weight


def transducer_weights_grid(nxt, out, initial, d, n_max, nbits, pad):
    shape = (int(n_max),) * d
    coords = np.indices(shape, dtype=np.int64).reshape(d, -1)
    state = np.full(coords.shape[1], initial, dtype=np.int32)
    weight = np.zeros(coords.shape[1], dtype=np.int32)
    for p in range(nbits):
        sym = np.zeros(coords.shape[1], dtype=np.int32)
        for j in range(d):
            sym |= (((coords[j] >> p) & 1) << j).astype(np.int32)
        weight += out[state, sym]
        state = nxt[state, sym]
    zero = np.zeros(coords.shape[1], dtype=np.int32)
    for _ in range(pad):
        weight += out[state, zero]
        state = nxt[state, zero]
    return weight


def transducer_weights_inputs(nxt, out, initial, inputs, nbits, pad):
    inputs = np.asarray(inputs, dtype=np.int64)
    count, d = inputs.shape
    state = np.full(count, initial, dtype=np.int32)
    weight = np.zeros(count, dtype=np.int32)
    for p in range(nbits):
        sym = np.zeros(count, dtype=np.int32)
        for j in range(d):
            sym |= (((inputs[:, j] >> p) & 1) << j).astype(np.int32)
        weight += out[state, sym]
        state = nxt[state, sym]
    zero = np.zeros(count, dtype=np.int32)
    for _ in range(pad):
        weight += out[state, zero]
        state = nxt[state, zero]
    return weight


def recode_weights_range(l, u, w, start, stop):
    half = np.int64(1) << (w - 1)
    numax = u - l - half
    n = np.arange(start, stop, dtype=np.int64)
    h = np.zeros(n.shape, dtype=np.int32)
    active = n != 0
    while active.any():
        odd = active & ((n & 1) == 1)
        even = active & ~odd
        n[even] >>= 1
        if odd.any():
            r = (n[odd] - l) & (half - 1)
            m = (n[odd] - l - r) >> (w - 1)
            m -= ((m & 1) == 1) & (r <= numax)
            n[odd] = m
            h[odd] += 1
        active = n != 0
    return h
