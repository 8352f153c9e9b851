# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels for the hot inner loops: running a weight
transducer over integer ranges, grids and input arrays, and the
one-dimensional recoding weight over a range."""

import numpy as np

cimport cython


def transducer_weights_range(int[:, ::1] nxt, unsigned char[:, ::1] out,
                             Py_ssize_t initial, long long start,
                             long long stop, int nbits, int pad):
    cdef Py_ssize_t count = stop - start
    res = np.zeros(count, dtype=np.int32)
    cdef int[::1] rv = res
    cdef Py_ssize_t i, state
    cdef long long n
    cdef int p, wgt, b
    for i in range(count):
        n = start + i
        state = initial
        wgt = 0
        for p in range(nbits):
            b = <int>((n >> p) & 1)
            wgt += out[state, b]
            state = nxt[state, b]
        for p in range(pad):
            wgt += out[state, 0]
            state = nxt[state, 0]
        rv[i] = wgt
    return res


def transducer_weights_grid(int[:, ::1] nxt, unsigned char[:, ::1] out,
                            Py_ssize_t initial, int d, long long n_max,
                            int nbits, int pad):
    cdef long long total = 1
    cdef int j
    for j in range(d):
        total *= n_max
    res = np.zeros(total, dtype=np.int32)
    cdef int[::1] rv = res
    cdef long long flat, tmp
    cdef long long coords[8]
    cdef Py_ssize_t state
    cdef int p, wgt, sym
    for flat in range(total):
        tmp = flat
        for j in range(d - 1, -1, -1):
            coords[j] = tmp % n_max
            tmp //= n_max
        state = initial
        wgt = 0
        for p in range(nbits):
            sym = 0
            for j in range(d):
                sym |= <int>(((coords[j] >> p) & 1) << j)
            wgt += out[state, sym]
            state = nxt[state, sym]
        for p in range(pad):
            wgt += out[state, 0]
            state = nxt[state, 0]
        rv[flat] = wgt
    return res


def transducer_weights_inputs(int[:, ::1] nxt, unsigned char[:, ::1] out,
                              Py_ssize_t initial, long long[:, ::1] inputs,
                              int nbits, int pad):
    cdef Py_ssize_t count = inputs.shape[0]
    cdef int d = <int>inputs.shape[1]
    res = np.zeros(count, dtype=np.int32)
    cdef int[::1] rv = res
    cdef Py_ssize_t i, state
    cdef int p, wgt, sym, j
    for i in range(count):
        state = initial
        wgt = 0
        for p in range(nbits):
            sym = 0
            for j in range(d):
                sym |= <int>(((inputs[i, j] >> p) & 1) << j)
            wgt += out[state, sym]
            state = nxt[state, sym]
        for p in range(pad):
            wgt += out[state, 0]
            state = nxt[state, 0]
        rv[i] = wgt
    return res


def recode_weights_range(long long l, long long u, int w,
                         long long start, long long stop):
    cdef Py_ssize_t count = stop - start
    res = np.zeros(count, dtype=np.int32)
    cdef int[::1] rv = res
    cdef long long half = (<long long>1) << (w - 1)
    cdef long long numax = u - l - half
    cdef long long n, r, m
    cdef Py_ssize_t i
    cdef int h
    for i in range(count):
        n = start + i
        h = 0
        while n != 0:
            if (n & 1) == 0:
                n >>= 1
            else:
                r = (n - l) & (half - 1)
                m = (n - l - r) >> (w - 1)
                if (m & 1) != 0 and r <= numax:
                    m -= 1
                n = m
                h += 1
        rv[i] = h
    return res
