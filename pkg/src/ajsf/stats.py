"""Exact and empirical distribution of the weight over {0,...,N-1}^d.

The exact path never enumerates: writing the count/weight-sum/weight-square
data of a set of transducer paths as a degree-2 jet (c, s, q), the
per-symbol transition matrices become jet matrices and the boundary sums
G_C(N) (inputs equal to N on the coordinates in C, below N elsewhere)
satisfy a binary recursion in N.  Multiplying on the right by the fixed
reset vector y = M_0^{4w} v turns that recursion into a vector iteration
over the bits of N, giving exact rational moments in O(log N) steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import _kernels
from .automata import Transducer, ajsf_transducer
from .digitset import DigitSet
from .errors import BudgetExceeded, NonConvergence
from .spectral import adjacency, spectral_constants

DEFAULT_BUDGET = 1 << 24


@dataclass(frozen=True)
class StatReport:
    N: int
    d: int
    mean: Fraction
    variance: Fraction
    count: int
    psi1_residual: Optional[float] = None
    ks_distance: Optional[float] = None


def normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


class JetVec:
    """Columns (c, s, q): path count, output-bit sum, squared sum."""

    __slots__ = ("c", "s", "q")

    def __init__(self, c, s, q):
        self.c, self.s, self.q = c, s, q

    def copy(self) -> "JetVec":
        return JetVec(self.c.copy(), self.s.copy(), self.q.copy())

    def __add__(self, other) -> "JetVec":
        return JetVec(self.c + other.c, self.s + other.s, self.q + other.q)

    def scalar(self, index: int) -> tuple[int, int, int]:
        return int(self.c[index]), int(self.s[index]), int(self.q[index])


class MomentEngine:
    """Jet-matrix machinery over one transducer.

    Matrices come in pairs (Bc, Bs): plain transition counts and
    output-weighted counts.  Since outputs are single bits, the squared
    part of a matrix equals its weight part, so a jetматvec needs four
    integer matrix-vector products.
    """

    def __init__(self, tr: Transducer, exact_object: bool = False):
        self.tr = tr
        self.n = tr.n_states
        self.d = tr.d
        dtype = object if exact_object else np.int64
        self.dtype = dtype
        n = self.n
        self._mc = []
        self._ms = []
        for sym in range(tr.n_symbols):
            mc = np.zeros((n, n), dtype=dtype)
            ms = np.zeros((n, n), dtype=dtype)
            for i in range(n):
                j = tr.nxt[i][sym]
                mc[i, j] += 1
                if tr.out[i][sym]:
                    ms[i, j] += 1
            self._mc.append(mc)
            self._ms.append(ms)
        self._bcache: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}
        self._y: JetVec | None = None

    def b_matrix(self, zero_mask: int, one_mask: int):
        if zero_mask & one_mask:
            raise ValueError("coordinate sets must be disjoint")
        key = (zero_mask, one_mask)
        hit = self._bcache.get(key)
        if hit is not None:
            return hit
        n = self.n
        bc = np.zeros((n, n), dtype=self.dtype)
        bs = np.zeros((n, n), dtype=self.dtype)
        for sym in range(self.tr.n_symbols):
            if sym & zero_mask or (sym & one_mask) != one_mask:
                continue
            bc = bc + self._mc[sym]
            bs = bs + self._ms[sym]
        self._bcache[key] = (bc, bs)
        return bc, bs

    def matvec(self, mats, g: JetVec) -> JetVec:
        bc, bs = mats
        bs_c = np.dot(bs, g.c)
        return JetVec(np.dot(bc, g.c),
                      bs_c + np.dot(bc, g.s),
                      bs_c + 2 * np.dot(bs, g.s) + np.dot(bc, g.q))

    def zero_vec(self) -> JetVec:
        z = np.zeros(self.n, dtype=self.dtype)
        return JetVec(z.copy(), z.copy(), z.copy())

    def y_vector(self) -> JetVec:
        """y = M_0^{4w} v; absorbing it makes the recursion exact at n = 0."""
        if self._y is None:
            y = self.zero_vec()
            y.c[self.tr.initial] = 1
            m0 = (self._mc[0], self._ms[0])
            for _ in range(self.tr.reset_len):
                y = self.matvec(m0, y)
            self._y = y
        return self._y.copy()

    def initial_gs(self) -> dict[int, JetVec]:
        """g_C(1) = M_{1 on C} y (and y itself for C = empty)."""
        y = self.y_vector()
        gs = {0: y}
        for cmask in range(1, 1 << self.d):
            gs[cmask] = self.matvec((self._mc[cmask], self._ms[cmask]), y)
        return gs

    def step(self, gs: dict[int, JetVec], bit: int) -> dict[int, JetVec]:
        full = (1 << self.d) - 1
        new = {}
        for cmask in range(1 << self.d):
            if bit == 0:
                new[cmask] = self.matvec(self.b_matrix(cmask, 0), gs[cmask])
            else:
                comp = full & ~cmask
                acc = self.zero_vec()
                dmask = comp
                while True:
                    acc = acc + self.matvec(self.b_matrix(dmask, cmask),
                                            gs[cmask | dmask])
                    if dmask == 0:
                        break
                    dmask = (dmask - 1) & comp
                new[cmask] = acc
        return new

    def chain(self, n_value: int) -> dict[int, JetVec]:
        """g vectors at N = n_value, iterating over its binary digits."""
        if n_value < 1:
            raise ValueError("N must be >= 1")
        gs = self.initial_gs()
        for k in range(n_value.bit_length() - 2, -1, -1):
            gs = self.step(gs, (n_value >> k) & 1)
        return gs

    def chain_with_prefixes(self, n_value: int) -> dict[int, dict[int, JetVec]]:
        """g vectors at every binary prefix of n_value, keyed by prefix value."""
        if n_value < 1:
            raise ValueError("N must be >= 1")
        gs = self.initial_gs()
        out = {1: gs}
        for k in range(n_value.bit_length() - 2, -1, -1):
            gs = self.step(gs, (n_value >> k) & 1)
            out[n_value >> k] = gs
        return out

    def h_vector(self, gs: dict[int, JetVec]) -> JetVec:
        """H(N) y = sum over nonempty D of B_{D,empty} g_D(N)."""
        acc = self.zero_vec()
        for dmask in range(1, 1 << self.d):
            acc = acc + self.matvec(self.b_matrix(dmask, 0), gs[dmask])
        return acc

    def raw_moments(self, n_value: int) -> tuple[int, int, int]:
        gs = self.chain(n_value)
        c, s, q = gs[0].scalar(self.tr.initial)
        if c != n_value ** self.d:
            raise ArithmeticError("path count mismatch in the moment recursion")
        return c, s, q


def _needs_object(n_value: int, d: int, n_states: int, w: int) -> bool:
    weight_cap = n_value.bit_length() + 4 * w + 1
    return n_value ** d * weight_cap ** 2 * n_states >= (1 << 62)


_ENGINES: dict[tuple, MomentEngine] = {}


def _engine_for(ds: DigitSet, d: int, exact_object: bool) -> MomentEngine:
    key = (ds.l, ds.u, d, exact_object)
    eng = _ENGINES.get(key)
    if eng is None:
        eng = MomentEngine(ajsf_transducer(ds, d), exact_object)
        _ENGINES[key] = eng
    return eng


def exact_moments(ds: DigitSet, d: int, n_value: int,
                  e_constant: Fraction | None = None) -> StatReport:
    """Exact mean and variance of the weight over {0,...,N-1}^d."""
    if n_value < 1:
        raise ValueError("N must be >= 1")
    eng = _engine_for(ds, d, _needs_object(n_value, d, 100, ds.w))
    c, s, q = eng.raw_moments(n_value)
    mean = Fraction(s, c)
    variance = Fraction(q, c) - mean * mean
    residual = None
    if e_constant is not None:
        residual = float(mean) - float(e_constant) * math.log2(n_value)
    return StatReport(n_value, d, mean, variance, c, psi1_residual=residual)


def moments_upto(ds: DigitSet, d: int, n_max: int) -> list[tuple[int, int, int]]:
    """Raw (count, sum h, sum h^2) for every N in 1..n_max via shared prefixes."""
    eng = _engine_for(ds, d, _needs_object(n_max, d, 100, ds.w))
    table: list[dict[int, JetVec] | None] = [None] * (n_max + 1)
    table[1] = eng.initial_gs()
    for n_value in range(2, n_max + 1):
        table[n_value] = eng.step(table[n_value >> 1], n_value & 1)
    res = []
    for n_value in range(1, n_max + 1):
        c, s, q = table[n_value][0].scalar(eng.tr.initial)
        if c != n_value ** d:
            raise ArithmeticError("path count mismatch in the moment recursion")
        res.append((c, s, q))
    return res


def empirical_weights(ds: DigitSet, d: int, n_value: int,
                      budget: int = DEFAULT_BUDGET,
                      tr: Transducer | None = None) -> np.ndarray:
    if n_value ** d > budget:
        raise BudgetExceeded(f"{n_value}^{d} weight evaluations exceed {budget}")
    if tr is None:
        tr = _engine_for(ds, d, False).tr
    if d == 1:
        return _kernels.weights_range(tr, 0, n_value)
    return _kernels.weights_grid(tr, n_value)


def empirical_stats(ds: DigitSet, d: int, n_value: int,
                    budget: int = DEFAULT_BUDGET) -> StatReport:
    """Direct enumeration over the full grid; exact rational mean/variance."""
    weights = empirical_weights(ds, d, n_value, budget)
    count = int(weights.size)
    s = int(weights.sum(dtype=np.int64))
    q = int(np.dot(weights.astype(np.int64), weights.astype(np.int64)))
    mean = Fraction(s, count)
    return StatReport(n_value, d, mean, Fraction(q, count) - mean * mean, count)


def fluctuation_table(ds: DigitSet, d: int, samples,
                      e_constant: Fraction | None = None):
    """Rows (N, frac(log2 N), mean residual after removing the linear term)."""
    if e_constant is None:
        e_constant = spectral_constants(_engine_for(ds, d, False).tr).e
    rows = []
    ef = float(e_constant)
    for n_value in sorted(set(int(x) for x in samples)):
        rep = exact_moments(ds, d, n_value)
        log2n = math.log2(n_value)
        rows.append((n_value, log2n % 1.0, float(rep.mean) - ef * log2n))
    return rows


def _integer_root(value: int, k: int) -> int:
    """Largest r with r^k <= value."""
    if value < 0 or k < 1:
        raise ValueError("bad root arguments")
    if value in (0, 1) or k == 1:
        return value
    r = 1 << ((value.bit_length() + k - 1) // k)
    while True:
        nr = ((k - 1) * r + value // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r ** k > value:
        r -= 1
    return r


def _left_perron(a1: np.ndarray, d: int, tol: float = 1e-14,
                 max_iter: int = 100_000) -> np.ndarray:
    """Left eigenvector of the counting matrix at 2^d, scaled to sum 1."""
    n = a1.shape[0]
    vec = np.full(n, 1.0 / n)
    af = a1.astype(float)
    mu = float(1 << d)
    for _ in range(max_iter):
        new = vec @ af / mu
        new /= new.sum()
        if np.abs(new - vec).max() < tol:
            return new
        vec = new
    raise NonConvergence("left Perron iteration did not converge")


def psi_at(ds: DigitSet, d: int, x, truncation: int = 40) -> float:
    """The periodic profile at t=0, via the rank-one projector series.

    The profile equals 1 identically at t=0, so evaluating the truncated
    series is a consistency check of the projector, the H values, and the
    recursion; the truncation error is geometric with ratio beta0/2^d.
    The series needs the binary digits of 2^frac(x); x is snapped to a
    rational with a small denominator (the profile is continuous in x) so
    the digits come from exact integer roots.
    """
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    frac = Fraction(x).limit_denominator(4096) % 1
    eng = _engine_for(ds, d, True)
    tr = eng.tr
    ell = _left_perron(adjacency(tr).at_one(), d)

    def count_dot(vec: JetVec) -> float:
        return float(np.dot(ell, vec.c.astype(np.float64)))

    a, b = frac.numerator, frac.denominator
    total = count_dot(eng.y_vector())  # p = 0 term: H(0) y = y
    gs = eng.initial_gs()
    m_cur = 1
    scale = float(1 << d)
    for p in range(1, truncation):
        m_next = _integer_root(1 << (p * b + a), b)
        bit = m_next - 2 * m_cur
        if bit not in (0, 1):
            raise ArithmeticError("binary digit extraction failed")
        if bit:
            total += count_dot(eng.h_vector(gs)) / scale ** p
        gs = eng.step(gs, bit)
        m_cur = m_next
    return 2.0 ** (-d * float(frac)) * total


def weight_histogram(ds: DigitSet, d: int, n_value: int,
                     budget: int = DEFAULT_BUDGET, jobs: int = 1) -> np.ndarray:
    """Histogram of weights over {0,...,N-1}^d; range-sharded when jobs > 1."""
    if n_value ** d > budget:
        raise BudgetExceeded(f"{n_value}^{d} weight evaluations exceed {budget}")
    tr = _engine_for(ds, d, False).tr
    if d == 1 and jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        bounds = [(n_value * k // jobs, n_value * (k + 1) // jobs)
                  for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_histogram_chunk,
                                  [(tr, lo, hi) for lo, hi in bounds]))
        width = max(len(p) for p in parts)
        hist = np.zeros(width, dtype=np.int64)
        for part in parts:
            hist[:len(part)] += part
        return hist
    weights = empirical_weights(ds, d, n_value, budget, tr)
    return np.bincount(weights)


def _histogram_chunk(args) -> np.ndarray:
    tr, lo, hi = args
    return np.bincount(_kernels.weights_range(tr, lo, hi))


def normality_check(ds: DigitSet, d: int, n_value: int,
                    budget: int = DEFAULT_BUDGET, jobs: int = 1) -> float:
    """Sup distance between the standardized weight CDF and the normal CDF.

    Standardization uses the exact spectral constants e and v; the
    empirical CDF is exact (full enumeration, histogram form).
    """
    res = spectral_constants(_engine_for(ds, d, False).tr)
    if res.v <= 0:
        raise ArithmeticError("variance constant must be positive")
    hist = weight_histogram(ds, d, n_value, budget, jobs)
    log2n = math.log2(n_value)
    mu = float(res.e) * log2n
    sigma = math.sqrt(float(res.v) * log2n)
    total = int(hist.sum())
    dist = 0.0
    cum = 0
    for k, cnt in enumerate(hist):
        phi = normal_cdf((k - mu) / sigma)
        dist = max(dist, abs(cum / total - phi))
        cum += int(cnt)
        dist = max(dist, abs(cum / total - phi))
    return dist
