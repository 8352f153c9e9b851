"""Exact spectral analysis of the weight transducers.

The per-symbol transition matrices have entries z^h for an output bit h;
their sum A is the symbolic adjacency matrix whose dominant eigenvalue
mu(z) near z=1 carries the weight distribution: with mu(1) = 2^d, the
growth constants of mean and variance are rational functions of the
partial derivatives of the characteristic polynomial at (2^d, 1), and the
spectral gap to the second eigenvalue controls the error terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .automata import Transducer
from .errors import NonConvergence
from .polynomial import (BiPoly, ZPoly, Z_ONE, zp_add, zp_deriv, zp_eval,
                         zp_exact_div, zp_mul, zp_trim)


@dataclass(frozen=True)
class SymbolicMatrix:
    """Square matrix of integer z-polynomials, transducer state order."""

    entries: tuple[tuple[ZPoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def z_degree(self) -> int:
        return max((len(p) - 1 for row in self.entries for p in row if p),
                   default=0)

    def slices(self, dtype) -> list[np.ndarray]:
        """One integer matrix per z-degree."""
        n, zd = self.size, self.z_degree()
        out = [np.zeros((n, n), dtype=dtype) for _ in range(zd + 1)]
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                for e, c in enumerate(p):
                    if c:
                        out[e][i, j] = c
        return out

    def at_one(self) -> np.ndarray:
        """Integer matrix A(1) (the plain adjacency counts)."""
        n = self.size
        out = np.zeros((n, n), dtype=np.int64)
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                out[i, j] = sum(p)
        return out

    def weight_at_one(self) -> np.ndarray:
        """Entrywise derivative d/dz at z=1 (the output-bit counts)."""
        n = self.size
        out = np.zeros((n, n), dtype=np.int64)
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                out[i, j] = zp_eval(zp_deriv(p), 1)
        return out


@dataclass(frozen=True)
class CharPoly:
    """det(xI - A) as a bivariate polynomial, coeffs[k] multiplying x^k."""

    coeffs: BiPoly

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, x: int, z: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + zp_eval(c, z)
        return acc

    def at_z_one(self) -> list[int]:
        return [zp_eval(c, 1) for c in self.coeffs]


@dataclass(frozen=True)
class SpectralResult:
    e: Fraction
    v: Fraction
    mu0: int
    beta0: float
    delta: float


def transition_matrices(tr: Transducer) -> dict[int, SymbolicMatrix]:
    """Per-input-symbol matrices M_sym with entry z^output at (from, to)."""
    n = tr.n_states
    mats = {}
    for sym in range(tr.n_symbols):
        rows = [[() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            j = tr.nxt[i][sym]
            rows[i][j] = (1,) if tr.out[i][sym] == 0 else (0, 1)
        mats[sym] = SymbolicMatrix(tuple(tuple(r) for r in rows))
    total = sum(m.at_one().sum(axis=1) for m in mats.values())
    assert (total == tr.n_symbols).all(), "rows must sum to 2^d over all symbols"
    return mats


def aggregate(mats: dict[int, SymbolicMatrix], zero_coords: int,
              one_coords: int) -> SymbolicMatrix:
    """B_{C,D}: sum over symbols that are 0 on C and 1 on D (bitmask args)."""
    if zero_coords & one_coords:
        raise ValueError("coordinate sets must be disjoint")
    picked = None
    for sym, mat in mats.items():
        if sym & zero_coords or (sym & one_coords) != one_coords:
            continue
        if picked is None:
            picked = [[p for p in row] for row in mat.entries]
        else:
            for i, row in enumerate(mat.entries):
                picked[i] = [zp_add(a, b) for a, b in zip(picked[i], row)]
    if picked is None:
        raise ValueError("no symbols match the coordinate constraints")
    return SymbolicMatrix(tuple(tuple(r) for r in picked))


def adjacency(tr: Transducer) -> SymbolicMatrix:
    return aggregate(transition_matrices(tr), 0, 0)


def _poly_mat_mul(p_slices, a_slices, dtype):
    """(polynomial matrix) x (polynomial matrix) via z-degree convolution."""
    n = p_slices[0].shape[0]
    out_deg = len(p_slices) + len(a_slices) - 2
    out = [np.zeros((n, n), dtype=dtype) for _ in range(out_deg + 1)]
    for i, p in enumerate(p_slices):
        for j, a in enumerate(a_slices):
            out[i + j] += np.dot(p, a)
    return out


def char_poly(a: SymbolicMatrix) -> CharPoly:
    """det(xI - A), exactly.

    Trace method: power sums p_k = tr(A^k) feed Newton's identities, whose
    divisions by k are exact over the integer coefficient ring.  Matrix
    powers use int64 slices when the row-sum bound keeps them in range,
    otherwise Python integers.
    """
    n = a.size
    if n == 0:
        return CharPoly((Z_ONE,))
    row_sum = int(a.at_one().sum(axis=1).max())
    dtype: type = np.int64
    if n * math.log2(max(row_sum, 2)) > 61:
        dtype = object
    a_slices = a.slices(dtype)
    power = a_slices
    traces: list[ZPoly] = [()]
    for _ in range(n):
        traces.append(zp_trim(tuple(int(np.trace(s)) for s in power)))
        power = _poly_mat_mul(power, a_slices, dtype)
    elementary: list[ZPoly] = [Z_ONE]
    for k in range(1, n + 1):
        acc: ZPoly = ()
        sign = 1
        for i in range(1, k + 1):
            term = zp_mul(elementary[k - i], traces[i])
            acc = zp_add(acc, term if sign > 0 else tuple(-c for c in term))
            sign = -sign
        elementary.append(zp_exact_div(acc, k))
    coeffs = [elementary[n - k] if (n - k) % 2 == 0
              else tuple(-c for c in elementary[n - k])
              for k in range(n + 1)]
    return CharPoly(tuple(coeffs))


def _partials(p: CharPoly, x0: int):
    """(p_x, p_z, p_xx, p_xz, p_zz) at (x0, 1), exact integers."""
    px = pz = pxx = pxz = pzz = 0
    for k, c in enumerate(p.coeffs):
        c1 = zp_eval(c, 1)
        d1 = zp_eval(zp_deriv(c), 1)
        d2 = zp_eval(zp_deriv(c, 2), 1)
        if k >= 1:
            px += k * c1 * x0 ** (k - 1)
            pxz += k * d1 * x0 ** (k - 1)
        if k >= 2:
            pxx += k * (k - 1) * c1 * x0 ** (k - 2)
        pz += d1 * x0 ** k
        pzz += d2 * x0 ** k
    return px, pz, pxx, pxz, pzz


def second_eigenvalue(p: CharPoly, d: int,
                      residual_tol: float = 1e-10) -> tuple[float, float]:
    """Modulus of the second-largest root of p(x, 1) and the gap exponent.

    The known dominant root 2^d is deflated exactly before the numeric
    companion-matrix solve.
    """
    mu0 = 1 << d
    coeffs = p.at_z_one()
    if p.eval(mu0, 1) != 0:
        raise ArithmeticError(f"{mu0} is not a root of the z=1 polynomial")
    quotient = []
    acc = 0
    for c in reversed(coeffs):
        acc = acc * mu0 + c
        quotient.append(acc)
    if quotient.pop() != 0:
        raise ArithmeticError("exact deflation failed")
    while quotient and quotient[0] == 0:
        quotient.pop(0)
    if len(quotient) <= 1:
        return 0.0, float("inf")
    roots = np.roots([float(c) for c in quotient])
    scale = sum(abs(c) for c in coeffs)
    for r in roots:
        residual = abs(_horner_complex(coeffs, r))
        if residual > residual_tol * scale * max(1.0, abs(r)) ** len(coeffs):
            raise NonConvergence(f"root residual {residual:.3e} too large")
        if abs(r - mu0) < 1e-9 * mu0:
            raise ArithmeticError("dominant eigenvalue is not simple")
    beta0 = float(max(abs(r) for r in roots))
    delta = d - math.log2(beta0) if beta0 > 0 else float("inf")
    return beta0, delta


def _horner_complex(coeffs: list[int], x: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def dominant_constants(p: CharPoly, d: int) -> SpectralResult:
    """Exact growth constants of mean and variance from the dominant root.

    Implicit differentiation of p(mu(z), z) = 0 at (2^d, 1) gives mu' and
    mu''; converting the e^{it} substitution to z-derivatives yields
    e = mu'/2^d and v = (mu'' + mu')/2^d - (mu'/2^d)^2, both rational.
    """
    mu0 = 1 << d
    if p.eval(mu0, 1) != 0:
        raise ArithmeticError(f"char poly does not vanish at ({mu0}, 1); "
                              "the transducer construction is inconsistent")
    px, pz, pxx, pxz, pzz = _partials(p, mu0)
    if px == 0:
        raise ArithmeticError("dominant root is not simple (p_x = 0)")
    mu1 = Fraction(-pz, px)
    mu2 = -(Fraction(pxx) * mu1 ** 2 + 2 * Fraction(pxz) * mu1
            + Fraction(pzz)) / px
    e = mu1 / mu0
    v = (mu2 + mu1) / mu0 - e ** 2
    beta0, delta = second_eigenvalue(p, d)
    return SpectralResult(e=e, v=v, mu0=mu0, beta0=beta0, delta=delta)


def spectral_constants(tr: Transducer) -> SpectralResult:
    """Convenience: adjacency -> characteristic polynomial -> constants."""
    return dominant_constants(char_poly(adjacency(tr)), tr.d)
