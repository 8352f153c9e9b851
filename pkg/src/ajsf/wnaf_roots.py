"""Roots of z^w + z - 2 and the spectral-gap exponent of the w-NAF.

The nontrivial eigenvalues x of the w-NAF weight transducer satisfy
x^w - x^(w-1) - 2^(w-1) z = 0 at z=1; substituting z = 2/x turns this into
z^w + z - 2 = 0, whose w roots sit one per angular sector around the unit
circle.  Each is the fixed point of f_k(z) = (2-z)^(1/w) e^(2 pi i k / w)
(principal branch), a contraction with constant 1/(w-3) on its sector, so
plain iteration from the w-th root of unity converges; small w falls back
to the companion-matrix solver.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence

RESIDUAL_TOL = 1e-10
STEP_TOL = 1e-13
FIXED_POINT_MIN_W = 8


@dataclass(frozen=True)
class RootReport:
    w: int
    roots: tuple[complex, ...]        # indexed by sector k = 0..w-1
    eigenvalues: tuple[complex, ...]  # x_k = 2 / z_k
    beta0: float
    delta: float
    iterations: tuple[int, ...]

    def residual(self, k: int) -> float:
        z = self.roots[k]
        return abs(z ** self.w + z - 2)


def _sector_of(z: complex, w: int) -> int:
    return round(cmath.phase(z) * w / (2 * math.pi)) % w


def _fixed_point(w: int, k: int) -> tuple[complex, int]:
    """Iterate the sector map from the w-th root of unity."""
    phase = cmath.exp(2j * math.pi * k / w)
    z = phase
    for it in range(1, 500):
        nz = cmath.exp(cmath.log(2 - z) / w) * phase
        if abs(nz - z) < STEP_TOL:
            return nz, it
        z = nz
    raise NonConvergence(f"sector {k} fixed point did not converge (w={w})")


def find_roots(w: int) -> RootReport:
    """All w roots of z^w + z - 2, one per sector, with gap data."""
    if w < 2:
        raise ValueError(f"window width must be >= 2, got {w}")
    roots: list[complex | None] = [None] * w
    iters = [0] * w
    if w < FIXED_POINT_MIN_W:
        # contraction constant 1/(w-3) is useless here; companion matrix
        coeffs = [1.0] + [0.0] * (w - 2) + [1.0, -2.0]
        for z in np.roots(coeffs):
            z = complex(z)
            k = _sector_of(z, w)
            if roots[k] is not None:
                raise ArithmeticError(f"two roots in sector {k} for w={w}")
            roots[k] = z
    else:
        for k in range(w):
            z, it = _fixed_point(w, k)
            roots[k] = z
            iters[k] = it
    roots[0] = 1.0 + 0.0j  # exact root in sector 0
    for k, z in enumerate(roots):
        if z is None:
            raise ArithmeticError(f"no root found in sector {k} for w={w}")
        residual = abs(z ** w + z - 2)
        if residual > RESIDUAL_TOL:
            raise NonConvergence(f"sector {k} residual {residual:.2e} (w={w})")
        if k and w >= FIXED_POINT_MIN_W:
            ang = (cmath.phase(z) - 2 * math.pi * k / w + math.pi) \
                % (2 * math.pi) - math.pi
            if abs(z) > 1 + 3 / w + 1e-12 or abs(ang) > math.pi / (2 * w) + 1e-12:
                raise ArithmeticError(f"root left its sector (w={w}, k={k})")
    eigenvalues = tuple(2 / z for z in roots)
    beta0 = max(abs(x) for k, x in enumerate(eigenvalues) if k != 0)
    delta = 1.0 - math.log2(beta0)
    return RootReport(w, tuple(roots), eigenvalues, float(beta0), float(delta),
                      tuple(iters))


def delta_of(w: int) -> float:
    """Gap exponent delta = log2 of the smallest nondominant root modulus."""
    return find_roots(w).delta


def second_eigenvalue_sectors(report: RootReport) -> tuple[int, ...]:
    """Sectors achieving the second-largest eigenvalue modulus."""
    best = report.beta0
    return tuple(k for k, x in enumerate(report.eigenvalues)
                 if k != 0 and abs(abs(x) - best) < 1e-9)
