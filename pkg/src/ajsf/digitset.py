"""Contiguous digit sets D(l,u) = {l, ..., u} and their derived quantities.

Everything downstream (recoding, transducers, spectral constants) is
parameterized by such a set.  The window width w is the unique integer with
2^(w-1) <= u - l + 1 < 2^w, and sets with l <= -2^(w-1) are normalized by
negating the digit range, which maps expansions of n to expansions of -n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def _bits(value: int, width: int) -> tuple[int, ...]:
    """Little-endian binary digits of a non-negative value, padded to width."""
    if value < 0:
        raise ValueError(f"cannot take binary digits of {value}")
    digits = tuple((value >> i) & 1 for i in range(width))
    if value >> width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return digits


@dataclass(frozen=True)
class DigitSet:
    """The digit set D(l,u) after normalization, plus derived constants.

    `negated` records that the requested set was (-u, -l); weights are
    unaffected, digit values of expansions get their signs flipped back.
    """

    l: int
    u: int
    negated: bool = False
    w: int = field(init=False)
    lam: Fraction = field(init=False)
    tilde_l: int = field(init=False)
    tilde_u: int = field(init=False)
    tilde_v: int = field(init=False)
    lbits: tuple[int, ...] = field(init=False)
    ubits: tuple[int, ...] = field(init=False)
    vbits: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        l, u = self.l, self.u
        size = u - l + 1
        w = size.bit_length()
        half = 1 << (w - 1)
        if l <= -half:
            raise ValueError("digit set not normalized; use digit_set(l, u)")
        sign_l = -1 if l % 2 else 1
        sign_u = -1 if u % 2 else 1
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "lam",
                           Fraction(2 * size - sign_l - sign_u, 1 << w))
        tilde_l = -l
        tilde_u = u - l - half
        tilde_v = size % half
        object.__setattr__(self, "tilde_l", tilde_l)
        object.__setattr__(self, "tilde_u", tilde_u)
        object.__setattr__(self, "tilde_v", tilde_v)
        object.__setattr__(self, "lbits", _bits(tilde_l, w - 1))
        object.__setattr__(self, "ubits", _bits(max(tilde_u, 0), w - 1))
        object.__setattr__(self, "vbits", _bits(tilde_v, w - 1))
        assert half <= size < 2 * half
        assert 0 <= tilde_l < half and -1 <= tilde_u < half

    @property
    def size(self) -> int:
        return self.u - self.l + 1

    def digits(self) -> range:
        return range(self.l, self.u + 1)

    def __contains__(self, a: int) -> bool:
        return self.l <= a <= self.u

    def is_unique(self, a: int) -> bool:
        """Digits whose residue mod 2^(w-1) has a single representative."""
        self._check(a)
        half = 1 << (self.w - 1)
        return self.u - half < a < self.l + half

    def is_nonunique(self, a: int) -> bool:
        self._check(a)
        return not self.is_unique(a)

    def is_upper(self, a: int) -> bool:
        """Membership in the upper complete residue system mod 2^(w-1)."""
        self._check(a)
        return self.u - (1 << (self.w - 1)) < a <= self.u

    def unique_digits(self) -> list[int]:
        return [a for a in self.digits() if self.is_unique(a)]

    def nonunique_digits(self) -> list[int]:
        return [a for a in self.digits() if self.is_nonunique(a)]

    def upper_digits(self) -> list[int]:
        return [a for a in self.digits() if self.is_upper(a)]

    def _check(self, a: int):
        if not self.l <= a <= self.u:
            raise ValueError(f"digit {a} outside [{self.l}, {self.u}]")

    def describe(self) -> str:
        neg = ", negated" if self.negated else ""
        return (f"D({self.l},{self.u}): w={self.w}, lambda={self.lam}, "
                f"~l={self.tilde_l}, ~u={self.tilde_u}, ~v={self.tilde_v}{neg}")


def digit_set(l: int, u: int) -> DigitSet:
    """Build the digit set for bounds l <= 0 < 1 <= u, normalizing if needed."""
    if l > 0:
        raise ValueError(f"lower bound must satisfy l <= 0, got {l}")
    if u < 1:
        raise ValueError(f"upper bound must satisfy u >= 1, got {u}")
    w = (u - l + 1).bit_length()
    if l <= -(1 << (w - 1)):
        return DigitSet(-u, -l, negated=True)
    return DigitSet(l, u)


def wnaf_digit_set(w: int) -> DigitSet:
    """Symmetric odd set {-(2^(w-1)-1), ..., 2^(w-1)-1} realizing the w-NAF."""
    if w < 2:
        raise ValueError(f"window width must be >= 2, got {w}")
    m = (1 << (w - 1)) - 1
    return digit_set(-m, m)


def classify(a: int, ds: DigitSet) -> tuple[str, str]:
    """Classify a digit as (unique|nonunique, upper|lower)."""
    return ("unique" if ds.is_unique(a) else "nonunique",
            "upper" if ds.is_upper(a) else "lower")
