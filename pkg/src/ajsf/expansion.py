"""Joint digit expansions over D(l,u): recoding, evaluation, validation.

The central recoding is the minimal-weight sparse form for vectors of
integers (any dimension), produced right-to-left: an odd position emits the
digit column congruent to the input mod 2^(w-1), possibly bumped by 2^(w-1)
in non-unique coordinates to keep later digits sparse, and is followed by
w-2 forced zero columns.  The width-w NAF is the one-dimensional special
case over the symmetric odd digit set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .digitset import DigitSet, digit_set, wnaf_digit_set

Column = tuple[int, ...]


@dataclass(frozen=True)
class JointExpansion:
    """A d-row digit matrix; column j holds the coefficients of 2^j.

    Trailing all-zero columns are trimmed so equality compares canonical
    forms.  Digits must lie in the digit-set bounds (original orientation
    when the set was normalized by negation).
    """

    columns: tuple[Column, ...]
    ds: DigitSet
    d: int

    def __post_init__(self):
        lo, hi = self.digit_bounds()
        cols = tuple(tuple(c) for c in self.columns)
        while cols and not any(cols[-1]):
            cols = cols[:-1]
        object.__setattr__(self, "columns", cols)
        for col in cols:
            if len(col) != self.d:
                raise ValueError(f"column {col} is not {self.d}-dimensional")
            for a in col:
                if not lo <= a <= hi:
                    raise ValueError(f"digit {a} outside [{lo}, {hi}]")

    def digit_bounds(self) -> tuple[int, int]:
        if self.ds.negated:
            return -self.ds.u, -self.ds.l
        return self.ds.l, self.ds.u

    def __len__(self) -> int:
        return len(self.columns)

    def rows(self) -> list[list[int]]:
        """Digit rows, most significant position first."""
        return [[col[i] for col in reversed(self.columns)] for i in range(self.d)]

    def format(self) -> str:
        if not self.columns:
            return "(empty)"
        return "\n".join(" ".join(str(a) for a in row) for row in self.rows())

    def to_json(self) -> str:
        lo, hi = self.digit_bounds()
        return json.dumps({"l": lo, "u": hi, "d": self.d, "rows": self.rows()})


def expansion_from_json(text: str) -> JointExpansion:
    obj = json.loads(text)
    ds = digit_set(obj["l"], obj["u"])
    rows = obj["rows"]
    d = obj["d"]
    if len(rows) != d:
        raise ValueError(f"expected {d} rows, got {len(rows)}")
    length = len(rows[0]) if rows else 0
    if any(len(r) != length for r in rows):
        raise ValueError("rows have unequal lengths")
    cols = tuple(tuple(row[length - 1 - j] for row in rows) for j in range(length))
    return JointExpansion(cols, ds, d)


def value(e: JointExpansion) -> tuple[int, ...]:
    """The integer vector represented by the expansion."""
    out = [0] * e.d
    for j, col in enumerate(e.columns):
        for i, a in enumerate(col):
            out[i] += a << j
    return tuple(out)


def hamming_weight(e: JointExpansion) -> int:
    """Number of nonzero digit columns."""
    return sum(1 for col in e.columns if any(col))


def _as_vector(n) -> tuple[int, ...]:
    if isinstance(n, int):
        return (n,)
    return tuple(int(x) for x in n)


def _check_domain(n: tuple[int, ...], ds: DigitSet):
    if ds.l == 0 and not ds.negated and any(x < 0 for x in n):
        raise ValueError("negative components need a digit set with l < 0")


def _recode(n: tuple[int, ...], ds: DigitSet, record: bool):
    """Core right-to-left recoding; returns (weight, columns or None).

    Expects the normalized orientation (callers handle the negation flag).
    Asserts the contraction that guarantees termination: the max norm never
    exceeds max(initial norm, max(|l|, u)).
    """
    l, u, w = ds.l, ds.u, ds.w
    half = 1 << (w - 1)
    d = len(n)
    m = list(n)
    cols: list[Column] | None = [] if record else None
    h = 0
    bound = max(max(abs(x) for x in m), -l, u) if any(m) else 0
    limit = 2 * bound.bit_length() + 8 * w + 64
    for _ in range(limit):
        if not any(m):
            break
        if all(x % 2 == 0 for x in m):
            m = [x >> 1 for x in m]
            if record:
                cols.append((0,) * d)
        else:
            a = [l + ((x - l) % half) for x in m]
            h += 1
            m = [(x - aj) >> (w - 1) for x, aj in zip(m, a)]
            i_unique = [j for j in range(d) if ds.is_unique(a[j])]
            i_nonunique = [j for j in range(d) if not ds.is_unique(a[j])]
            if all(m[j] % 2 == 0 for j in i_unique):
                for j in i_nonunique:
                    if m[j] % 2 != 0:
                        a[j] += half
                        m[j] -= 1
            else:
                for j in i_nonunique:
                    if m[j] % (half) == (u + 1) % half:
                        a[j] += half
                        m[j] -= 1
            if record:
                cols.append(tuple(a))
                cols.extend((0,) * d for _ in range(w - 2))
        assert max(abs(x) for x in m) <= bound if any(m) else True, \
            "recoding failed to contract"
    else:
        raise AssertionError("recoding did not terminate within its bound")
    return h, cols


def ajsf(n, ds: DigitSet) -> JointExpansion:
    """The minimal-weight sparse expansion of an integer vector."""
    vec = _as_vector(n)
    _check_domain(vec, ds)
    if ds.negated:
        _, cols = _recode(tuple(-x for x in vec), ds, record=True)
        cols = [tuple(-a for a in col) for col in cols]
    else:
        _, cols = _recode(vec, ds, record=True)
    return JointExpansion(tuple(cols), ds, len(vec))


def ajsf_weight(n, ds: DigitSet) -> int:
    """Weight of the sparse expansion, without materializing the digits."""
    vec = _as_vector(n)
    _check_domain(vec, ds)
    if ds.negated:
        vec = tuple(-x for x in vec)
    h, _ = _recode(vec, ds, record=False)
    return h


def ajsf_weight_1d(n: int, ds: DigitSet) -> int:
    """One-dimensional weight recursion (specialized inner branch)."""
    _check_domain((n,), ds)
    if ds.negated:
        n = -n
    l, u, w = ds.l, ds.u, ds.w
    half = 1 << (w - 1)
    nonuniq_max = u - l - half
    h = 0
    while n:
        if n % 2 == 0:
            n >>= 1
        else:
            r = (n - l) % half
            h += 1
            m = (n - l - r) >> (w - 1)
            if m % 2 != 0 and r <= nonuniq_max:
                m -= 1
            n = m
    return h


def wnaf(n: int, w: int) -> JointExpansion:
    """Width-w nonadjacent form over {0, +-1, +-3, ..., +-(2^(w-1)-1)}."""
    ds = wnaf_digit_set(w)
    full = 1 << w
    half = 1 << (w - 1)
    cols = []
    m = n
    while m:
        if m % 2:
            digit = m % full
            if digit >= half:
                digit -= full
            m -= digit
        else:
            digit = 0
        cols.append((digit,))
        m >>= 1
    return JointExpansion(tuple(cols), ds, 1)


def is_wnaf(e: JointExpansion, w: int) -> bool:
    """Syntax check: odd digits below 2^(w-1), each followed by w-1 zeros."""
    half = 1 << (w - 1)
    digits = [col[0] for col in e.columns]
    for j, a in enumerate(digits):
        if a == 0:
            continue
        if a % 2 == 0 or abs(a) >= half:
            return False
        if any(digits[j + 1:j + w]):
            return False
    return True


def validate_ajsf(e: JointExpansion) -> bool:
    """Check the syntactic conditions characterizing the sparse form.

    (1) every column is zero or contains an odd digit;
    (2) a nonzero column is followed by w-2 zero columns;
    (3) when columns j and j+w-1 are both nonzero, the unique/non-unique
        constraints between their coordinates hold.
    """
    ds = e.ds
    w, u = ds.w, ds.u
    half = 1 << (w - 1)
    cols = [tuple(-a for a in col) for col in e.columns] if ds.negated \
        else list(e.columns)
    n_cols = len(cols)

    def col_at(j):
        return cols[j] if j < n_cols else (0,) * e.d

    for j, col in enumerate(cols):
        if not any(col):
            continue
        if not any(a % 2 != 0 for a in col):
            return False
        for k in range(j + 1, min(j + w - 1, n_cols)):
            if any(cols[k]):
                return False
        nxt = col_at(j + w - 1)
        if any(nxt):
            if not any(nxt[i] % 2 != 0 and ds.is_unique(col[i])
                       for i in range(e.d)):
                return False
            for i in range(e.d):
                a = col[i]
                if ds.is_nonunique(a) and nxt[i] % half == (u + 1) % half:
                    return False
                if ds.is_nonunique(a) and ds.is_upper(a) \
                        and nxt[i] % half != u % half:
                    return False
    return True
