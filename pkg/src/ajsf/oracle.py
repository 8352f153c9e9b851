"""Brute-force ground truth, independent of the recoding algorithms.

Minimal weights come from the value graph n -> (n - e)/2 over digit columns
e congruent to n mod 2 (edge cost 1 for nonzero columns): a 0-1 shortest
path to the zero vector.  Expansion uniqueness is checked by exhaustive
column-wise enumeration with the syntax conditions applied on the fly.
"""

from __future__ import annotations

from collections import deque
from itertools import product

from .digitset import DigitSet
from .errors import BudgetExceeded
from .expansion import JointExpansion, validate_ajsf


class MemoTable:
    """Minimal-weight table for one digit set and dimension.

    Distances are computed by 0-1 BFS from 0 over the reversed edges
    m -> 2m + e, confined to the box that any optimal forward path stays
    in (the max norm never exceeds max(initial norm, |l|, u)).
    """

    def __init__(self, ds: DigitSet, d: int, budget: int = 20_000_000):
        self.ds = ds
        self.d = d
        self.budget = budget
        self.dist: dict[tuple[int, ...], int] = {}
        self.radius = -1
        lo, hi = (-ds.u, -ds.l) if ds.negated else (ds.l, ds.u)
        self.columns = [c for c in product(range(lo, hi + 1), repeat=d)]

    def ensure(self, radius: int):
        if radius <= self.radius:
            return
        if (2 * radius + 1) ** self.d > self.budget:
            raise BudgetExceeded(
                f"minimal-weight box {2 * radius + 1}^{self.d} exceeds budget")
        dist = {}
        zero = (0,) * self.d
        dist[zero] = 0
        queue = deque([zero])
        while queue:
            m = queue.popleft()
            dm = dist[m]
            for col in self.columns:
                nxt = tuple(2 * x + c for x, c in zip(m, col))
                if any(abs(x) > radius for x in nxt):
                    continue
                cost = dm + (1 if any(col) else 0)
                old = dist.get(nxt)
                if old is None or cost < old:
                    dist[nxt] = cost
                    if cost == dm:
                        queue.appendleft(nxt)
                    else:
                        queue.append(nxt)
        self.dist = dist
        self.radius = radius

    def lookup(self, n: tuple[int, ...]) -> int:
        radius = max(max(abs(x) for x in n), -self.ds.l, self.ds.u, 1)
        self.ensure(radius)
        return self.dist[n]


def min_weight_bruteforce(n, ds: DigitSet, memo: MemoTable | None = None) -> int:
    """Exact minimal Hamming weight over all expansions with this digit set."""
    vec = (n,) if isinstance(n, int) else tuple(int(x) for x in n)
    if ds.l == 0 and not ds.negated and any(x < 0 for x in vec):
        raise ValueError("negative components need a digit set with l < 0")
    if memo is None:
        memo = MemoTable(ds, len(vec))
    return memo.lookup(vec)


def enumerate_ajsf_candidates(n, ds: DigitSet, max_len: int) -> list[JointExpansion]:
    """All syntactically valid expansions of n with at most max_len columns.

    The search fixes columns from position 0 upward; a branch dies when the
    residual vector cannot be represented by the remaining columns.  The
    full syntax check runs once per complete candidate (the per-step parity
    and zero-run constraints already prune most of the tree).
    """
    vec = (n,) if isinstance(n, int) else tuple(int(x) for x in n)
    d = len(vec)
    lo, hi = (-ds.u, -ds.l) if ds.negated else (ds.l, ds.u)
    maxd = max(-lo, hi)
    w = ds.w
    all_cols = list(product(range(lo, hi + 1), repeat=d))
    zero = (0,) * d
    found = []

    def extend(residual, cols, zeros_owed):
        if all(x == 0 for x in residual):
            cand = JointExpansion(tuple(cols), ds, d)
            if validate_ajsf(cand):
                found.append(cand)
            return
        rem = max_len - len(cols)
        if rem <= 0:
            return
        limit = maxd * ((1 << rem) - 1)
        if any(abs(x) > limit for x in residual):
            return
        if zeros_owed > 0:
            if all(x % 2 == 0 for x in residual):
                extend(tuple(x // 2 for x in residual), cols + [zero],
                       zeros_owed - 1)
            return
        for col in all_cols:
            if any((x - c) % 2 for x, c in zip(residual, col)):
                continue
            if any(col) and not any(c % 2 for c in col):
                continue
            nxt = tuple((x - c) // 2 for x, c in zip(residual, col))
            extend(nxt, cols + [col], w - 2 if any(col) else 0)

    extend(vec, [], 0)
    uniq = []
    for cand in found:
        if cand not in uniq:
            uniq.append(cand)
    return uniq
