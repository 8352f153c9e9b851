from fractions import Fraction

from ajsf.digitset import DigitSet, digit_set

# small digit sets exercised across the suite: symmetric, asymmetric, and
# one with no redundant digits (tilde_u = -1)
REPRESENTATIVE = [(-1, 1), (-2, 3), (0, 3)]


def all_digit_sets(w_min: int, w_max: int):
    """Every normalized (l, u) with the given window widths."""
    out = []
    for w in range(w_min, w_max + 1):
        half = 1 << (w - 1)
        for l in range(-(half - 1), 1):
            for size in range(half, 2 * half):
                u = l + size - 1
                if u >= 1:
                    out.append((l, u))
    return out


def closed_form_1d(ds: DigitSet) -> tuple[Fraction, Fraction]:
    """Mean/variance growth constants for d=1 as functions of w and lambda."""
    w, lam = ds.w, ds.lam
    e = 1 / Fraction(w - 1 + lam)
    v = (3 - lam) * lam / Fraction(w - 1 + lam) ** 3
    return e, v


def representative_sets():
    return [digit_set(l, u) for l, u in REPRESENTATIVE]
