"""Double-double arithmetic on numpy arrays (Dekker/Knuth error-free transforms).

A value is a pair (hi, lo) with |lo| <= ulp(hi)/2; all helpers work on
scalars and arrays alike.
"""

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLIT * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    t, f = two_sum(al, bl)
    s, e = quick_two_sum(s, e + t)
    return quick_two_sum(s, e + f)


def mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    return quick_two_sum(p, e + (ah * bl + al * bh))


def div_float(ah, al, b):
    q1 = ah / b
    p, e = two_prod(q1, b)
    q2 = (((ah - p) - e) + al) / b
    return quick_two_sum(q1, q2)


def reciprocal_square(t):
    """1 / t**2 to roughly 106 bits."""
    h, l = two_prod(t, t)
    q1 = 1.0 / h
    p, e = two_prod(q1, h)
    r = ((1.0 - p) - e) - q1 * l
    return quick_two_sum(q1, r / h)


def total(h, l):
    """Sum of a double-double array by pairwise reduction."""
    h = np.asarray(h, dtype=float)
    l = np.asarray(l, dtype=float)
    if h.size == 0:
        return 0.0, 0.0
    while h.size > 1:
        if h.size % 2:
            h = np.append(h, 0.0)
            l = np.append(l, 0.0)
        h, l = add(h[0::2], l[0::2], h[1::2], l[1::2])
    return float(h[0]), float(l[0])
