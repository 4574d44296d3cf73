"""Vectorized double-double arithmetic.

A value is a pair ``(hi, lo)`` of float arrays with ``|lo| <= ulp(hi)/2``.
Only the handful of operations needed by the Airy series routes are provided.
Error-free transformations follow Dekker and Knuth; no FMA is assumed.
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def from_float(a):
    a = np.asarray(a, dtype=float)
    return a, np.zeros_like(a)


def add(x, y):
    s, e = two_sum(x[0], y[0])
    t, f = two_sum(x[1], y[1])
    e = e + t
    s, e = quick_two_sum(s, e)
    e = e + f
    return quick_two_sum(s, e)


def neg(x):
    return -x[0], -x[1]


def sub(x, y):
    return add(x, neg(y))


def mul(x, y):
    p, e = two_prod(x[0], y[0])
    e = e + (x[0] * y[1] + x[1] * y[0])
    return quick_two_sum(p, e)


def mul_d(x, b):
    p, e = two_prod(x[0], b)
    e = e + x[1] * b
    return quick_two_sum(p, e)


def div_d(x, b):
    q1 = x[0] / b
    p, e = two_prod(q1, b)
    s, f = two_sum(x[0], -p)
    f = f - e + x[1]
    q2 = (s + f) / b
    return quick_two_sum(q1, q2)


def div(x, y):
    q1 = x[0] / y[0]
    r = sub(x, mul_d(y, q1))
    q2 = r[0] / y[0]
    r = sub(r, mul_d(y, q2))
    q3 = r[0] / y[0]
    q1, q2 = quick_two_sum(q1, q2)
    return add((q1, q2), from_float(q3))


def recip(x):
    return div(from_float(np.ones_like(x[0])), x)


def root(a, n: int):
    """Positive real ``n``-th root of a positive dd value, one Newton step."""
    y0 = a[0] ** (1.0 / n)
    yn = from_float(y0)
    for _ in range(n - 1):
        yn = mul_d(yn, y0)
    resid = sub(a, yn)
    corr = resid[0] / (n * y0 ** (n - 1))
    return two_sum(y0, corr)


def to_float(x):
    return x[0] + x[1]
