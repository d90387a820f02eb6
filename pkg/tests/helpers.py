"""Shared assertion helpers for the test suite."""

import math


def agree(x: float, y: float, rel: float = 1e-10, abs_near_zero: float = 1e-12) -> bool:
    """Relative agreement with an absolute fallback near zero."""
    return abs(x - y) <= max(rel * max(abs(x), abs(y)), abs_near_zero)


def rel_dev(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


def golden_min(f, lo: float, hi: float, tol: float = 1e-11):
    """Independent golden-section minimizer over a 256-point coarse scan.

    Deliberately separate from the library implementation so that numeric
    cross-checks do not share code with the path under test.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    invphi2 = (3.0 - math.sqrt(5.0)) / 2.0

    def guarded(x):
        try:
            y = f(x)
        except Exception:
            return math.inf
        return y if math.isfinite(y) else math.inf

    xs = [lo + k * (hi - lo) / 255.0 for k in range(256)]
    ys = [guarded(x) for x in xs]
    k = min(range(256), key=lambda i: ys[i])
    a, b = xs[max(k - 1, 0)], xs[min(k + 1, 255)]
    h = b - a
    c, d = a + invphi2 * h, a + invphi * h
    yc, yd = guarded(c), guarded(d)
    while h > tol:
        if yc < yd:
            b, d, yd = d, c, yc
            h = invphi * h
            c = a + invphi2 * h
            yc = guarded(c)
        else:
            a, c, yc = c, d, yd
            h = invphi * h
            d = a + invphi * h
            yd = guarded(d)
    x = 0.5 * (a + b)
    y = guarded(x)
    if ys[k] < y:
        return xs[k], ys[k]
    return x, y
