"""Golden-section search on extended-real valued unimodal functions."""

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_min(f, a, b, tol=1e-10, max_iter=500, anchor=None):
    """Minimize ``f`` on ``[a, b]``.

    ``f`` may return ``+inf``.  When both interior probes are infinite the
    search cannot tell which side holds the finite region, so it shrinks
    toward ``anchor`` (a point known to have a finite value) if one is given,
    and toward the midpoint otherwise.

    Returns ``(x, fx, iterations)`` for the best point evaluated.
    """
    if a > b:
        a, b = b, a
    best_x, best_f = None, math.inf

    def probe(t):
        nonlocal best_x, best_f
        ft = f(t)
        if best_x is None or ft < best_f:
            best_x, best_f = t, ft
        return ft

    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = probe(x1), probe(x2)
    it = 0
    while b - a > tol and it < max_iter:
        it += 1
        if f1 == math.inf and f2 == math.inf:
            if anchor is not None and anchor < x1:
                b = x1
            elif anchor is not None and anchor > x2:
                a = x2
            else:
                a, b = x1, x2
            x1 = b - _INVPHI * (b - a)
            x2 = a + _INVPHI * (b - a)
            f1, f2 = probe(x1), probe(x2)
        elif f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = probe(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = probe(x2)
    return best_x, best_f, it


def golden_max(f, a, b, tol=1e-10, max_iter=500):
    x, fx, it = golden_min(lambda t: -f(t), a, b, tol=tol, max_iter=max_iter)
    return x, -fx, it
