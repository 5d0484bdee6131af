"""Real branches of the Lambert W function.

``w0`` is the principal branch on ``[-1/e, +inf[`` (values ``>= -1``) and
``wm1`` the secondary branch on ``[-1/e, 0[`` (values ``<= -1``).  Both use a
series or asymptotic starting guess refined by Halley's method.

Two log-space entry points avoid overflow and underflow in callers:
``w0_exp(s) = W0(exp(s))`` for any real ``s`` and
``wm1_neglog(L) = W_{-1}(-exp(L))`` for ``L <= -1``.
"""

import math

# 1/e as an unevaluated double-double sum, so that x + 1/e is exact near -1/e.
_INV_E_HI = 0.36787944117144233
_INV_E_LO = -1.2428753672788363e-17
BRANCH_POINT = -_INV_E_HI

_GUARD_ULPS = 4
_MAX_ITER = 50

# Taylor coefficients of W around the branch point in p = sqrt(2(e x + 1)).
_BRANCH_SERIES = (
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
)


class LambertWDomainError(ValueError):
    pass


def _branch_offset(x):
    """Return ``x + 1/e`` to near double-double accuracy, with guard band."""
    q = (x + _INV_E_HI) + _INV_E_LO
    band = _GUARD_ULPS * math.ulp(_INV_E_HI)
    if q < 0.0:
        if q < -band:
            raise LambertWDomainError(f"Lambert W argument {x!r} is below -1/e")
        q = 0.0
    return q, band


def _series(p):
    acc = 0.0
    for c in reversed(_BRANCH_SERIES):
        acc = acc * p + c
    return acc


def _halley(w, x):
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 4.0 * 2.2e-16 * (1.0 + abs(w)):
            break
    return w


def w0(x):
    """Principal branch ``W0(x)``, the solution ``w >= -1`` of ``w e^w = x``."""
    x = float(x)
    if math.isnan(x):
        raise LambertWDomainError("Lambert W of NaN")
    if x == 0.0:
        return 0.0
    if x == math.inf:
        return math.inf
    if x < -0.25:
        q, band = _branch_offset(x)
        if q <= band:
            return -1.0
        p = math.sqrt(2.0 * math.e * q)
        w = _series(p)
        if p < 1e-3:
            return w
        return max(_halley(w, x), -1.0)
    if x > 1e100:
        return w0_exp(math.log(x))
    if x < 3.0:
        w = math.log1p(x)
    else:
        l1 = math.log(x)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1
    return _halley(w, x)


def wm1(x):
    """Secondary branch ``W_{-1}(x)``, the solution ``w <= -1`` of ``w e^w = x``."""
    x = float(x)
    if math.isnan(x):
        raise LambertWDomainError("Lambert W of NaN")
    if x >= 0.0:
        raise LambertWDomainError(f"W_-1 requires x < 0, got {x!r}")
    if x < -0.25:
        q, band = _branch_offset(x)
        if q <= band:
            return -1.0
        p = math.sqrt(2.0 * math.e * q)
        w = _series(-p)
        if p < 1e-3:
            return w
        return min(_halley(w, x), -1.0)
    l1 = math.log(-x)
    l2 = math.log(-l1)
    w = l1 - l2 + l2 / l1
    return _halley(w, x)


def w0_exp(s):
    """Return ``W0(exp(s))`` without forming ``exp(s)`` when it would overflow."""
    s = float(s)
    if math.isnan(s):
        raise LambertWDomainError("Lambert W of NaN")
    if s == math.inf:
        return math.inf
    if s <= 40.0:
        return w0(math.exp(s))
    # w + log(w) = s, Newton in log space; w > 1 here.
    w = s - math.log(s)
    for _ in range(_MAX_ITER):
        dw = (w + math.log(w) - s) * w / (w + 1.0)
        w -= dw
        if abs(dw) <= 4.0 * 2.2e-16 * w:
            break
    return w


def wm1_neglog(L):
    """Return ``W_{-1}(-exp(L))`` for ``L <= -1`` without underflow."""
    L = float(L)
    if math.isnan(L):
        raise LambertWDomainError("Lambert W of NaN")
    if L > -1.0:
        if L + 1.0 > _GUARD_ULPS * 2.2e-16:
            raise LambertWDomainError(f"-exp({L!r}) is below -1/e")
        return -1.0
    if L == -math.inf:
        return -math.inf
    if L >= -40.0:
        return wm1(-math.exp(L))
    # w = -m with log(m) - m = L, m > 1.
    m = -L + math.log(-L)
    for _ in range(_MAX_ITER):
        dm = (math.log(m) - m - L) * m / (1.0 - m)
        m -= dm
        if abs(dm) <= 4.0 * 2.2e-16 * m:
            break
    return -m


def residual(w, x):
    """Defining-identity residual ``|w e^w - x|``."""
    return abs(w * math.exp(w) - x)
