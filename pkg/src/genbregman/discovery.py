"""Numerical rediscovery of ``sigma_log(z) = z1 log z1`` by supporting lines.

A line of slope ``t = tan(phi)`` through ``z`` meets the graph ``{(xi, log xi)}``
in two points ``x1 < z1 < y1``.  Writing ``z`` as the convex combination
``p*(x1, log x1) + (1-p)*(y1, log y1)`` gives the upper estimate
``p*x1*log x1 + (1-p)*y1*log y1`` of ``sigma_log(z)``, which approaches
``z1 log z1`` as the line steepens.

The intersections have the explicit form ``xi = -W(a)/t`` with
``a = -t*exp(z2 - t*z1)`` on the two real branches of Lambert W.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .lambertw import w0, wm1_neglog
from .xreal import INF

TAN_CAP = 1e12
ON_GRAPH_TOL = 1e-12


class NoIntersectionError(ValueError):
    pass


@dataclass(frozen=True)
class LineProbe:
    z: tuple[float, float]
    phi: float
    x1: float
    y1: float
    weight_p: float
    objective: float


def angle_schedule(n_angles: int) -> list[float]:
    """``phi_n = pi/2 - (pi/4) 2^{-n/8}`` for ``n = 0 .. n_angles-1``.

    Late angles are kept one ulp below ``pi/2``; their slope is capped anyway.
    """
    top = math.nextafter(math.pi / 2, 0.0)
    return [min(math.pi / 2 - (math.pi / 4) * 2.0 ** (-n / 8.0), top) for n in range(n_angles)]


def _slope(phi):
    if not 0.0 < phi < math.pi / 2:
        raise ValueError(f"angle must lie in ]0, pi/2[, got {phi!r}")
    return min(math.tan(phi), TAN_CAP)


def _xlogx(x):
    return x * math.log(x) if x > 0 else 0.0


def _check_z(z):
    z1, z2 = float(z[0]), float(z[1])
    if not z1 > 0:
        raise ValueError(f"z1 must be positive, got {z1!r}")
    return z1, z2


def line_intersections_log(z, phi: float) -> tuple[float, float]:
    """``(log x1, log y1)``; ``log x1`` stays exact where ``x1`` itself underflows."""
    z1, z2 = _check_z(z)
    if abs(z2 - math.log(z1)) <= ON_GRAPH_TOL:
        return math.log(z1), math.log(z1)
    t = _slope(phi)
    # log|a| for the Lambert W argument a = -t exp(z2 - t z1)
    L = math.log(t) + z2 - t * z1
    if L + 1.0 > 8.9e-16:
        raise NoIntersectionError(f"line through {z} at angle {phi!r} misses the graph of log")
    w_small = w0(-math.exp(L)) if L > -745.0 else 0.0
    # log(-W0/t) == z2 - t z1 - W0
    log_x1 = z2 - t * z1 - w_small
    log_y1 = math.log(-wm1_neglog(L) / t)
    return log_x1, log_y1


def line_intersections(z, phi: float) -> tuple[float, float]:
    """Abscissas ``x1 <= y1`` where the line through ``z`` at angle ``phi`` meets the log graph."""
    z1, _ = _check_z(z)
    lx, ly = line_intersections_log(z, phi)
    if lx == ly:
        return z1, z1
    return math.exp(lx), math.exp(ly)


def line_residual(z, phi: float, log_xi: float) -> float:
    """Residual of ``log xi = t (xi - z1) + z2`` at ``xi = exp(log_xi)``.

    Scaled by the size of the terms, ``1 + t*(xi + z1) + |z2|``: near
    ``t = 1e12`` the products ``t*xi`` and ``t*z1`` carry rounding far above
    any absolute tolerance.
    """
    z1, z2 = float(z[0]), float(z[1])
    t = _slope(phi)
    xi = math.exp(log_xi)
    return abs(log_xi - t * (xi - z1) - z2) / (1.0 + t * (xi + z1) + abs(z2))


def probe(z, phi: float) -> LineProbe:
    z1, z2 = _check_z(z)
    x1, y1 = line_intersections((z1, z2), phi)
    p = (y1 - z1) / (y1 - x1) if y1 > x1 else 1.0
    obj = p * _xlogx(x1) + (1.0 - p) * _xlogx(y1)
    return LineProbe((z1, z2), phi, x1, y1, p, obj)


def sigma_estimate(z, n_angles: int = 200) -> tuple[float, list[LineProbe]]:
    """Smallest supporting-line estimate of ``sigma_log(z)`` over the angle schedule.

    Returns ``(+inf, [])`` when ``z2 > log z1`` and ``(z1 log z1, [])`` on the graph.
    """
    z1, z2 = _check_z(z)
    if n_angles < 2:
        raise ValueError("sigma_estimate needs at least 2 angles")
    gap = math.log(z1) - z2
    if abs(gap) <= ON_GRAPH_TOL:
        return _xlogx(z1), []
    if gap < 0:
        return INF, []
    trace = [probe((z1, z2), phi) for phi in angle_schedule(n_angles)]
    return min(p.objective for p in trace), trace


def trace_to_csv(trace, fh=None) -> str | None:
    out = io.StringIO() if fh is None else fh
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("phi", "x1", "y1", "p", "objective"))
    for pr in trace:
        writer.writerow(tuple(repr(float(v)) for v in (pr.phi, pr.x1, pr.y1, pr.weight_p, pr.objective)))
    return out.getvalue() if fh is None else None
