"""Desk-scale checkers for distances: set-distance lower bound, coercivity
evidence along rays, and GBD proximity operators and envelopes.

Conventions: D(x, y) has x in the S-side (left) slot and y in the T-side
(right) slot.  The left prox minimizes ``theta(t) + D(t, anchor)/gamma``; the
right prox minimizes ``theta(t) + D(anchor, t)/gamma``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

from ._golden import golden_min
from .catalog import ConvexFn, MonotoneOp
from .gbd import GbdSpec, as_distance, closed_form_operator, gbd_eval
from .xreal import INF, Interval, format_ext

VERDICTS = (
    "evidence-for-coercive",
    "evidence-for-supercoercive",
    "inconclusive",
    "evidence-against",
)
SIDES = ("left", "right")


class AnalysisError(ValueError):
    pass


class BracketError(AnalysisError):
    pass


def _side(side):
    if side not in SIDES:
        raise AnalysisError(f"side must be one of {SIDES}, got {side!r}")
    return side


def _resolve(spec) -> tuple[Callable[[float, float], float], MonotoneOp, MonotoneOp]:
    """Return ``(D, T, S)`` for a GbdSpec or a closed-form name."""
    if isinstance(spec, GbdSpec):
        S = spec.rep.operator if spec.rep.operator is not None else spec.operator
        return (lambda x, y: gbd_eval(spec, x, y)), spec.operator, S
    if isinstance(spec, str):
        op = closed_form_operator(spec)
        return as_distance(spec), op, op
    raise AnalysisError(f"cannot interpret {spec!r} as a distance")


def _ty_samples(T: MonotoneOp, y: float, n: int = 201) -> list[float]:
    ty = T.eval(y)
    if ty.is_empty:
        return []
    if ty.kind == "point":
        return [ty.value]
    return list(np.linspace(ty.lo, ty.hi, n))


def lower_bound_gap(spec, x: float, y: float, graph_samples: Sequence[tuple[float, float]],
                    params: Sequence[float] | None = None) -> float:
    """``D(x, y) - d^2({x} x Ty, G(S)) / 4`` with the set distance taken on samples.

    ``spec`` is a :class:`GbdSpec` or a closed-form name.  If the graph
    parameters of the samples are given, the best sample is refined once by a
    golden-section search between its neighbours.  Returns ``+inf`` when the
    bound is trivially satisfied (``D`` infinite or ``Ty`` empty).
    """
    if len(graph_samples) == 0:
        raise AnalysisError("lower_bound_gap needs graph samples")
    D, T, S = _resolve(spec)
    d = D(x, y)
    vs = _ty_samples(T, y)
    if d == INF or not vs:
        return INF
    pts = np.asarray(graph_samples, dtype=float)
    a, b = pts[:, 0], pts[:, 1]
    best = INF
    for v in vs:
        sq = (x - a) ** 2 + (v - b) ** 2
        i = int(np.argmin(sq))
        cand = float(sq[i])
        if params is not None:
            lo = params[max(i - 1, 0)]
            hi = params[min(i + 1, len(params) - 1)]

            def dist2(t, v=v):
                ga, gb = S.graph_param(t)
                return (x - ga) ** 2 + (v - gb) ** 2

            _, val, _ = golden_min(dist2, lo, hi, tol=1e-13 * (1.0 + abs(hi - lo)))
            cand = min(cand, val)
        best = min(best, cand)
    return d - 0.25 * best


@dataclass
class CoercivityReport:
    probe_points: list[float]
    raw_values: list[float]
    ratios: list[float]
    verdict: str

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("raw_values", "ratios"):
            d[key] = [v if math.isfinite(v) else format_ext(v) for v in d[key]]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def geometric_ray(base: float = 2.0, k_max: int = 20, sign: float = 1.0) -> list[float]:
    """Ray ``sign * base**k`` for ``k = 0 .. k_max``."""
    return [sign * base ** k for k in range(k_max + 1)]


def _grows(seq, tail=5, factor=10.0):
    last = seq[-tail:]
    if len(last) < tail or not all(math.isfinite(v) for v in last):
        return False
    if not all(b > a for a, b in zip(last, last[1:])):
        return False
    first = next(v for v in seq if math.isfinite(v))
    return last[-1] >= factor * first


def classify_growth(values: Sequence[float], points: Sequence[float]) -> tuple[list[float], str]:
    """Ratios ``value/|point|`` and the evidence verdict for a ray evaluation."""
    ratios = [v / abs(p) if math.isfinite(v) else INF for v, p in zip(values, points)]
    if all(v == INF for v in values[1:]):
        return ratios, "evidence-for-supercoercive"
    if _grows(ratios):
        return ratios, "evidence-for-supercoercive"
    if _grows(values):
        return ratios, "evidence-for-coercive"
    last = list(values[-5:])
    if all(math.isfinite(v) for v in last) and max(last) <= 1.01 * min(last):
        return ratios, "evidence-against"
    return ratios, "inconclusive"


def _check_ray(ray):
    ray = [float(r) for r in ray]
    if len(ray) < 8:
        raise AnalysisError("a coercivity ray needs at least 8 points")
    mags = [abs(r) for r in ray]
    if not all(b > a for a, b in zip(mags, mags[1:])):
        raise AnalysisError("ray magnitudes must be strictly increasing")
    return ray


def coercivity_evidence(spec, side: str, point: float, ray: Sequence[float] | None = None) -> CoercivityReport:
    """Evaluate ``D(x_n, point)`` (left) or ``D(point, y_n)`` (right) along a ray."""
    _side(side)
    ray = _check_ray(geometric_ray() if ray is None else ray)
    D, _, _ = _resolve(spec)
    if side == "left":
        vals = [D(r, point) for r in ray]
    else:
        vals = [D(point, r) for r in ray]
    ratios, verdict = classify_growth(vals, ray)
    return CoercivityReport(ray, vals, ratios, verdict)


def _sum_objective(theta: ConvexFn, spec, gamma: float, side: str, anchor: float):
    _side(side)
    if not gamma > 0:
        raise AnalysisError(f"gamma must be positive, got {gamma!r}")
    D, _, _ = _resolve(spec)

    def F(t):
        th = theta.value(t)
        if th == INF:
            return INF
        d = D(t, anchor) if side == "left" else D(anchor, t)
        if d == INF:
            return INF
        return th + d / gamma

    return F


def sum_coercivity_evidence(theta: ConvexFn, spec, gamma: float, side: str, anchor: float,
                            ray: Sequence[float] | None = None) -> CoercivityReport:
    """Growth evidence for ``theta(.) + D(., anchor)/gamma`` (or the right-slot sum)."""
    ray = _check_ray(geometric_ray() if ray is None else ray)
    F = _sum_objective(theta, spec, gamma, side, anchor)
    vals = [F(r) for r in ray]
    ratios, verdict = classify_growth(vals, ray)
    return CoercivityReport(ray, vals, ratios, verdict)


@dataclass
class ProxResult:
    minimizer: float
    value: float
    iterations: int
    bracket: Interval


MAX_DOUBLINGS = 200
PROX_TOL = 1e-10


def _finite_start(F, anchor, dom: Interval):
    cands = [anchor]
    if dom.lo > -INF:
        cands.append(dom.lo)
    if dom.hi < INF:
        cands.append(dom.hi)
    for k in range(-30, 60):
        h = 2.0 ** k
        cands.extend((anchor + h, anchor - h))
    for c in cands:
        if dom.contains(c):
            f = F(c)
            if f < INF:
                return c, f
    raise BracketError("the prox objective is +inf at every probed point")


def _expand(F, start, fstart, direction, dom: Interval):
    """Walk away from ``start`` with doubling steps until the objective rises."""
    best_t, best_f = start, fstart
    h = 1e-3 * max(1.0, abs(start))
    edge = dom.lo if direction < 0 else dom.hi
    for _ in range(MAX_DOUBLINGS):
        t = start + direction * h
        if (direction < 0 and t <= edge) or (direction > 0 and t >= edge):
            # stop at a finite domain boundary and use it as the bracket end
            return edge, best_t, best_f
        f = F(t)
        if f > best_f:
            return t, best_t, best_f
        best_t, best_f = t, f
        h *= 2.0
    raise BracketError(
        f"prox bracket expansion failed after {MAX_DOUBLINGS} doublings; "
        "the objective is not verifiably coercive on the probed range")


def _polish(F, t, ft, lo, hi):
    """Refine by bisection on the sign of a central-difference derivative."""
    h = 1e-5 * (1.0 + abs(t))

    def slope(s):
        fp, fm = F(s + h), F(s - h)
        if fp == INF or fm == INF:
            return None
        return fp - fm

    a, b = max(lo, t - 1e-4 * (1.0 + abs(t))), min(hi, t + 1e-4 * (1.0 + abs(t)))
    ga, gb = slope(a), slope(b)
    if ga is None or gb is None or not (ga < 0 < gb):
        return t, ft
    for _ in range(80):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        gm = slope(m)
        if gm is None:
            return t, ft
        if gm < 0:
            a = m
        else:
            b = m
    m = 0.5 * (a + b)
    fm = F(m)
    # inside a verified slope sign change the root beats a rounding-level low value
    if fm < INF:
        return m, fm
    return t, ft


def prox(theta: ConvexFn, spec, gamma: float, side: str, anchor: float) -> ProxResult:
    """GBD proximity operator of ``theta`` with parameter ``gamma``.

    ``spec`` is a :class:`GbdSpec` or a closed-form name.  See the module
    docstring for the left/right convention.
    """
    F = _sum_objective(theta, spec, gamma, side, float(anchor))
    dom = theta.domain
    start, fstart = _finite_start(F, float(anchor), dom)
    a, t_lo, f_lo = _expand(F, start, fstart, -1.0, dom)
    b, t_hi, f_hi = _expand(F, start, fstart, +1.0, dom)
    t0, f0 = (t_lo, f_lo) if f_lo <= f_hi else (t_hi, f_hi)
    x, fx, it = golden_min(F, a, b, tol=PROX_TOL, anchor=t0)
    if not fx <= f0:
        x, fx = t0, f0
    for end in (a, b):
        fe = F(end)
        if fe < fx:
            x, fx = end, fe
    x, fx = _polish(F, x, fx, a, b)
    return ProxResult(x, fx, it, Interval.closed(a, b))


def envelope(theta: ConvexFn, spec, gamma: float, side: str, anchor: float) -> float:
    """Optimal value of the prox problem."""
    return prox(theta, spec, gamma, side, anchor).value
