"""Generalized Bregman distances.

For an operator ``T`` and a representative ``h`` of ``S``::

    D_flat(x, y)  = inf_{v in Ty} h(x, v) - x v
    D_sharp(x, y) = sup_{v in Ty} h(x, v) - x v

with ``+inf`` whenever ``Ty`` is empty or ``x`` lies outside ``dom S``.  The
module also evaluates classical Bregman distances, the known closed forms
for the identity and the logarithm, and the lower-closed (lsc-regularized)
variants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from ._golden import golden_min
from .catalog import ConvexFn, MonotoneOp, identity_op, log_op
from .lambertw import w0_exp
from .representatives import Rep, fenchel_young, fitzpatrick_closed, sigma_closed
from .catalog import ent as _ent
from .xreal import INF, check

VARIANTS = ("flat", "sharp")
CLOSURES = ("raw", "lower-closed")

CLOSED_FORM_NAMES = (
    "moreau_fitz",
    "sigma_id",
    "kl",
    "fy_log_closed",
    "fitz_log_closed",
    "sigma_log_closed",
)

INTERVAL_TOL = 1e-10


class GbdError(ValueError):
    pass


@dataclass(frozen=True)
class GbdSpec:
    """A distance definition: operator ``T``, representative ``h`` of ``S``."""

    operator: MonotoneOp
    rep: Rep
    variant: str = "flat"
    closure: str = "raw"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise GbdError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.closure not in CLOSURES:
            raise GbdError(f"closure must be one of {CLOSURES}, got {self.closure!r}")

    def with_variant(self, variant: str) -> "GbdSpec":
        return GbdSpec(self.operator, self.rep, variant, self.closure)

    def with_closure(self, closure: str) -> "GbdSpec":
        return GbdSpec(self.operator, self.rep, self.variant, closure)

    @property
    def label(self) -> str:
        return f"{self.operator.name}/{self.rep.label}/{self.variant}/{self.closure}"


def _raw_eval(spec: GbdSpec, x: float, y: float) -> float:
    ty = spec.operator.eval(y)
    if ty.is_empty:
        return INF
    s = spec.rep.operator
    if s is not None and s.domain is not None and not s.domain.contains(x):
        return INF
    h = spec.rep

    def gap(v):
        hv = h(x, v)
        return INF if hv == INF else hv - x * v

    if ty.kind == "point":
        return check(gap(ty.value))
    lo, hi = ty.lo, ty.hi
    ends = (gap(lo), gap(hi))
    if spec.variant == "sharp":
        # convex in v, so the sup over a segment sits at an endpoint
        return max(ends)
    _, inner, _ = golden_min(gap, lo, hi, tol=INTERVAL_TOL)
    return min(inner, *ends)


def gbd_eval(spec: GbdSpec, x: float, y: float) -> float:
    """Evaluate the distance of ``spec`` at ``(x, y)``; total into ``]-inf, +inf]``."""
    x, y = float(x), float(y)
    if spec.closure == "raw":
        return _raw_eval(spec, x, y)
    name = closed_form_for(spec)
    if name is not None:
        return closed_form_eval(name, x, y)
    raw = _raw_eval(spec, x, y)
    return min(raw, _numeric_closure(lambda a, b: _raw_eval(spec, a, b), x, y))


def bregman_eval(f: ConvexFn, variant: str, x: float, y: float) -> float:
    """Classical Bregman distance ``f(x) - f(y) + inf/sup_{v in df(y)} (y - x) v``."""
    if variant not in VARIANTS:
        raise GbdError(f"variant must be one of {VARIANTS}, got {variant!r}")
    x, y = float(x), float(y)
    sd = f.subdiff(y)
    if sd.is_empty:
        return INF
    fx = f.value(x)
    if fx == INF:
        return INF
    fy = f.value(y)
    terms = [(y - x) * v for v in sd.endpoints()]
    lin = min(terms) if variant == "flat" else max(terms)
    return check(fx - fy + lin)


def _xlogy_diff(x, y):
    return x * (math.log(x) - math.log(y))


def _kl(x, y):
    if y > 0:
        if x > 0:
            return _xlogy_diff(x, y) - x + y
        if x == 0:
            return y
    return INF


def _fy_log_closed(x, y):
    if x == 0 and y == 0:
        return 0.0
    return _kl(x, y)


def _fitz_log_closed(x, y):
    if x < 0 or y < 0 or (x > 0 and y == 0):
        return INF
    if x == 0:
        return y / math.e
    W = w0_exp(math.log(x) + 1.0 - math.log(y))
    # x/W == y e^{W-1}; use whichever form cannot overflow
    inv = y * math.exp(W - 1.0) if W < 1.0 else x / W
    return x * W + inv - 2.0 * x


def _sigma_log_closed(x, y):
    if 0 < y <= x:
        return _xlogy_diff(x, y)
    if x == 0 and y == 0:
        return 0.0
    return INF


_CLOSED_FORMS: dict[str, Callable[[float, float], float]] = {
    "moreau_fitz": lambda x, y: 0.25 * (x - y) ** 2,
    "sigma_id": lambda x, y: 0.0 if x == y else INF,
    "kl": _kl,
    "fy_log_closed": _fy_log_closed,
    "fitz_log_closed": _fitz_log_closed,
    "sigma_log_closed": _sigma_log_closed,
}


def closed_form_eval(name: str, x: float, y: float) -> float:
    """Evaluate one of the closed-form distances."""
    try:
        f = _CLOSED_FORMS[name]
    except KeyError:
        raise GbdError(f"unknown closed-form distance {name!r}") from None
    return check(f(float(x), float(y)))


def closed_form_operator(name: str) -> MonotoneOp:
    """The operator ``S = T`` underlying a closed-form distance."""
    if name not in _CLOSED_FORMS:
        raise GbdError(f"unknown closed-form distance {name!r}")
    return identity_op() if name in ("moreau_fitz", "sigma_id") else log_op()


def closed_form_spec(name: str, variant: str = "flat") -> GbdSpec:
    """The raw GBD whose lower closure a closed form is.

    ``kl`` is the Bregman distance of ``ent``; its GBD counterpart is the
    Fenchel-Young one.
    """
    op = closed_form_operator(name)
    rep = {
        "moreau_fitz": lambda: fitzpatrick_closed("identity"),
        "sigma_id": lambda: sigma_closed("identity"),
        "kl": lambda: fenchel_young(_ent()),
        "fy_log_closed": lambda: fenchel_young(_ent()),
        "fitz_log_closed": lambda: fitzpatrick_closed("log"),
        "sigma_log_closed": lambda: sigma_closed("log"),
    }[name]()
    return GbdSpec(op, rep, variant)


_CLOSURE_TABLE = {
    ("identity", "F_Id"): "moreau_fitz",
    ("identity", "sigma_Id"): "sigma_id",
    ("log", "fy:ent"): "fy_log_closed",
    ("log", "F_log"): "fitz_log_closed",
    ("log", "sigma_log"): "sigma_log_closed",
}


def closed_form_for(spec: GbdSpec) -> str | None:
    """Name of the closed form equal to the lower closure of ``spec``, if any."""
    if spec.rep.operator is None or spec.rep.operator_name != spec.operator.name:
        return None
    return _CLOSURE_TABLE.get((spec.operator.name, spec.rep.label))


# Approach directions used for a numeric closure when no closed form is known.
_DIRECTIONS = [(math.cos(k * math.pi / 4), math.sin(k * math.pi / 4)) for k in range(8)]


def _path_values(D, point, direction, n_steps=40, ratio=0.5, scale=1.0):
    px, py = point
    dx, dy = direction
    out = []
    r = scale
    for _ in range(n_steps):
        out.append(D(px + r * dx, py + r * dy))
        r *= ratio
    return out


def _tail_liminf(values, tail):
    last = values[-tail:]
    if any(v == INF for v in last):
        return None
    return min(last)


def _numeric_closure(D, x, y, tail=10):
    best = INF
    for d in _DIRECTIONS:
        lim = _tail_liminf(_path_values(D, (x, y), d), tail)
        if lim is not None:
            best = min(best, lim)
    return best


@dataclass
class PathLimit:
    direction: tuple[float, float]
    values: list[float]
    limit: float | None


@dataclass
class ClosureReport:
    point: tuple[float, float]
    stored_value: float
    paths: list[PathLimit] = field(default_factory=list)
    overall: float = INF
    matches: bool = False


def lower_closure_check(target, boundary_point: tuple[float, float],
                        approach_paths: Sequence[tuple[float, float]], n_steps: int = 40,
                        ratio: float = 0.5, tail: int = 10, rtol: float = 1e-6,
                        scale: float = 1.0) -> ClosureReport:
    """Estimate the liminf of a distance at a boundary point along approach paths.

    ``target`` is a closed-form name or a :class:`GbdSpec`.  Each path is a
    direction ``d``; it visits ``point + scale * ratio**k * d`` for
    ``k < n_steps`` and its limit estimate is the min over the last ``tail``
    steps.  The overall estimate (min over paths) is compared with the value
    stored at the point.
    """
    if isinstance(target, str):
        D = lambda a, b: closed_form_eval(target, a, b)  # noqa: E731
        stored = closed_form_eval(target, *boundary_point)
    elif isinstance(target, GbdSpec):
        raw = target.with_closure("raw")
        D = lambda a, b: gbd_eval(raw, a, b)  # noqa: E731
        stored = gbd_eval(target, *boundary_point)
    else:
        raise GbdError("target must be a closed-form name or a GbdSpec")
    report = ClosureReport(point=tuple(boundary_point), stored_value=stored)
    for d in approach_paths:
        vals = _path_values(D, boundary_point, d, n_steps, ratio, scale)
        report.paths.append(PathLimit(tuple(d), vals, _tail_liminf(vals, tail)))
    limits = [p.limit for p in report.paths if p.limit is not None]
    if not limits:
        raise GbdError("no approach path stays in the finite domain of the distance")
    report.overall = min(limits)
    report.matches = math.isclose(report.overall, stored, rel_tol=rtol, abs_tol=1e-12)
    return report


def as_distance(obj) -> Callable[[float, float], float]:
    """Turn a closed-form name, a :class:`GbdSpec` or a callable into ``D(x, y)``."""
    if isinstance(obj, str):
        if obj not in _CLOSED_FORMS:
            raise GbdError(f"unknown closed-form distance {obj!r}")
        return lambda x, y: closed_form_eval(obj, x, y)
    if isinstance(obj, GbdSpec):
        return lambda x, y: gbd_eval(obj, x, y)
    if callable(obj):
        return obj
    raise GbdError(f"cannot interpret {obj!r} as a distance")
