"""Scalar convex functions and maximally monotone operators on the real line.

Each :class:`ConvexFn` carries its exact conjugate, subdifferential and
resolvent ``(I + subdiff)^{-1}``.  The resolvent gives every subdifferential
operator a continuous graph parametrization ``t -> (a, t - a)`` (Minty), which
is what :func:`graph_sample` discretizes.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .lambertw import w0_exp
from .xreal import INF, Interval, SetValue


@dataclass(frozen=True)
class ConvexFn:
    name: str
    domain: Interval
    value: Callable[[float], float]
    conjugate_value: Callable[[float], float]
    subdiff: Callable[[float], SetValue]
    resolvent: Callable[[float], float]
    # canonical name of the operator subdiff (e.g. "log" for ent)
    operator_name: str = ""
    params: tuple = field(default=())

    def __call__(self, x: float) -> float:
        return self.value(x)


@dataclass(frozen=True)
class MonotoneOp:
    name: str
    domain: Interval
    eval: Callable[[float], SetValue]
    graph_param: Callable[[float], tuple[float, float]]
    param_range: Interval = field(default_factory=Interval.real_line)

    def __call__(self, y: float) -> SetValue:
        return self.eval(y)


class CatalogError(ValueError):
    pass


def _indicator_point(c):
    return lambda v: 0.0 if v == c else INF


def energy() -> ConvexFn:
    return ConvexFn(
        name="energy",
        domain=Interval.real_line(),
        value=lambda x: 0.5 * x * x,
        conjugate_value=lambda v: 0.5 * v * v,
        subdiff=lambda x: SetValue.point(x),
        resolvent=lambda t: 0.5 * t,
        operator_name="identity",
    )


def energy_shift(c: float) -> ConvexFn:
    """``x -> (x - c)^2 / 2``."""
    c = float(c)
    return ConvexFn(
        name=f"energy_shift({c!r})",
        domain=Interval.real_line(),
        value=lambda x: 0.5 * (x - c) ** 2,
        conjugate_value=lambda v: 0.5 * v * v + c * v,
        subdiff=lambda x: SetValue.point(x - c),
        resolvent=lambda t: 0.5 * (t + c),
        operator_name=f"subdiff_of(energy_shift({c!r}))",
        params=(c,),
    )


def _ent_value(x):
    if x > 0:
        return x * math.log(x) - x
    if x == 0:
        return 0.0
    return INF


def _exp_value(v):
    # ent* = exp; overflow is a genuine +inf
    try:
        return math.exp(v)
    except OverflowError:
        return INF


def ent() -> ConvexFn:
    """Boltzmann-Shannon entropy ``x log x - x`` with ``0 log 0 = 0``."""
    return ConvexFn(
        name="ent",
        domain=Interval(0.0, INF, True, False),
        value=_ent_value,
        conjugate_value=_exp_value,
        subdiff=lambda x: SetValue.point(math.log(x)) if x > 0 else SetValue.empty(),
        # a + log(a) = t  <=>  a = W0(e^t)
        resolvent=w0_exp,
        operator_name="log",
    )


def absval() -> ConvexFn:
    def subdiff(x):
        if x > 0:
            return SetValue.point(1.0)
        if x < 0:
            return SetValue.point(-1.0)
        return SetValue.interval(-1.0, 1.0)

    return ConvexFn(
        name="abs",
        domain=Interval.real_line(),
        value=abs,
        conjugate_value=lambda v: 0.0 if -1.0 <= v <= 1.0 else INF,
        subdiff=subdiff,
        resolvent=lambda t: math.copysign(max(abs(t) - 1.0, 0.0), t),
        operator_name="subdiff_of(abs)",
    )


def abspow(p: float) -> ConvexFn:
    """``|x|^p`` for ``p > 1``; its conjugate is ``(p - 1) (|v| / p)^q``."""
    p = float(p)
    if not p > 1.0:
        raise CatalogError(f"abspow requires p > 1, got {p}")
    q = p / (p - 1.0)

    def conj(v):
        return (p - 1.0) * (abs(v) / p) ** q

    def grad(x):
        return math.copysign(p * abs(x) ** (p - 1.0), x)

    def resolvent(t):
        if t == 0.0:
            return 0.0
        # a + grad(a) = t has a unique root between 0 and t
        hi = abs(t)
        a = brentq(lambda s: s + p * s ** (p - 1.0) - hi, 0.0, hi, xtol=1e-15, rtol=8.9e-16)
        return math.copysign(a, t)

    return ConvexFn(
        name=f"abspow({p!r})",
        domain=Interval.real_line(),
        value=lambda x: abs(x) ** p,
        conjugate_value=conj,
        subdiff=lambda x: SetValue.point(grad(x)),
        resolvent=resolvent,
        operator_name=f"subdiff_of(abspow({p!r}))",
        params=(p,),
    )


def linear(c: float) -> ConvexFn:
    """``x -> c x``; the conjugate is the indicator of ``{c}``."""
    c = float(c)
    return ConvexFn(
        name=f"linear({c!r})",
        domain=Interval.real_line(),
        value=lambda x: c * x,
        conjugate_value=_indicator_point(c),
        subdiff=lambda x: SetValue.point(c),
        resolvent=lambda t: t - c,
        operator_name=f"subdiff_of(linear({c!r}))",
        params=(c,),
    )


_FN_FACTORIES = {
    "energy": (energy, 0),
    "ent": (ent, 0),
    "abs": (absval, 0),
    "abspow": (abspow, 1),
    "energy_shift": (energy_shift, 1),
    "linear": (linear, 1),
}

_CALL_RE = re.compile(r"^\s*([a-z_]+)\s*(?:\(\s*([^)]*)\s*\))?\s*$")


def _parse_call(name):
    m = _CALL_RE.match(name)
    if not m:
        raise CatalogError(f"cannot parse catalog name {name!r}")
    args = m.group(2)
    return m.group(1), [] if not args else [a.strip() for a in args.split(",")]


def fn_names() -> list[str]:
    return ["energy", "ent", "abs", "abspow(p)", "energy_shift(c)", "linear(c)"]


def catalog_fn(name: str, *params: float) -> ConvexFn:
    """Look up a catalog function, e.g. ``catalog_fn("abspow(1.75)")``
    or ``catalog_fn("abspow", 1.75)``."""
    base, args = _parse_call(name)
    if base not in _FN_FACTORIES:
        raise CatalogError(f"unknown convex function {name!r}")
    factory, arity = _FN_FACTORIES[base]
    values = [float(a) for a in args] + [float(a) for a in params]
    if len(values) != arity:
        raise CatalogError(f"{base} takes {arity} parameter(s), got {len(values)}")
    return factory(*values)


def identity_op() -> MonotoneOp:
    return MonotoneOp(
        name="identity",
        domain=Interval.real_line(),
        eval=lambda y: SetValue.point(y),
        graph_param=lambda t: (t, t),
    )


def log_op() -> MonotoneOp:
    return MonotoneOp(
        name="log",
        domain=Interval.open(0.0, INF),
        eval=lambda y: SetValue.point(math.log(y)) if y > 0 else SetValue.empty(),
        graph_param=lambda t: (math.exp(t), t),
    )


def subdiff_of(fn: ConvexFn) -> MonotoneOp:
    """The operator ``subdiff fn``; energy and ent map to identity and log."""
    if fn.operator_name == "identity":
        return identity_op()
    if fn.operator_name == "log":
        return log_op()

    def param(t):
        a = fn.resolvent(t)
        return (a, t - a)

    return MonotoneOp(
        name=fn.operator_name or f"subdiff_of({fn.name})",
        domain=fn.domain,
        eval=fn.subdiff,
        graph_param=param,
    )


def op_names() -> list[str]:
    return ["identity", "log", "subdiff_of(<fn>)"]


def catalog_op(name: str, fn: ConvexFn | None = None) -> MonotoneOp:
    """Look up an operator: ``identity``, ``log`` or ``subdiff_of(<fn name>)``."""
    name = name.strip()
    if name == "identity":
        return identity_op()
    if name == "log":
        return log_op()
    if name == "subdiff_of" and fn is not None:
        return subdiff_of(fn)
    m = re.match(r"^subdiff_of\((.*)\)$", name)
    if m:
        return subdiff_of(catalog_fn(m.group(1)))
    raise CatalogError(f"unknown operator {name!r}")


def graph_sample(op: MonotoneOp, n: int, window: Interval) -> list[tuple[float, float]]:
    """Sample ``n`` graph points at uniformly spaced parameters in ``window``."""
    if n < 2:
        raise ValueError("graph_sample needs n >= 2")
    w = window.intersect(op.param_range)
    if w.is_empty:
        raise ValueError(f"window {window} does not meet the parameter range of {op.name}")
    if not w.is_bounded:
        raise ValueError("graph_sample needs a bounded window")
    return [tuple(map(float, op.graph_param(float(t)))) for t in param_grid(w.lo, w.hi, n)]


def param_grid(lo: float, hi: float, n: int) -> np.ndarray:
    """``n`` points from ``lo`` to ``hi`` with exact endpoints."""
    i = np.arange(n, dtype=float)
    return lo + (hi - lo) * i / (n - 1)
