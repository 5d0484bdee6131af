"""Representative functions of maximally monotone operators.

A representative ``h`` of an operator ``S`` is a convex lsc function on
``R x R`` with ``h(x, v) >= x v`` everywhere and equality exactly on the
graph of ``S``.  This module builds the Fenchel-Young representative
``f (+) f*``, the Fitzpatrick function ``F_S`` (the smallest representative)
and ``sigma_S`` (the largest), both in closed form for the identity and the
logarithm and numerically from graph samples or grids, plus convex blends.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._golden import golden_max
from .catalog import ConvexFn, MonotoneOp, identity_op, log_op, subdiff_of
from .lambertw import w0_exp
from .xreal import INF, check, format_ext, parse_ext, xadd, xscale

KINDS = (
    "fenchel-young",
    "fitzpatrick-closed",
    "sigma-closed",
    "fitzpatrick-numeric",
    "sigma-numeric",
    "blend",
)

_PROVENANCE = {
    "fenchel-young": "fenchel-young",
    "fitzpatrick-closed": "fitzpatrick",
    "sigma-closed": "sigma",
    "fitzpatrick-numeric": "numeric",
    "sigma-numeric": "numeric",
    "blend": "blend",
}


class RepError(ValueError):
    pass


@dataclass(frozen=True)
class Rep:
    """A bivariate representative ``h(x, v)`` of ``operator``.

    ``operator`` is None for numeric representatives built from bare samples.
    """

    kind: str
    operator: MonotoneOp | None
    func: Callable[[float, float], float]
    label: str

    def __call__(self, x: float, v: float) -> float:
        return check(self.func(float(x), float(v)))

    @property
    def operator_name(self) -> str:
        return self.operator.name if self.operator is not None else "?"

    @property
    def provenance(self) -> str:
        return _PROVENANCE[self.kind]


def _safe_exp(t):
    try:
        return math.exp(t)
    except OverflowError:
        return INF


def fenchel_young(f: ConvexFn) -> Rep:
    def h(x, v):
        return xadd(f.value(x), f.conjugate_value(v))

    return Rep("fenchel-young", subdiff_of(f), h, f"fy:{f.name}")


def _fitz_id(x, y):
    return 0.25 * (x + y) ** 2


def _fitz_log(x, y):
    if x < 0:
        return INF
    if x == 0:
        return _safe_exp(y - 1.0)
    # W = W0(x e^{1-y}); e^{W+y-1} == x/W, take the form that cannot overflow
    W = w0_exp(math.log(x) + 1.0 - y)
    tail = _safe_exp(W + y - 1.0) if W < 1.0 else x / W
    return xadd(x * y + x * W - 2.0 * x, tail)


def _sigma_id(x, y):
    return x * x if x == y else INF


def _sigma_log(x, y):
    if x > 0 and y <= math.log(x):
        return x * math.log(x)
    return INF


def _op_kind(op):
    name = op if isinstance(op, str) else op.name
    if name not in ("identity", "log"):
        raise RepError(f"no closed form for operator {name!r}")
    return name


def fitzpatrick_closed(op) -> Rep:
    """Closed-form Fitzpatrick function of ``identity`` or ``log``."""
    name = _op_kind(op)
    if name == "identity":
        return Rep("fitzpatrick-closed", identity_op(), _fitz_id, "F_Id")
    return Rep("fitzpatrick-closed", log_op(), _fitz_log, "F_log")


def sigma_closed(op) -> Rep:
    """Closed-form ``sigma_S`` of ``identity`` or ``log``.

    ``sigma_log`` is ``+inf`` for ``x <= 0``; the boundary behaviour at the
    origin is handled by the lower-closed distances, not here.
    """
    name = _op_kind(op)
    if name == "identity":
        return Rep("sigma-closed", identity_op(), _sigma_id, "sigma_Id")
    return Rep("sigma-closed", log_op(), _sigma_log, "sigma_log")


def fitzpatrick_numeric(samples: Sequence[tuple[float, float]], op: MonotoneOp | None = None,
                        params: Sequence[float] | None = None) -> Rep:
    """Lower estimate of ``F_S`` from graph samples.

    ``F(x, y) ~ max over samples (z, w) of z*y + x*w - z*w``.  If ``op`` and the
    sample ``params`` are given, the best sample is refined by a golden-section
    search in the graph parameter between its two neighbours.
    """
    if len(samples) == 0:
        raise RepError("fitzpatrick_numeric needs at least one graph sample")
    pts = np.asarray(samples, dtype=float)
    z, w = pts[:, 0], pts[:, 1]
    zw = z * w
    refine = op is not None and params is not None
    if refine:
        params = np.asarray(params, dtype=float)
        if params.shape != z.shape:
            raise RepError("params must match samples one-to-one")

    def h(x, y):
        vals = z * y + x * w - zw
        i = int(np.argmax(vals))
        best = float(vals[i])
        if refine:
            lo = params[max(i - 1, 0)]
            hi = params[min(i + 1, len(params) - 1)]

            def phi(t):
                a, b = op.graph_param(t)
                return a * y + x * b - a * b

            _, val, _ = golden_max(phi, lo, hi, tol=1e-12 * (1.0 + abs(hi - lo)))
            best = max(best, val)
        return best

    name = op.name if op is not None else "samples"
    return Rep("fitzpatrick-numeric", op, h, f"F_num({name},{len(z)})")


def blend(h1: Rep, h2: Rep, lam: float) -> Rep:
    """Convex combination ``lam*h1 + (1-lam)*h2``; zero-weight terms drop out."""
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise RepError(f"blend weight must lie in [0, 1], got {lam}")
    if h1.operator is None or h1.operator_name != h2.operator_name:
        raise RepError(
            f"cannot blend representatives of {h1.operator_name!r} and {h2.operator_name!r}")

    def h(x, v):
        acc = 0.0
        if lam > 0.0:
            acc = xadd(acc, xscale(lam, h1(x, v)))
        if lam < 1.0:
            acc = xadd(acc, xscale(1.0 - lam, h2(x, v)))
        return acc

    return Rep("blend", h1.operator, h, f"blend({h1.label},{h2.label},{lam!r})")


@dataclass(frozen=True)
class Surface:
    """A bivariate function sampled on a tensor grid, ``values[i, j] = f(x_i, v_j)``."""

    x_grid: np.ndarray
    v_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x_grid, dtype=float)
        v = np.asarray(self.v_grid, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (x.size, v.size):
            raise ValueError(f"values shape {vals.shape} does not match grids ({x.size}, {v.size})")
        if np.any(np.diff(x) <= 0) or np.any(np.diff(v) <= 0):
            raise ValueError("surface grids must be strictly increasing")
        if np.any(np.isnan(vals)):
            raise ValueError("surface values must not be NaN")
        object.__setattr__(self, "x_grid", x)
        object.__setattr__(self, "v_grid", v)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, f, x_grid, v_grid) -> "Surface":
        x_grid = np.asarray(x_grid, dtype=float)
        v_grid = np.asarray(v_grid, dtype=float)
        vals = np.array([[f(float(x), float(v)) for v in v_grid] for x in x_grid], dtype=float)
        return cls(x_grid, v_grid, vals)

    def to_csv(self, fh=None, header=("x", "v", "value")) -> str | None:
        """Write rows ``x,v,value`` in row-major order; returns the text if ``fh`` is None."""
        out = io.StringIO() if fh is None else fh
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for i, x in enumerate(self.x_grid):
            for j, v in enumerate(self.v_grid):
                writer.writerow((repr(float(x)), repr(float(v)), format_ext(self.values[i, j])))
        return out.getvalue() if fh is None else None

    @classmethod
    def from_csv(cls, fh) -> "Surface":
        reader = csv.reader(fh)
        next(reader)
        rows = [(float(a), float(b), parse_ext(c)) for a, b, c in reader]
        xs = sorted({r[0] for r in rows})
        vs = sorted({r[1] for r in rows})
        xi = {x: i for i, x in enumerate(xs)}
        vi = {v: j for j, v in enumerate(vs)}
        vals = np.full((len(xs), len(vs)), INF)
        for x, v, val in rows:
            vals[xi[x], vi[v]] = val
        return cls(np.array(xs), np.array(vs), vals)


def sigma_numeric(F: Surface, x_out=None, y_out=None) -> Surface:
    """Discrete conjugate with swapped slopes: ``G(x, y) = max_{u,v} u*y + v*x - F(u, v)``.

    A lower estimate of ``sigma_S`` on the grid window.  The max is taken
    over ``u`` first and then over ``v``, which gives the same value as the
    joint max in ``O(N M (Nx + Ny))`` time.  The output grids default to the
    input grids.
    """
    vals = F.values
    if not np.any(np.isfinite(vals)):
        raise RepError("sigma_numeric needs at least one finite grid value")
    u = F.x_grid
    v = F.v_grid
    xs = u if x_out is None else np.asarray(x_out, dtype=float)
    ys = v if y_out is None else np.asarray(y_out, dtype=float)
    G = np.empty((xs.size, ys.size))
    for j, y in enumerate(ys):
        # inner[k] = max_i u_i*y - F(u_i, v_k)
        inner = np.max(u[:, None] * y - vals, axis=0)
        G[:, j] = np.max(v[:, None] * xs[None, :] + inner[:, None], axis=0)
    return Surface(xs, ys, G)


def sigma_numeric_rep(F: Surface, op: MonotoneOp | None = None) -> Rep:
    """Pointwise evaluator of the discrete swapped conjugate of ``F``."""
    if not np.any(np.isfinite(F.values)):
        raise RepError("sigma_numeric needs at least one finite grid value")
    U, V = np.meshgrid(F.x_grid, F.v_grid, indexing="ij")
    mask = np.isfinite(F.values)
    u, v, f = U[mask], V[mask], F.values[mask]

    def h(x, y):
        return float(np.max(u * y + v * x - f))

    return Rep("sigma-numeric", op, h, f"sigma_num({op.name if op else 'grid'})")


REP_NAMES = ("F_Id", "F_log", "sigma_Id", "sigma_log", "fy:<fn>")


def rep_by_name(name: str) -> Rep:
    """Resolve a CLI representative name such as ``F_log`` or ``fy:ent``."""
    from .catalog import catalog_fn

    table = {
        "F_Id": lambda: fitzpatrick_closed("identity"),
        "F_log": lambda: fitzpatrick_closed("log"),
        "sigma_Id": lambda: sigma_closed("identity"),
        "sigma_log": lambda: sigma_closed("log"),
    }
    if name in table:
        return table[name]()
    if name.startswith("fy:"):
        return fenchel_young(catalog_fn(name[3:]))
    raise RepError(f"unknown representative {name!r}")
