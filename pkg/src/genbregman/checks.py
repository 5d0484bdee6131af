"""Invariant suites run by ``gbd check``.

Each suite returns a list of :class:`Assertion`; ``worst_slack`` is the
smallest margin by which the inequality held (negative means it failed).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np

from .analysis import coercivity_evidence, envelope, lower_bound_gap, prox
from .catalog import abspow, absval, energy, energy_shift, ent, graph_sample, identity_op, log_op, param_grid, subdiff_of
from .gbd import CLOSED_FORM_NAMES, GbdSpec, closed_form_eval, closed_form_operator
from .representatives import blend, fenchel_young, fitzpatrick_closed, sigma_closed
from .xreal import INF, Interval

SUITES = ("representativity", "ordering", "lower-bound", "coercivity", "prox-closed-form")


@dataclass
class Assertion:
    name: str
    passed: bool
    worst_slack: float

    def to_dict(self):
        d = asdict(self)
        if not math.isfinite(self.worst_slack):
            d["worst_slack"] = "inf" if self.worst_slack > 0 else "-inf"
        return d


def _ok(name, slacks, tol):
    worst = min(slacks) if slacks else INF
    return Assertion(name, bool(worst >= -tol), float(worst))


def catalog_reps():
    """Every constructed representative, paired with graph points of its operator."""
    reps = [
        (fitzpatrick_closed("identity"), (-5.0, 5.0)),
        (sigma_closed("identity"), (-5.0, 5.0)),
        (fitzpatrick_closed("log"), (-4.0, 2.0)),
        (sigma_closed("log"), (-4.0, 2.0)),
        (fenchel_young(ent()), (-4.0, 2.0)),
        (fenchel_young(energy()), (-5.0, 5.0)),
        (fenchel_young(absval()), (-4.0, 4.0)),
        (fenchel_young(abspow(1.75)), (-4.0, 4.0)),
        (blend(fitzpatrick_closed("log"), sigma_closed("log"), 0.5), (-4.0, 2.0)),
        (blend(fitzpatrick_closed("identity"), fenchel_young(energy()), 0.25), (-5.0, 5.0)),
    ]
    return reps


def rep_graph_points(rep, window, n):
    if rep.operator_name == "log":
        # exact graph points (a, log a); (e^t, t) can miss y <= log x by one ulp
        return [(float(a), math.log(a)) for a in np.exp(param_grid(window[0], window[1], n))]
    return graph_sample(rep.operator, n, Interval.closed(*window))


def suite_representativity(seed=0, n_random=1000, n_graph=100):
    rng = np.random.default_rng(seed)
    out = []
    for rep, window in catalog_reps():
        pts = rng.uniform(-5.0, 5.0, size=(n_random, 2))
        lower = [rep(x, v) - x * v for x, v in pts]
        out.append(_ok(f"{rep.label}: h >= xv at random points", lower, 1e-9))
        on = [abs(rep(x, v) - x * v) for x, v in rep_graph_points(rep, window, n_graph)]
        out.append(_ok(f"{rep.label}: h == xv on the graph", [-e for e in on], 1e-9))
    return out


def suite_ordering(seed=0, n=60):
    xs = param_grid(5.0 / n, 5.0, n)
    ys = param_grid(-3.0, 3.0, n)
    F, S = fitzpatrick_closed("log"), sigma_closed("log")
    fy = fenchel_young(ent())
    s1, s2 = [], []
    for x, y in itertools.product(xs, ys):
        a, b, c = F(x, y), fy(x, y), S(x, y)
        if a < INF and b < INF:
            s1.append(b - a)
        if b < INF and c < INF:
            s2.append(c - b)
    out = [_ok("F_log <= ent + exp", s1, 1e-9), _ok("ent + exp <= sigma_log", s2, 1e-9)]
    d1, d2 = [], []
    for x, y in itertools.product(xs, param_grid(5.0 / n, 5.0, n)):
        a = closed_form_eval("fitz_log_closed", x, y)
        b = closed_form_eval("fy_log_closed", x, y)
        c = closed_form_eval("sigma_log_closed", x, y)
        if a < INF and b < INF:
            d1.append(b - a)
        if b < INF and c < INF:
            d2.append(c - b)
    out.append(_ok("D_F_log <= D_fy", d1, 1e-9))
    out.append(_ok("D_fy <= D_sigma_log", d2, 1e-9))
    return out


def lower_bound_samples():
    """Graph samples with parameters for the identity and log operators."""
    out = {}
    for op, (lo, hi, n) in ((identity_op(), (-12.0, 12.0, 2401)), (log_op(), (-16.0, 3.0, 3000))):
        params = list(param_grid(lo, hi, n))
        out[op.name] = (graph_sample(op, n, Interval.closed(lo, hi)), params)
    return out


def random_pair(name, rng):
    if closed_form_operator(name).name == "identity":
        x, y = rng.uniform(-5.0, 5.0, 2)
        if name == "sigma_id" and rng.random() < 0.5:
            y = x
        return float(x), float(y)
    x = 0.0 if rng.random() < 0.1 else float(rng.uniform(0.0, 5.0))
    y = float(rng.uniform(1e-3, 5.0))
    if name == "sigma_log_closed" and rng.random() < 0.5:
        y = float(rng.uniform(1e-3, max(x, 2e-3)))
    return x, y


def suite_lower_bound(seed=0, n=1000):
    rng = np.random.default_rng(seed)
    samples = lower_bound_samples()
    out = []
    per = {name: [] for name in CLOSED_FORM_NAMES}
    for k in range(n):
        name = CLOSED_FORM_NAMES[k % len(CLOSED_FORM_NAMES)]
        x, y = random_pair(name, rng)
        pts, params = samples[closed_form_operator(name).name]
        g = lower_bound_gap(name, x, y, pts, params)
        if g < INF:
            per[name].append(g)
    for name in CLOSED_FORM_NAMES:
        out.append(_ok(f"{name}: D >= d^2/4", per[name], 1e-8))
    return out


def coercivity_cases():
    """(label, spec, side, point, expected verdict) for the catalog examples."""
    cases = []
    f = abspow(1.75)
    cases.append(("|x|^1.75 left", GbdSpec(subdiff_of(f), fenchel_young(f)), "left", 1.0))
    for p in (2.0, 3.0):
        f = abspow(p)
        cases.append((f"|x|^{p:g} right", GbdSpec(subdiff_of(f), fenchel_young(f)), "right", 1.0))
    cases.append(("sigma_log left", GbdSpec(log_op(), sigma_closed("log")), "left", 1.0))
    return cases


def suite_coercivity(seed=0):
    out = []
    for label, spec, side, point in coercivity_cases():
        rep = coercivity_evidence(spec, side, point)
        ok = rep.verdict == "evidence-for-supercoercive"
        out.append(Assertion(f"{label}: evidence-for-supercoercive", ok, rep.ratios[-1]))
    return out


MOREAU_GAMMAS = (0.1, 1.0, 10.0)
MOREAU_GRID = tuple(np.linspace(-5.0, 5.0, 5))


def suite_prox(seed=0):
    spec = GbdSpec(identity_op(), fitzpatrick_closed("identity"))
    errs = []
    for g, c, y in itertools.product(MOREAU_GAMMAS, MOREAU_GRID, MOREAU_GRID):
        r = prox(energy_shift(c), spec, g, "left", y)
        errs.append(-abs(r.minimizer - (2 * g * c + y) / (2 * g + 1)))
    out = [_ok("Moreau prox minimizer", errs, 1e-8)]
    drops = []
    for c, y in itertools.product((-2.0, 1.0), (-3.0, 0.5, 4.0)):
        env = [envelope(energy_shift(c), spec, g, "left", y) for g in (0.1, 0.3, 1.0, 3.0, 10.0)]
        drops.extend(a - b for a, b in zip(env, env[1:]))
    out.append(_ok("envelope non-increasing in gamma", drops, 1e-12))
    return out


_SUITES = {
    "representativity": suite_representativity,
    "ordering": suite_ordering,
    "lower-bound": suite_lower_bound,
    "coercivity": suite_coercivity,
    "prox-closed-form": suite_prox,
}


def run_suite(what: str, seed: int = 0) -> list[Assertion]:
    try:
        fn = _SUITES[what]
    except KeyError:
        raise ValueError(f"unknown check suite {what!r}; choose from {SUITES}") from None
    return fn(seed=seed)
