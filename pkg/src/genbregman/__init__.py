"""Generalized Bregman distances built from representative functions of
maximally monotone operators on the real line."""

__version__ = "0.1.0"

from .xreal import INF, ExtRealError, Interval, SetValue
from .lambertw import LambertWDomainError, w0, wm1, w0_exp, wm1_neglog
from .catalog import (
    ConvexFn,
    MonotoneOp,
    abspow,
    absval,
    catalog_fn,
    catalog_op,
    energy,
    energy_shift,
    ent,
    graph_sample,
    identity_op,
    linear,
    log_op,
    subdiff_of,
)
from .representatives import (
    Rep,
    Surface,
    blend,
    fenchel_young,
    fitzpatrick_closed,
    fitzpatrick_numeric,
    rep_by_name,
    sigma_closed,
    sigma_numeric,
    sigma_numeric_rep,
)
from .gbd import (
    CLOSED_FORM_NAMES,
    GbdSpec,
    bregman_eval,
    closed_form_eval,
    gbd_eval,
    lower_closure_check,
)
from .discovery import LineProbe, line_intersections, sigma_estimate
from .analysis import (
    CoercivityReport,
    ProxResult,
    coercivity_evidence,
    envelope,
    lower_bound_gap,
    prox,
    sum_coercivity_evidence,
)
