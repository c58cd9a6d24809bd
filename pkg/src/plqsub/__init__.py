"""plqsub: convex analysis of univariate piecewise linear-quadratic functions.

Represents PLQ functions as (N+1)x4 matrices, computes Legendre-Fenchel
conjugates, exact subdifferentials and ε-subdifferentials in O(N), sweeps the
resulting multifunctions over query-point and ε grids, verifies the rectangle
approximation of ε-subgradients by exact subgradients, and renders primal /
dual / subdifferential views as deterministic SVG.
"""

from .core import (
    CheckReport,
    PlqFunction,
    PlqPiece,
    canonical_form,
    check,
    domain,
    eval_at,
    eval_grid,
    eval_grid_ops,
    is_convex,
    is_equal,
    loads,
    parse_plq,
    parse_plq_json,
    plq,
    serialize_plq,
    to_json,
)
from .epssub import (
    EpsQuery,
    EpsSubdiffResult,
    affine_minorant,
    eps_subdifferential,
    eps_subdifferential_with_conjugate,
)
from .errors import (
    MSG_NOT_CONVEX,
    MSG_NOT_IN_DOMAIN,
    MSG_NOT_PLQ,
    ConsistencyError,
    DomainError,
    InvalidPlqError,
    NotConvexError,
    PlqError,
)
from .extreal import DEFAULT_TOL, INF, NINF
from .interval import Interval
from .oracle import inf_f_minus_linear, oracle_eps_interval, oracle_member
from .sweep import (
    BrWitness,
    SubdiffGraph,
    br_witness,
    graph_to_csv,
    graph_to_json,
    sweep_eps,
    sweep_x,
)
from .transforms import conjugate, plq_min, subdifferential

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "PlqFunction",
    "PlqPiece",
    "canonical_form",
    "check",
    "domain",
    "eval_at",
    "eval_grid",
    "eval_grid_ops",
    "is_convex",
    "is_equal",
    "loads",
    "parse_plq",
    "parse_plq_json",
    "plq",
    "serialize_plq",
    "to_json",
    "EpsQuery",
    "EpsSubdiffResult",
    "affine_minorant",
    "eps_subdifferential",
    "eps_subdifferential_with_conjugate",
    "MSG_NOT_CONVEX",
    "MSG_NOT_IN_DOMAIN",
    "MSG_NOT_PLQ",
    "ConsistencyError",
    "DomainError",
    "InvalidPlqError",
    "NotConvexError",
    "PlqError",
    "DEFAULT_TOL",
    "INF",
    "NINF",
    "Interval",
    "inf_f_minus_linear",
    "oracle_eps_interval",
    "oracle_member",
    "BrWitness",
    "SubdiffGraph",
    "br_witness",
    "graph_to_csv",
    "graph_to_json",
    "sweep_eps",
    "sweep_x",
    "conjugate",
    "plq_min",
    "subdifferential",
    "__version__",
]
