"""Exact data limits for all-to-all comparison placement.

The main entry points:

* :func:`data_limit` solves L(D) exactly and returns a two-sided certificate;
* :func:`new_bound` and :func:`hkt_bound` give lower bounds on L(m);
* :func:`construct` builds the classical design families;
* :func:`exact_limit` computes L(m) for small m by exhaustive search;
* :func:`plan` turns the best known design into a placement manifest.
"""

from .bounds import bound_report, design_bound_report, hkt_bound, known_exact, new_bound
from .constructions import construct
from .design import CoveringDesign, dual, validate
from .errors import AtacError
from .lp import LimitCertificate, data_limit, verify_certificate
from .planner import best_known_design, plan
from .search import exact_limit, verify_table
from .structure import almost_plane_screen, classify, plane_existence

__version__ = "0.1.0"

__all__ = [
    "AtacError",
    "CoveringDesign",
    "LimitCertificate",
    "best_known_design",
    "bound_report",
    "classify",
    "construct",
    "data_limit",
    "design_bound_report",
    "dual",
    "exact_limit",
    "hkt_bound",
    "known_exact",
    "new_bound",
    "plan",
    "plane_existence",
    "almost_plane_screen",
    "validate",
    "verify_certificate",
    "verify_table",
]
