"""Wakeford pairings over finite groups: matching, counting, connectivity and checks."""
from .errors import DomainError, LimitError, PreconditionError, SpecParseError, WakefordError
from .groups import (
    Group,
    GroupSet,
    catalog,
    element_order,
    enumerate_subgroups,
    make_group,
    p_of_group,
    subgroup_generated,
)
from .isoperimetry import (
    ConnectivityReport,
    boundary,
    classify_connectivity,
    exterior,
    is_cauchy,
    is_vosper,
    kappa,
    verify_prop_cf,
)
from .pairing import MatchingReport, WakefordGraph, analyze, build_graph, hall_form_check, mu, mu_naive
from .setops import (
    ProgressionWitness,
    adjoin_identity,
    complement,
    invert_set,
    is_chowla,
    is_progression,
    lam,
    mul_sets,
    progression_witness,
    translate,
)
from .theorems import STATEMENT_IDS, VerificationRecord, replay, summarize, sweep

__version__ = "0.1.0"

__all__ = [
    "DomainError", "LimitError", "PreconditionError", "SpecParseError", "WakefordError",
    "Group", "GroupSet", "catalog", "element_order", "enumerate_subgroups", "make_group",
    "p_of_group", "subgroup_generated",
    "ConnectivityReport", "boundary", "classify_connectivity", "exterior", "is_cauchy",
    "is_vosper", "kappa", "verify_prop_cf",
    "MatchingReport", "WakefordGraph", "analyze", "build_graph", "hall_form_check", "mu", "mu_naive",
    "ProgressionWitness", "adjoin_identity", "complement", "invert_set", "is_chowla",
    "is_progression", "lam", "mul_sets", "progression_witness", "translate",
    "STATEMENT_IDS", "VerificationRecord", "replay", "summarize", "sweep",
    "__version__",
]
