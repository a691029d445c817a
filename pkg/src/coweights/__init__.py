"""Exact combinatorics of rational coweights: dominance order, Langlands
retraction, admissible index sets and truncation thresholds."""
from __future__ import annotations

from .coneorder import (
    Certificate,
    Comparison,
    ConeProblem,
    Face,
    cone_feasible,
    face_membership,
    is_dominant,
    leq,
    leq_G,
    pr_P,
    strictly_feasible,
)
from .langlands import RetractionResult, UniquenessError, fiber_contains, retract, retract_shifted
from .posettop import Classification, FinitePoset, SetDescription, classify_cone, classify_finite
from .rootdata import Coweight, GroupData, GroupSpec, Root, build_group, enumerate_roots, parse_group_spec
from .strata import (
    AdmissibleSet,
    StratumIndex,
    check_admissible,
    check_theorem_cover,
    covering_set,
    empty_intersection,
    enumerate_candidates,
    eta_stratum,
    hn_parabolic,
    member,
)
from .vanishing import StrangenessTable, canonical_levi, minimal_constants, root_module

__version__ = "0.1.0"
