"""Graphs in which every k-subset of vertices is an identifying set."""

__version__ = "0.1.0"

from .graph import Graph, GraphError
from .formats import from_graph6, to_graph6
from .canon import canonical_form, is_isomorphic
from .identify import (
    MembershipVerdict,
    gr_membership,
    is_identifying,
    is_member,
    min_identifying_set,
    min_k,
    random_subset_id_probability,
)
from .search import SearchConfig, anneal_search, enumerate_gr, run_search, verify_extremal_properties
from .codes import xi_bounds

__all__ = [
    "Graph",
    "GraphError",
    "MembershipVerdict",
    "SearchConfig",
    "anneal_search",
    "canonical_form",
    "enumerate_gr",
    "from_graph6",
    "gr_membership",
    "is_identifying",
    "is_isomorphic",
    "is_member",
    "min_identifying_set",
    "min_k",
    "random_subset_id_probability",
    "run_search",
    "to_graph6",
    "verify_extremal_properties",
    "xi_bounds",
]
