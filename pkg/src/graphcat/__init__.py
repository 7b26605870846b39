"""Graphical categories: graphs with loose ends, their embeddings and maps."""
from __future__ import annotations

from .core import (EXTENDED, PLAIN, Graph, GraphError, canonical_form, cycle,
                   edge_graph, is_connected, is_isomorphic, is_tree, is_valid,
                   line, loop_with_one_vertex, nodeless_loop, star, validate)
from .embeddings import (EmbClass, EtaleMap, all_unions, enumerate_embeddings,
                         is_union, leq, pullback_pushout_union, representative)
from .maps import (ClassicalMap, NewGraphMap, check_classical, check_new_map,
                   complement, compose, enumerate_classical, enumerate_maps,
                   factor, from_classical, is_active, is_inert, substitute,
                   to_classical)

__version__ = "0.1.0"

__all__ = [
    "EXTENDED", "PLAIN", "Graph", "GraphError", "canonical_form", "cycle",
    "edge_graph", "is_connected", "is_isomorphic", "is_tree", "is_valid", "line",
    "loop_with_one_vertex", "nodeless_loop", "star", "validate",
    "EmbClass", "EtaleMap", "all_unions", "enumerate_embeddings", "is_union", "leq",
    "pullback_pushout_union", "representative",
    "ClassicalMap", "NewGraphMap", "check_classical", "check_new_map", "complement",
    "compose", "enumerate_classical", "enumerate_maps", "factor", "from_classical",
    "is_active", "is_inert", "substitute", "to_classical",
]
