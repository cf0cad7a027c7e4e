"""Graph reductions to monomial testing and their independent oracles."""

from .encoders import clique_monomial_check, encode_kclique, encode_kpath, has_clique_monomial
from .graph import Graph, parse_graph, serialize_graph
from .oracles import clique_oracle, path_oracle

__all__ = [
    "Graph",
    "parse_graph",
    "serialize_graph",
    "encode_kpath",
    "encode_kclique",
    "clique_monomial_check",
    "has_clique_monomial",
    "path_oracle",
    "clique_oracle",
]
