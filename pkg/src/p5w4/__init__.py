"""Certified coloring of (P5, 4-wheel)-free graphs.

Exact recognizers and oracles, clique-cutset decomposition, structural
certification of atoms, and a coloring driver that witnesses the
chi <= floor(3*omega/2) bound with machine-checkable audit trails.
"""

from .graph import (
    BlowupSpec,
    Graph,
    Relation,
    VertexSet,
    blowup,
    clique_blowup,
    complement,
    induced_subgraph,
    relation,
)

__all__ = [
    "Graph",
    "VertexSet",
    "Relation",
    "BlowupSpec",
    "blowup",
    "clique_blowup",
    "complement",
    "induced_subgraph",
    "relation",
]

__version__ = "0.1.0"
