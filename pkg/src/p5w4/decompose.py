"""Clique cutset detection and the atom decomposition tree.

Separators come from a minimal triangulation (MCS-M): with a minimal
elimination ordering, the higher-neighborhood of a vertex in the filled
graph that induces a clique in the original graph is a clique minimal
separator, and a graph with no such vertex is an atom.  The first separator
in the canonical order is used, so decompositions are deterministic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Union

from .errors import DisconnectedInputError
from .graph import Graph, VertexSet, bits, induced_subgraph, is_clique_mask


def _mcs_m(g: Graph) -> tuple[list[int], list[int]]:
    """Maximum-cardinality-search-for-minimal-triangulation.

    Returns (order, fill_rows): ``order`` lists vertices in elimination order
    (position 0 eliminated first), ``fill_rows`` is the filled graph's
    adjacency as bit rows.  Ties break toward the smallest vertex index.
    """
    n = g.n
    weight = [0] * n
    numbered = [False] * n
    rank = [0] * n  # elimination position, 0-based
    filled = list(g.adj)
    for i in range(n - 1, -1, -1):
        v = max(
            (u for u in range(n) if not numbered[u]),
            key=lambda u: (weight[u], -u),
        )
        numbered[v] = True
        rank[v] = i
        # u qualifies if some path v..u through unnumbered vertices has all
        # internal weights < weight[u]; dist = minimax internal weight,
        # computed by Dijkstra-style relaxation
        frontier = [u for u in bits(g.adj[v]) if not numbered[u]]
        heap = [(-1, u) for u in frontier]
        heapq.heapify(heap)
        best = dict((u, -1) for u in frontier)
        while heap:
            d, u = heapq.heappop(heap)
            if best.get(u) != d:
                continue
            through = max(d, weight[u])
            for w in bits(g.adj[u]):
                if numbered[w] or w == v:
                    continue
                if w not in best or through < best[w]:
                    best[w] = through
                    heapq.heappush(heap, (through, w))
        for u, d in best.items():
            if d < weight[u] or (g.adj[v] >> u & 1):
                weight[u] += 1
                if not (g.adj[v] >> u & 1):
                    filled[u] |= 1 << v
                    filled[v] |= 1 << u
    order = [0] * n
    for v in range(n):
        order[rank[v]] = v
    return order, filled


@dataclass(frozen=True)
class CutsetSplit:
    """A clique cutset ``q`` separating nonempty ``v1`` from ``v2``."""

    q: VertexSet
    v1: VertexSet
    v2: VertexSet


def find_clique_cutset(g: Graph) -> CutsetSplit | None:
    """First clique cutset in canonical MCS-M order, or None iff ``g`` is an atom."""
    if not g.is_connected():
        raise DisconnectedInputError("find_clique_cutset requires a connected graph")
    if g.n <= 1:
        return None
    order, filled = _mcs_m(g)
    rank = {v: i for i, v in enumerate(order)}
    for v in order:
        higher = 0
        for u in bits(filled[v]):
            if rank[u] > rank[v]:
                higher |= 1 << u
        if not is_clique_mask(g, higher):
            continue
        comp = g.component_mask(v, g.full_mask & ~higher)
        rest = g.full_mask & ~higher & ~comp
        if rest:
            q, c, r = _minimalize_cutset(g, v, higher)
            return CutsetSplit(
                q=VertexSet(g.n, mask=q),
                v1=VertexSet(g.n, mask=c),
                v2=VertexSet(g.n, mask=r),
            )
    return None


def _minimalize_cutset(g: Graph, x: int, s: int) -> tuple[int, int, int]:
    """Shrink a valid clique cutset until every cutset vertex has neighbors
    on both sides; the result is a minimal separator between the sides.

    Two phases keep the sides separated: vertices without a neighbor in x's
    component fall to the far side first, then vertices without a neighbor in
    the far side get absorbed into x's component.
    """
    comp = g.component_mask(x, g.full_mask & ~s)
    s1 = 0
    for u in bits(s):
        if g.adj[u] & comp:
            s1 |= 1 << u
    rest = g.full_mask & ~s1 & ~comp
    s2 = 0
    for u in bits(s1):
        if g.adj[u] & rest:
            s2 |= 1 << u
    comp = g.component_mask(x, g.full_mask & ~s2)
    rest = g.full_mask & ~s2 & ~comp
    return s2, comp, rest


@dataclass(frozen=True)
class AtomLeaf:
    """Atom subgraph with its vertex map into the root graph."""

    graph: Graph
    vmap: tuple[int, ...]  # leaf vertex -> root vertex


@dataclass(frozen=True)
class AtomNode:
    """Internal node: a cutset split (in root coordinates) and two subtrees."""

    split: CutsetSplit
    left: "AtomTree"
    right: "AtomTree"


AtomTree = Union[AtomLeaf, AtomNode]


def atom_tree(g: Graph) -> AtomTree:
    """Recursive cutset decomposition down to atoms.

    Cutset vertices are duplicated into both children, so leaf vertex maps
    are many-to-one on cutsets.  Splits are reported in root coordinates.
    """
    if not g.is_connected():
        raise DisconnectedInputError("atom_tree requires a connected graph")
    return _atom_tree_rec(g, tuple(range(g.n)), g.n)


def _atom_tree_rec(g: Graph, vmap: tuple[int, ...], root_n: int) -> AtomTree:
    split = find_clique_cutset(g)
    if split is None:
        return AtomLeaf(graph=g, vmap=vmap)
    left_mask = split.q.mask | split.v1.mask
    right_mask = split.q.mask | split.v2.mask
    gl, ml = induced_subgraph(g, left_mask)
    gr, mr = induced_subgraph(g, right_mask)
    root_split = CutsetSplit(
        q=VertexSet(root_n, mask=_lift(split.q.mask, vmap)),
        v1=VertexSet(root_n, mask=_lift(split.v1.mask, vmap)),
        v2=VertexSet(root_n, mask=_lift(split.v2.mask, vmap)),
    )
    return AtomNode(
        split=root_split,
        left=_atom_tree_rec(gl, tuple(vmap[v] for v in ml), root_n),
        right=_atom_tree_rec(gr, tuple(vmap[v] for v in mr), root_n),
    )


def _lift(mask: int, vmap: tuple[int, ...]) -> int:
    out = 0
    for v in bits(mask):
        out |= 1 << vmap[v]
    return out


def atom_leaves(tree: AtomTree) -> list[AtomLeaf]:
    """Leaves in deterministic left-to-right order."""
    if isinstance(tree, AtomLeaf):
        return [tree]
    return atom_leaves(tree.left) + atom_leaves(tree.right)
