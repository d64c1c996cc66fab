"""Immutable simple graphs on dense integer vertices, with bitset set algebra.

Adjacency is stored as one Python int per vertex (bit v of ``adj[u]`` set iff
``uv`` is an edge), so neighborhood intersection, completeness tests and
vertex-set algebra are word-parallel.  Vertices are ``0..n-1``; labels, if
any, live in the I/O layer.

Graphs and vertex sets are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .errors import GraphConstructionError

VERTEX_CAP = 128


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for v in members:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), cap: int = VERTEX_CAP):
        if n < 0 or n > cap:
            raise GraphConstructionError(f"vertex count {n} outside [0, {cap}]")
        rows = [0] * n
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphConstructionError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphConstructionError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphConstructionError(f"duplicate edge ({u},{v})")
            seen.add(key)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self.n = n
        self.adj = tuple(rows)
        self._hash = hash((n, self.adj))

    @classmethod
    def from_rows(cls, rows: tuple[int, ...]) -> "Graph":
        """Build from pre-validated adjacency rows (internal fast path)."""
        g = object.__new__(cls)
        g.n = len(rows)
        g.adj = rows
        g._hash = hash((g.n, rows))
        return g

    # -- queries ---------------------------------------------------------

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors_mask(self, u: int) -> int:
        return self.adj[u]

    def neighbors(self, u: int) -> tuple[int, ...]:
        return tuple(bits(self.adj[u]))

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            m = self.adj[u] >> (u + 1) << (u + 1)
            for v in bits(m):
                out.append((u, v))
        return out

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def vset(self, members: Iterable[int]) -> "VertexSet":
        return VertexSet(self.n, mask=mask_of(members))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return self.component_mask(0) == self.full_mask

    def component_mask(self, v: int, within: int | None = None) -> int:
        """Mask of the connected component of ``v`` inside ``within`` (default all)."""
        allowed = self.full_mask if within is None else within
        seen = 1 << v
        frontier = seen
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= self.adj[u] & allowed
            frontier = nxt & ~seen
            seen |= frontier
        return seen

    def components(self, within: int | None = None) -> list[int]:
        """Connected-component masks inside ``within``, ordered by least vertex."""
        remaining = self.full_mask if within is None else within
        out = []
        while remaining:
            v = (remaining & -remaining).bit_length() - 1
            c = self.component_mask(v, remaining)
            out.append(c)
            remaining &= ~c
        return out

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class VertexSet:
    """Immutable subset of the vertices of a particular graph size.

    Always interpreted against the graph it was created from; only the vertex
    count is carried, so set algebra across same-sized graphs is possible but
    meaningless -- callers keep sets with their graph.
    """

    __slots__ = ("n", "mask")

    def __init__(self, n: int, members: Iterable[int] = (), mask: int | None = None):
        self.n = n
        m = mask_of(members) if mask is None else mask
        if m >> n:
            raise GraphConstructionError(f"vertex set {m:#x} out of range for n={n}")
        self.mask = m

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, mask=self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, mask=self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, mask=self.mask & ~other.mask)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VertexSet) and self.n == other.n and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self)})"


def as_mask(s: "VertexSet | Iterable[int] | int") -> int:
    """Normalize a vertex-set argument (VertexSet, iterable, or raw mask) to a mask."""
    if isinstance(s, VertexSet):
        return s.mask
    if isinstance(s, int):
        return s
    return mask_of(s)


class Relation(Enum):
    COMPLETE = "complete"
    ANTICOMPLETE = "anticomplete"
    MIXED = "mixed"


def complement(g: Graph) -> Graph:
    """Complement graph: edge iff non-edge of ``g`` (no self-loops)."""
    full = g.full_mask
    rows = tuple((full & ~g.adj[u]) & ~(1 << u) for u in range(g.n))
    return Graph.from_rows(rows)


def induced_subgraph(g: Graph, s: "VertexSet | Iterable[int] | int") -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``s`` plus the index map (new index -> old vertex).

    The map lists the members of ``s`` ascending, so it is a bijection onto
    ``[0, |s|)``.
    """
    m = as_mask(s)
    if m >> g.n:
        raise GraphConstructionError(f"induced set out of range for n={g.n}")
    old = tuple(bits(m))
    pos = {v: i for i, v in enumerate(old)}
    rows = []
    for v in old:
        row = 0
        inter = g.adj[v] & m
        for w in bits(inter):
            row |= 1 << pos[w]
        rows.append(row)
    return Graph.from_rows(tuple(rows)), old


def relation(g: Graph, x: "VertexSet | Iterable[int] | int", y: "VertexSet | Iterable[int] | int") -> Relation:
    """COMPLETE / ANTICOMPLETE / MIXED between disjoint vertex sets.

    Vacuous cross-pair sets (either side empty) report COMPLETE.
    """
    xm, ym = as_mask(x), as_mask(y)
    if xm & ym:
        raise GraphConstructionError("relation() requires disjoint sets")
    return _relation_masks(g, xm, ym)


def _relation_masks(g: Graph, xm: int, ym: int) -> Relation:
    all_complete = True
    all_anti = True
    for u in bits(xm):
        hit = g.adj[u] & ym
        if hit != ym:
            all_complete = False
        if hit:
            all_anti = False
        if not all_complete and not all_anti:
            return Relation.MIXED
    return Relation.COMPLETE if all_complete else Relation.ANTICOMPLETE


def is_complete_sets(g: Graph, xm: int, ym: int) -> bool:
    """Every cross pair adjacent (vacuously true if either side empty)."""
    return all(g.adj[u] & ym == ym for u in bits(xm))


def is_anticomplete_sets(g: Graph, xm: int, ym: int) -> bool:
    """No cross pair adjacent."""
    return all(not (g.adj[u] & ym) for u in bits(xm))


def is_clique_mask(g: Graph, m: int) -> bool:
    for u in bits(m):
        if m & ~(g.adj[u] | (1 << u)):
            return False
    return True


def is_stable_mask(g: Graph, m: int) -> bool:
    return all(not (g.adj[u] & m) for u in bits(m))


@dataclass(frozen=True)
class BlowupSpec:
    """Substitution pattern: one part graph per base vertex (parts may be empty).

    Every part must induce a P3-free graph; clique parts are the special case
    used by the clique-blowup generators.
    """

    base: Graph
    parts: tuple[Graph, ...]


def blowup(spec: BlowupSpec, cap: int = VERTEX_CAP) -> tuple[Graph, tuple[tuple[int, ...], ...]]:
    """Expand a blowup spec into a concrete graph plus the part map.

    Part ``i`` occupies a contiguous vertex block (in base-vertex order);
    cross-part adjacency copies the base adjacency exactly, and each part's
    internal edges are copied verbatim.
    """
    from .detect import find_p3_in  # local import: detect depends on graph

    if len(spec.parts) != spec.base.n:
        raise GraphConstructionError(
            f"blowup needs {spec.base.n} parts, got {len(spec.parts)}"
        )
    for i, part in enumerate(spec.parts):
        p3 = find_p3_in(part, part.full_mask)
        if p3 is not None:
            raise GraphConstructionError(
                f"part {i} is not P3-free (induced P3 on {p3})"
            )
    total = sum(p.n for p in spec.parts)
    if total > cap:
        raise GraphConstructionError(f"blowup has {total} vertices, cap is {cap}")
    offsets = []
    off = 0
    for p in spec.parts:
        offsets.append(off)
        off += p.n
    edges = []
    for i, p in enumerate(spec.parts):
        base_off = offsets[i]
        for u, v in p.edges():
            edges.append((base_off + u, base_off + v))
    for i, j in spec.base.edges():
        for u in range(spec.parts[i].n):
            for v in range(spec.parts[j].n):
                edges.append((offsets[i] + u, offsets[j] + v))
    part_map = tuple(
        tuple(range(offsets[i], offsets[i] + spec.parts[i].n)) for i in range(spec.base.n)
    )
    return Graph(total, edges, cap=cap), part_map


def clique_blowup(base: Graph, sizes: Iterable[int], cap: int = VERTEX_CAP) -> tuple[Graph, tuple[tuple[int, ...], ...]]:
    """Clique-blowup: replace base vertex ``i`` by a clique of ``sizes[i]`` vertices."""
    parts = tuple(complete_graph(k) for k in sizes)
    return blowup(BlowupSpec(base, parts), cap=cap)


# -- small constructors -------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphConstructionError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def wheel_graph(k: int) -> Graph:
    """k-wheel: a k-cycle ``0..k-1`` plus a hub ``k`` complete to the cycle."""
    if k < 4:
        raise GraphConstructionError("wheel rim needs at least 4 vertices")
    edges = [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)]
    return Graph(k + 1, edges)
