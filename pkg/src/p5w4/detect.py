"""Exact search kernels: induced-pattern detection, clique/stable/chromatic
oracles, and the structural recognizers the certification code relies on.

Everything here is exact and deterministic.  Sizes beyond the configured caps
raise ``ResourceCapError`` rather than degrade to approximations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import PreconditionError, ResourceCapError
from .graph import (
    Graph,
    VertexSet,
    as_mask,
    bits,
    complement,
    induced_subgraph,
    is_clique_mask,
)
from .patterns import Pattern


@dataclass
class ExactCaps:
    """Size caps for the exact searchers (vertices)."""

    omega_n: int = 64
    chi_n: int = 48
    perfect_n: int = 64
    fallback_n: int = 16


DEFAULT_CAPS = ExactCaps()


# ---------------------------------------------------------------------------
# induced-pattern search
# ---------------------------------------------------------------------------


def find_induced(g: Graph, pattern: Pattern) -> tuple[int, ...] | None:
    """Lexicographically least induced embedding of ``pattern``, or None.

    The returned tuple assigns graph vertices to the pattern's canonical
    vertex order.  Odd-hole / odd-antihole families report the shortest
    qualifying length first, lex-least within it.
    """
    if pattern.kind == "odd_hole":
        return _find_odd_hole(g, pattern.min_len)
    if pattern.kind == "odd_antihole":
        emb = _find_odd_hole(complement(g), pattern.min_len)
        return emb
    p = pattern.graph
    assert p is not None
    if _is_cycle_pattern(p):
        return find_induced_cycle(g, p.n)
    return _find_embedding(g, p)


def _is_cycle_pattern(p: Graph) -> bool:
    if p.n < 3 or p.m != p.n:
        return False
    return all(p.adj[i] == (1 << ((i + 1) % p.n)) | (1 << ((i - 1) % p.n)) for i in range(p.n))


def _find_embedding(g: Graph, p: Graph) -> tuple[int, ...] | None:
    """Forward-checking backtracker over pattern vertices in canonical order."""
    k = p.n
    if k > g.n:
        return None
    gadj = g.adj
    full = g.full_mask
    pmask = [p.adj[i] for i in range(k)]
    pdeg = [m.bit_count() for m in pmask]
    # degree filter: an embedded vertex needs at least the pattern degree
    base = []
    for i in range(k):
        c = 0
        for v in range(g.n):
            if gadj[v].bit_count() >= pdeg[i]:
                c |= 1 << v
        if not c:
            return None
        base.append(c)

    assign = [0] * k

    def dfs(d: int, cands: list[int]) -> bool:
        m = cands[d]
        while m:
            low = m & -m
            m ^= low
            v = low.bit_length() - 1
            assign[d] = v
            if d + 1 == k:
                return True
            nxt = []
            ok = True
            nb = gadj[v]
            for f in range(d + 1, k):
                cf = cands[f] & (nb if pmask[d] >> f & 1 else full & ~nb) & ~low
                if not cf:
                    ok = False
                    break
                nxt.append(cf)
            if ok and dfs(d + 1, cands[: d + 1] + nxt):
                return True
        return False

    if dfs(0, base):
        return tuple(assign)
    return None


def find_induced_cycle(g: Graph, length: int) -> tuple[int, ...] | None:
    """Lex-least induced cycle of exactly ``length`` vertices, or None.

    The first reported vertex is the cycle minimum; reflections are pruned by
    requiring the closing vertex to exceed the second, which is exactly the
    lex-least representative of each cycle.
    """
    n = g.n
    if length > n or length < 3:
        return None
    gadj = g.adj
    path = [0] * length
    for v0 in range(n):
        path[0] = v0
        above = g.full_mask >> (v0 + 1) << (v0 + 1)
        m = gadj[v0] & above
        while m:
            low = m & -m
            m ^= low
            path[1] = low.bit_length() - 1
            if _cycle_dfs(g, path, length, 2, above & ~low):
                return tuple(path)
    return None


def _cycle_dfs(g: Graph, path: list[int], length: int, d: int, allowed: int) -> bool:
    gadj = g.adj
    v0 = path[0]
    prev = path[d - 1]
    cand = allowed & gadj[prev]
    for i in range(1, d - 1):
        cand &= ~gadj[path[i]]
    if d < length - 1:
        cand &= ~gadj[v0]
    else:
        # closing vertex: adjacent to the anchor, larger than the second
        # vertex (reflection symmetry)
        cand &= gadj[v0]
        cand &= g.full_mask >> (path[1] + 1) << (path[1] + 1)
    while cand:
        low = cand & -cand
        cand ^= low
        path[d] = low.bit_length() - 1
        if d + 1 == length or _cycle_dfs(g, path, length, d + 1, allowed & ~low):
            return True
    return False


def _find_odd_hole(g: Graph, min_len: int) -> tuple[int, ...] | None:
    start = max(5, min_len)
    if start % 2 == 0:
        start += 1
    for L in range(start, g.n + 1, 2):
        emb = find_induced_cycle(g, L)
        if emb is not None:
            return emb
    return None


# ---------------------------------------------------------------------------
# P3-free structure
# ---------------------------------------------------------------------------


def find_p3_in(g: Graph, mask: int) -> tuple[int, int, int] | None:
    """Least induced P3 (a-b-c with middle b) inside ``mask``, or None."""
    for b in bits(mask):
        nb = g.adj[b] & mask
        for a in bits(nb):
            later = nb & ~g.adj[a] & ~(1 << a)
            if later:
                c = (later & -later).bit_length() - 1
                return (a, b, c)
    return None


def is_p3_free(g: Graph, s: VertexSet | int) -> bool:
    return find_p3_in(g, as_mask(s)) is None


def clique_partition(g: Graph, s: VertexSet | int) -> list[VertexSet]:
    """Partition a P3-free set into its cliques (= connected components).

    Parts are ordered by least vertex; raises if the set is not P3-free.
    """
    m = as_mask(s)
    p3 = find_p3_in(g, m)
    if p3 is not None:
        raise PreconditionError(f"clique_partition on non-P3-free set (P3 on {p3})")
    return [VertexSet(g.n, mask=c) for c in g.components(m)]


def clique_partition_masks(g: Graph, m: int) -> list[int]:
    """Component masks of a P3-free set (no verification; internal fast path)."""
    return g.components(m)


def r_set(g: Graph, u: VertexSet | int) -> VertexSet:
    """A maximum stable set of ``u``: empty for empty input, least-index
    representative per clique when ``u`` is P3-free, exact lex-least search
    otherwise."""
    m = as_mask(u)
    if m == 0:
        return VertexSet(g.n, mask=0)
    if find_p3_in(g, m) is None:
        out = 0
        for comp in g.components(m):
            out |= comp & -comp
        return VertexSet(g.n, mask=out)
    return VertexSet(g.n, mask=_lex_max_stable_mask(g, m))


def _lex_max_stable_mask(g: Graph, m: int) -> int:
    target = _max_clique_masked(complement(g), m)[0]
    chosen = 0
    avail = m
    size = 0
    comp = complement(g)
    while size < target:
        v = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << v) & ~g.adj[v]
        if _max_clique_masked(comp, rest)[0] >= target - size - 1:
            chosen |= 1 << v
            size += 1
            avail = rest
        else:
            avail &= ~(1 << v)
    return chosen


# ---------------------------------------------------------------------------
# clique and stable-set oracles
# ---------------------------------------------------------------------------


def _greedy_color_order(adj: tuple[int, ...], p: int) -> list[tuple[int, int]]:
    """Greedy coloring of candidate mask ``p``; returns (vertex, color) in
    nondecreasing color order, used as the Tomita-style search bound."""
    order: list[tuple[int, int]] = []
    color = 0
    while p:
        color += 1
        avail = p
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            order.append((v, color))
            p ^= low
            avail = (avail ^ low) & ~adj[v]
    return order


def _max_clique_masked(g: Graph, mask: int) -> tuple[int, int]:
    """(size, witness mask) of a maximum clique inside ``mask``."""
    adj = g.adj
    best_size = 0
    best_mask = 0

    def expand(rmask: int, rsize: int, p: int) -> None:
        nonlocal best_size, best_mask
        if not p:
            if rsize > best_size:
                best_size, best_mask = rsize, rmask
            return
        order = _greedy_color_order(adj, p)
        for v, c in reversed(order):
            if rsize + c <= best_size:
                return
            vb = 1 << v
            expand(rmask | vb, rsize + 1, p & adj[v])
            p &= ~vb

    expand(0, 0, mask)
    return best_size, best_mask


def omega(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> int:
    """Exact clique number."""
    if g.n > caps.omega_n:
        raise ResourceCapError("omega", g.n, caps.omega_n)
    return _max_clique_masked(g, g.full_mask)[0]


def max_clique(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> VertexSet:
    if g.n > caps.omega_n:
        raise ResourceCapError("max_clique", g.n, caps.omega_n)
    return VertexSet(g.n, mask=_max_clique_masked(g, g.full_mask)[1])


def maximal_cliques(g: Graph, within: int | None = None) -> Iterator[int]:
    """All maximal cliques (as masks) via pivoting Bron-Kerbosch."""
    adj = g.adj
    full = g.full_mask if within is None else within

    def bk(r: int, p: int, x: int) -> Iterator[int]:
        if not p and not x:
            yield r
            return
        px = p | x
        pivot = max(bits(px), key=lambda u: (adj[u] & p).bit_count())
        cand = p & ~adj[pivot]
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            yield from bk(r | low, p & adj[v], x & adj[v])
            p &= ~low
            x |= low

    yield from bk(0, full, 0)


def max_cliques(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> list[VertexSet]:
    """All maximum-size cliques, ordered by mask value."""
    if g.n > caps.omega_n:
        raise ResourceCapError("max_cliques", g.n, caps.omega_n)
    w = omega(g, caps)
    hits = [m for m in maximal_cliques(g) if m.bit_count() == w]
    hits.sort()
    return [VertexSet(g.n, mask=m) for m in hits]


def max_stable(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> VertexSet:
    """A maximum stable set (lex-least witness)."""
    if g.n > caps.omega_n:
        raise ResourceCapError("max_stable", g.n, caps.omega_n)
    if g.n == 0:
        return VertexSet(0, mask=0)
    return VertexSet(g.n, mask=_lex_max_stable_mask(g, g.full_mask))


def stability_number(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> int:
    if g.n > caps.omega_n:
        raise ResourceCapError("stability_number", g.n, caps.omega_n)
    return _max_clique_masked(complement(g), g.full_mask)[0]


# ---------------------------------------------------------------------------
# exact chromatic number
# ---------------------------------------------------------------------------


def _dsatur(g: Graph, mask: int) -> tuple[int, dict[int, int]]:
    """Greedy DSATUR coloring of the vertices in ``mask``; returns (k, colors)."""
    adj = g.adj
    verts = list(bits(mask))
    colors: dict[int, int] = {}
    sat: dict[int, int] = {v: 0 for v in verts}  # bitmask of neighbor colors
    uncolored = set(verts)
    while uncolored:
        v = max(uncolored, key=lambda u: (sat[u].bit_count(), (adj[u] & mask).bit_count(), -u))
        c = 0
        forb = sat[v]
        while forb >> c & 1:
            c += 1
        colors[v] = c
        uncolored.discard(v)
        for u in bits(adj[v] & mask):
            if u in uncolored:
                sat[u] |= 1 << c
    k = 1 + max(colors.values()) if colors else 0
    return k, colors


def _try_k_coloring(g: Graph, mask: int, k: int, alpha: int) -> dict[int, int] | None:
    """Deterministic DSATUR-ordered backtracking k-colorability test."""
    adj = g.adj
    verts = list(bits(mask))
    if not verts:
        return {}
    colors: dict[int, int] = {}
    forb: dict[int, int] = {v: 0 for v in verts}
    class_size = [0] * k
    kfull = (1 << k) - 1

    def pick() -> int | None:
        best_v, best_key = None, None
        for v in verts:
            if v in colors:
                continue
            key = (forb[v].bit_count(), (adj[v] & mask).bit_count(), -v)
            if best_key is None or key > best_key:
                best_key, best_v = key, v
        return best_v

    def dfs(used: int) -> bool:
        v = pick()
        if v is None:
            return True
        avail = ~forb[v] & kfull
        # symmetry breaking: at most one brand-new color may be opened
        limit = min(used + 1, k)
        avail &= (1 << limit) - 1
        while avail:
            low = avail & -avail
            avail ^= low
            c = low.bit_length() - 1
            if class_size[c] >= alpha:
                continue
            colors[v] = c
            class_size[c] += 1
            touched = []
            for u in bits(adj[v] & mask):
                if u not in colors and not forb[u] >> c & 1:
                    forb[u] |= low
                    touched.append(u)
            if dfs(max(used, c + 1)):
                return True
            for u in touched:
                forb[u] &= ~low
            class_size[c] -= 1
            del colors[v]
        return False

    return dict(colors) if dfs(0) else None


def chi_exact(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> tuple[int, tuple[int, ...]]:
    """Exact chromatic number with a witness coloring.

    Branch and bound per connected component: clique and n/alpha lower
    bounds, DSATUR upper bound, then k-colorability search upward from the
    lower bound.
    """
    if g.n > caps.chi_n:
        raise ResourceCapError("chi_exact", g.n, caps.chi_n)
    out = [0] * g.n
    total = 0
    for comp in g.components():
        k, comp_colors = _chi_component(g, comp, caps)
        total = max(total, k)
        for v, c in comp_colors.items():
            out[v] = c
    return total, tuple(out)


def _chi_component(g: Graph, mask: int, caps: ExactCaps) -> tuple[int, dict[int, int]]:
    nverts = mask.bit_count()
    if nverts == 0:
        return 0, {}
    lb_clique, clique_mask = _max_clique_masked(g, mask)
    alpha = _max_clique_masked(complement(g), mask)[0]
    if alpha <= 2:
        return _chi_by_matching(g, mask)
    lb = max(lb_clique, -(-nverts // alpha))
    ub, greedy = _dsatur(g, mask)
    if ub <= lb:
        return ub, greedy
    for k in range(lb, ub):
        sol = _try_k_coloring(g, mask, k, alpha)
        if sol is not None:
            return k, sol
    return ub, greedy


def _chi_by_matching(g: Graph, mask: int) -> tuple[int, dict[int, int]]:
    """Exact coloring when stable sets have at most two vertices: color
    classes are complement vertices and edges, so the chromatic number is
    n minus a maximum matching of the complement."""
    import networkx as nx

    verts = list(bits(mask))
    comp = nx.Graph()
    comp.add_nodes_from(verts)
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            if not g.adjacent(u, v):
                comp.add_edge(u, v)
    matching = nx.max_weight_matching(comp, maxcardinality=True)
    colors: dict[int, int] = {}
    c = 0
    for u, v in sorted((min(e), max(e)) for e in matching):
        colors[u] = colors[v] = c
        c += 1
    for u in verts:
        if u not in colors:
            colors[u] = c
            c += 1
    return c, colors


# ---------------------------------------------------------------------------
# recognizers
# ---------------------------------------------------------------------------


def _bipartition(g: Graph, mask: int) -> tuple[int, int] | None:
    """2-coloring of G[mask] as (side0, side1) masks, or None if odd cycle."""
    side = {}
    s0 = s1 = 0
    for start in bits(mask):
        if start in side:
            continue
        side[start] = 0
        s0 |= 1 << start
        frontier = [start]
        while frontier:
            u = frontier.pop()
            for w in bits(g.adj[u] & mask):
                if w not in side:
                    side[w] = 1 - side[u]
                    if side[w]:
                        s1 |= 1 << w
                    else:
                        s0 |= 1 << w
                    frontier.append(w)
                elif side[w] == side[u]:
                    return None
    return s0, s1


def is_quasi_line(g: Graph) -> tuple[bool, list[tuple[VertexSet, VertexSet]] | None, int | None]:
    """Quasi-line test with a per-vertex two-clique witness.

    Returns (ok, witness, failing_vertex).  ``witness[v]`` is a pair of
    cliques whose union is N(v); it exists iff the complement of every
    neighborhood is bipartite.
    """
    comp = complement(g)
    witness: list[tuple[VertexSet, VertexSet]] = []
    for v in range(g.n):
        nb = g.adj[v]
        parts = _bipartition(comp, nb)
        if parts is None:
            return False, None, v
        s0, s1 = parts
        # complement-bipartition sides are cliques of g covering N(v) exactly
        assert is_clique_mask(g, s0) and is_clique_mask(g, s1) and (s0 | s1) == nb
        witness.append((VertexSet(g.n, mask=s0), VertexSet(g.n, mask=s1)))
    return True, witness, None


def is_perfect(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> bool:
    """No induced odd hole or odd antihole of length >= 5."""
    if g.n > caps.perfect_n:
        raise ResourceCapError("is_perfect", g.n, caps.perfect_n)
    if _find_odd_hole(g, 5) is not None:
        return False
    if g.n >= 7 and _find_odd_hole(complement(g), 7) is not None:
        return False
    return True


def is_3k1_free(g: Graph) -> bool:
    from .patterns import THREE_K1

    return find_induced(g, THREE_K1) is None


def in_class(g: Graph) -> bool:
    """Membership in the target hereditary class: no induced P5 or 4-wheel."""
    from .patterns import FOUR_WHEEL, P5

    return find_induced(g, P5) is None and find_induced(g, FOUR_WHEEL) is None


def class_violation(g: Graph) -> tuple[str, tuple[int, ...]] | None:
    """Name and embedding of a forbidden pattern, or None if in class."""
    from .patterns import FOUR_WHEEL, P5

    emb = find_induced(g, P5)
    if emb is not None:
        return "P5", emb
    emb = find_induced(g, FOUR_WHEEL)
    if emb is not None:
        return "W4", emb
    return None


def is_good_wrt(g: Graph, v: int, x: VertexSet | int) -> bool:
    """Goodness of ``v`` against a P3-free set: every touched clique is fully
    covered, and at least one clique is fully covered."""
    xm = as_mask(x)
    if xm >> v & 1:
        raise PreconditionError("is_good_wrt: vertex lies in the target set")
    p3 = find_p3_in(g, xm)
    if p3 is not None:
        raise PreconditionError(f"is_good_wrt on non-P3-free set (P3 on {p3})")
    nb = g.adj[v]
    covered = False
    for part in g.components(xm):
        hit = nb & part
        if hit and hit != part:
            return False
        if hit == part:
            covered = True
    return covered


def check_proper(g: Graph, colors: tuple[int, ...] | list[int]) -> bool:
    """True iff no edge is monochromatic (colors must cover all vertices)."""
    if len(colors) != g.n:
        return False
    for u in range(g.n):
        for w in bits(g.adj[u] >> (u + 1) << (u + 1)):
            if colors[u] == colors[w]:
                return False
    return True
