"""Certification of C5-free atoms containing the complement of a 7-cycle.

The analysis runs in the complement: there the graph carries a maximal
seven-ring partition plus band sets, and the original graph is recognized as
a blowup of a fixed nine-vertex pattern (the 7-ring complement plus two
extra vertices).  The certificate reads three stable sets off the blowup
parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .detect import (
    DEFAULT_CAPS,
    ExactCaps,
    find_induced_cycle,
    find_p3_in,
    r_set,
)
from .errors import BugTrapError, PreconditionError, UnclassifiableVertexError
from .graph import (
    Graph,
    VertexSet,
    bits,
    complement,
    is_anticomplete_sets,
    is_complete_sets,
)
from .nice import AtomOutcome, checked_nice


def _m7(i: int) -> int:
    return i % 7


def hstar_graph() -> Graph:
    """The nine-vertex blowup base: a seven-ring complement (vertices 0..6,
    edges at circular distance 1 and 2) plus vertex 7 adjacent to {0, 1, 4}
    and vertex 8 adjacent to {1, 4, 5}."""
    edges = []
    for i in range(7):
        edges.append((i, _m7(i + 1)))
        edges.append((i, _m7(i + 2)))
    edges = [(min(u, v), max(u, v)) for u, v in edges]
    edges = sorted(set(edges))
    edges += [(0, 7), (1, 7), (4, 7), (1, 8), (4, 8), (5, 8)]
    return Graph(9, edges)


@dataclass(frozen=True)
class C7Workspace:
    """Complement-side ring and band sets plus the derived part map.

    ``parts[k]`` lists the vertices playing pattern vertex ``k`` of the
    blowup base; parts may be empty.
    """

    ring: tuple[VertexSet, ...]  # 7 sets, complement-side ring
    bands: tuple[VertexSet, ...]  # 7 sets, complement-side bands
    dominating: VertexSet  # complement-side vertices seeing all ring parts
    parts: tuple[VertexSet, ...]  # 9 sets indexed by pattern vertex

    def to_json(self) -> dict:
        return {
            "ring": [sorted(p) for p in self.ring],
            "bands": [sorted(p) for p in self.bands],
            "dominating": sorted(self.dominating),
            "parts": [sorted(p) for p in self.parts],
        }


def _grow_c7_partition(h: Graph, c7: tuple[int, ...]) -> list[int]:
    """Maximal seven-ring partition of the complement graph around an
    induced 7-cycle: parts complete to both neighbors, anticomplete to the
    other four."""
    parts = [1 << c7[i] for i in range(7)]
    absorbed = sum(parts)
    changed = True
    while changed:
        changed = False
        for v in range(h.n):
            if absorbed >> v & 1:
                continue
            nb = h.adj[v]
            for i in range(7):
                prev_m, next_m = parts[_m7(i - 1)], parts[_m7(i + 1)]
                others = 0
                for d in (2, 3, -2, -3):
                    others |= parts[_m7(i + d)]
                if (nb & prev_m) == prev_m and (nb & next_m) == next_m and not nb & others:
                    parts[i] |= 1 << v
                    absorbed |= 1 << v
                    changed = True
                    break
    return parts


def build_c7_structure(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> C7Workspace:
    """Recognize ``g`` as a blowup of the nine-vertex base.

    Requires a connected input containing the 7-cycle complement and no
    induced C5.  Classification or pattern-matching failure trips the bug
    trap (precondition violation or structure bug).
    """
    h = complement(g)
    c7 = find_induced_cycle(h, 7)
    if c7 is None:
        raise PreconditionError("graph does not contain the complement of a 7-cycle")
    parts = _grow_c7_partition(h, c7)
    ring_all = 0
    for m in parts:
        ring_all |= m
    bands = [0] * 7
    dominating = 0
    for v in range(g.n):
        if ring_all >> v & 1:
            continue
        nb = h.adj[v]
        pattern = tuple(i for i in range(7) if nb & parts[i])
        if len(pattern) == 7:
            dominating |= 1 << v
            continue
        placed = False
        pat = set(pattern)
        for i in range(7):
            if pat == {i, _m7(i + 1), _m7(i + 2), _m7(i + 3)}:
                bands[i] |= 1 << v
                placed = True
                break
        if not placed:
            raise UnclassifiableVertexError(v, pattern)

    ws_json = {
        "ring": [sorted(bits(m)) for m in parts],
        "bands": [sorted(bits(m)) for m in bands],
        "dominating": sorted(bits(dominating)),
    }
    problems: list[str] = []
    if dominating and g.is_connected():
        problems.append("dominating complement vertices on a connected input")
    for i in range(7):
        for u in bits(parts[i]):
            if h.adj[u] & parts[i]:
                problems.append(f"ring part {i} not stable in the complement")
                break
        if find_p3_in(g, bands[i]) is not None:
            problems.append(f"band {i} not P3-free")
        cover = 0
        for d in range(4):
            cover |= parts[_m7(i + d)]
        if bands[i] and not is_complete_sets(h, bands[i], cover):
            problems.append(f"band {i} not complete to its ring span")
        j = _m7(i + 1)
        if bands[i] and bands[j] and not is_complete_sets(h, bands[i], bands[j]):
            problems.append(f"adjacent bands {i},{j} not complete in the complement")
        if bands[i]:
            for d in (2, 3, -2, -3):
                if bands[_m7(i + d)]:
                    problems.append(f"bands {i} and {_m7(i + d)} both nonempty")
    if problems:
        raise BugTrapError("build_c7_structure", "; ".join(sorted(set(problems))), ws_json)

    base = hstar_graph()
    classes = [m for m in parts]
    class_is_band = [False] * 7
    for i in range(7):
        if bands[i]:
            classes.append(bands[i])
            class_is_band.append(True)
    # match classes onto pattern vertices by exact quotient adjacency
    k = len(classes)
    reps = [(m & -m).bit_length() - 1 for m in classes]
    rel = [[g.adjacent(reps[i], reps[j]) for j in range(k)] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            want = is_complete_sets(g, classes[i], classes[j])
            have_none = is_anticomplete_sets(g, classes[i], classes[j])
            if not want and not have_none:
                raise BugTrapError(
                    "build_c7_structure", f"classes {i},{j} neither complete nor anticomplete", ws_json
                )
            rel[i][j] = rel[j][i] = want

    assign: list[int] = []

    def rec(i: int, used: int) -> bool:
        if i == k:
            return True
        for b in range(base.n):
            if used >> b & 1:
                continue
            if all(rel[i][j] == base.adjacent(b, assign[j]) for j in range(i)):
                assign.append(b)
                if rec(i + 1, used | 1 << b):
                    return True
                assign.pop()
        return False

    if not rec(0, 0):
        raise BugTrapError("build_c7_structure", "classes do not match the blowup base", ws_json)
    part_masks = [0] * base.n
    for i, b in enumerate(assign):
        part_masks[b] = classes[i]
    return C7Workspace(
        ring=tuple(VertexSet(g.n, mask=m) for m in parts),
        bands=tuple(VertexSet(g.n, mask=m) for m in bands),
        dominating=VertexSet(g.n, mask=dominating),
        parts=tuple(VertexSet(g.n, mask=m) for m in part_masks),
    )


def verify_blowup_parts(g: Graph, parts: tuple[VertexSet, ...], base: Graph) -> bool:
    """The parts realize ``g`` as a blowup of ``base``: P3-free parts, and
    cross-part adjacency copying the base exactly."""
    union = 0
    for p in parts:
        if find_p3_in(g, p.mask) is not None:
            return False
        if union & p.mask:
            return False
        union |= p.mask
    if union != g.full_mask:
        return False
    for i in range(base.n):
        for j in range(i + 1, base.n):
            if base.adjacent(i, j):
                if not is_complete_sets(g, parts[i].mask, parts[j].mask):
                    return False
            elif not is_anticomplete_sets(g, parts[i].mask, parts[j].mask):
                return False
    return True


def certify_c7c_case(
    g: Graph,
    w: Optional[C7Workspace] = None,
    caps: ExactCaps = DEFAULT_CAPS,
) -> AtomOutcome:
    """Stable-set certificate for a connected in-class C5-free graph holding
    the complement of a 7-cycle, via its blowup structure."""
    if w is None:
        w = build_c7_structure(g, caps)
    base = hstar_graph()
    if not verify_blowup_parts(g, w.parts, base):
        raise BugTrapError("certify_c7c_case", "part map does not reproduce the graph", w.to_json())
    r = [r_set(g, p.mask).mask for p in w.parts]
    workspace = {"case": "seven-ring-blowup", **w.to_json()}
    return checked_nice(
        g,
        r[0] | r[3] | r[8],
        r[1] | r[4],
        r[2] | r[6] | r[7],
        "certify_c7c_case",
        workspace,
        caps,
    )
