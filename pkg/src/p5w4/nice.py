"""Stable-set certificates and their independent verification.

A certificate is three disjoint stable sets whose removal drops the clique
number by at least two (equivalently, whose union meets every maximum clique
at least twice and every other maximal clique enough times).  The verifier
never trusts the construction that produced a certificate; the exhaustive
fallback search is the ground-truth oracle at small sizes and doubles as a
bug detector for the structural constructions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .detect import (
    DEFAULT_CAPS,
    ExactCaps,
    _max_clique_masked,
    chi_exact,
    find_induced,
    find_induced_cycle,
    is_quasi_line,
    max_cliques,
    maximal_cliques,
    omega,
    r_set,
)
from .errors import BugTrapError, PreconditionError, ResourceCapError
from .graph import (
    Graph,
    VertexSet,
    bits,
    complement,
    is_clique_mask,
    is_complete_sets,
    is_stable_mask,
    mask_of,
    wheel_graph,
)
from .patterns import THREE_K1


@dataclass(frozen=True)
class NiceCertificate:
    """Three disjoint stable sets witnessing a clique-number drop of two."""

    s1: VertexSet
    s2: VertexSet
    s3: VertexSet

    @property
    def union_mask(self) -> int:
        return self.s1.mask | self.s2.mask | self.s3.mask

    def sets(self) -> tuple[VertexSet, VertexSet, VertexSet]:
        return (self.s1, self.s2, self.s3)

    def to_json(self) -> dict:
        return {"s1": sorted(self.s1), "s2": sorted(self.s2), "s3": sorted(self.s3)}


@dataclass(frozen=True)
class QuasiLineCertificate:
    """Per-vertex pair of cliques covering its neighborhood."""

    covers: tuple[tuple[VertexSet, VertexSet], ...]

    def to_json(self) -> dict:
        return {
            "covers": [[sorted(c0), sorted(c1)] for c0, c1 in self.covers],
        }


@dataclass
class NiceVerdict:
    valid: bool
    omega_before: int
    omega_after: int
    violations: list[dict] = field(default_factory=list)
    max_clique_hits: list[int] = field(default_factory=list)
    maximal_once_ok: Optional[bool] = None

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "omega_before": self.omega_before,
            "omega_after": self.omega_after,
            "violations": self.violations,
            "max_clique_hits": self.max_clique_hits,
            "maximal_once_ok": self.maximal_once_ok,
        }


def verify_nice(
    g: Graph,
    cert: NiceCertificate,
    caps: ExactCaps = DEFAULT_CAPS,
    audit_maximal: bool = True,
) -> NiceVerdict:
    """Check disjointness, stability, the clique-number drop, and the
    meets-twice condition over all maximum cliques; every violated clause is
    reported with a witness."""
    violations: list[dict] = []
    masks = [cert.s1.mask, cert.s2.mask, cert.s3.mask]
    for i, j in itertools.combinations(range(3), 2):
        inter = masks[i] & masks[j]
        if inter:
            violations.append({"clause": "disjoint", "sets": (i + 1, j + 1), "common": sorted(bits(inter))})
    for i, m in enumerate(masks):
        if not is_stable_mask(g, m):
            for u in bits(m):
                hit = g.adj[u] & m
                if hit:
                    violations.append({"clause": "stable", "set": i + 1, "edge": (u, (hit & -hit).bit_length() - 1)})
                    break
    union = cert.union_mask
    w_before = omega(g, caps)
    w_after = _max_clique_masked(g, g.full_mask & ~union)[0]
    if w_after > w_before - 2:
        surv = _max_clique_masked(g, g.full_mask & ~union)[1]
        violations.append({"clause": "omega-drop", "surviving_clique": sorted(bits(surv))})
    hits = []
    for mc in max_cliques(g, caps):
        h = (mc.mask & union).bit_count()
        hits.append(h)
        if h < 2:
            violations.append({"clause": "meets-twice", "clique": sorted(mc)})
    maximal_once = None
    if audit_maximal:
        maximal_once = True
        for mm in maximal_cliques(g):
            if (mm & union).bit_count() < 1:
                maximal_once = False
                break
    return NiceVerdict(
        valid=not violations,
        omega_before=w_before,
        omega_after=w_after,
        violations=violations,
        max_clique_hits=hits,
        maximal_once_ok=maximal_once,
    )


def verify_quasi_line_certificate(g: Graph, cert: QuasiLineCertificate) -> bool:
    """Both sets per vertex are cliques and their union is exactly N(v)."""
    if len(cert.covers) != g.n:
        return False
    for v in range(g.n):
        c0, c1 = cert.covers[v]
        if not (is_clique_mask(g, c0.mask) and is_clique_mask(g, c1.mask)):
            return False
        if (c0.mask | c1.mask) != g.adj[v]:
            return False
    return True


@dataclass(frozen=True)
class AtomOutcome:
    """Certified classification produced for an atom: a stable-set
    certificate or a quasi-line witness, plus the construction audit."""

    kind: str  # "nice" | "quasi_line"
    nice: Optional[NiceCertificate] = None
    quasi_line: Optional[QuasiLineCertificate] = None
    workspace: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "workspace": self.workspace}
        if self.nice is not None:
            out["nice"] = self.nice.to_json()
        if self.quasi_line is not None:
            out["quasi_line"] = self.quasi_line.to_json()
        return out


def make_certificate(g: Graph, m1: int, m2: int, m3: int) -> NiceCertificate:
    return NiceCertificate(
        s1=VertexSet(g.n, mask=m1), s2=VertexSet(g.n, mask=m2), s3=VertexSet(g.n, mask=m3)
    )


def checked_nice(
    g: Graph,
    m1: int,
    m2: int,
    m3: int,
    stage: str,
    workspace: dict,
    caps: ExactCaps = DEFAULT_CAPS,
) -> AtomOutcome:
    """Build and validate a certificate; invalid constructions trip the bug
    trap with the full workspace attached."""
    cert = make_certificate(g, m1, m2, m3)
    verdict = verify_nice(g, cert, caps)
    if not verdict.valid:
        workspace = dict(workspace)
        workspace["certificate"] = cert.to_json()
        workspace["verdict"] = verdict.to_json()
        raise BugTrapError(stage, "constructed certificate failed validation", workspace)
    ws = dict(workspace)
    ws["verdict"] = verdict.to_json()
    return AtomOutcome(kind="nice", nice=cert, workspace=ws)


# ---------------------------------------------------------------------------
# exhaustive fallback search
# ---------------------------------------------------------------------------


def nice_search_fallback(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> Optional[NiceCertificate]:
    """Exhaustive search for a certificate; None means the graph is genuinely
    not nice.

    Searches hitting sets over the cliques that constrain the drop (every
    maximal clique M must lose at least |M| - (omega-2) vertices), pruned by
    3-colorability of the removed set, then extracts the three stable sets.
    """
    if g.n > caps.fallback_n:
        raise ResourceCapError("nice_search_fallback", g.n, caps.fallback_n)
    if g.n == 0:
        return None
    w = omega(g, caps)
    if w < 2:
        return None
    budget = w - 2
    constraints = []
    for m in maximal_cliques(g):
        need = m.bit_count() - budget
        if need > 0:
            constraints.append((m, need))
    constraints.sort(key=lambda c: (-c[1], c[0]))

    def colorable3(mask: int) -> Optional[tuple[int, int, int]]:
        sub = [0, 0, 0]

        def rec(rem: int, used: int) -> bool:
            if not rem:
                return True
            v = rem & -rem
            vi = v.bit_length() - 1
            for c in range(min(used + 1, 3)):
                if not (g.adj[vi] & sub[c]):
                    sub[c] |= v
                    if rec(rem & ~v, max(used, c + 1)):
                        return True
                    sub[c] &= ~v
            return False

        if rec(mask, 0):
            return (sub[0], sub[1], sub[2])
        return None

    def dfs(idx: int, chosen: int) -> Optional[tuple[int, int, int]]:
        while idx < len(constraints):
            m, need = constraints[idx]
            missing = need - (m & chosen).bit_count()
            if missing <= 0:
                idx += 1
                continue
            pool = list(bits(m & ~chosen))
            if missing > len(pool):
                return None
            for extra in itertools.combinations(pool, missing):
                cand = chosen | mask_of(extra)
                if colorable3(cand) is None:
                    continue
                got = dfs(idx + 1, cand)
                if got is not None:
                    return got
            return None
        return colorable3(chosen)

    got = dfs(0, 0)
    if got is None:
        return None
    s1, s2, s3 = got
    return make_certificate(g, s1, s2, s3)


# ---------------------------------------------------------------------------
# the triangle-free-complement case
# ---------------------------------------------------------------------------


def _true_twin_classes(g: Graph) -> list[int]:
    """Partition into closed-neighborhood twin classes (each is a clique)."""
    seen: dict[int, int] = {}
    for v in range(g.n):
        key = g.adj[v] | (1 << v)
        seen[key] = seen.get(key, 0) | (1 << v)
    return sorted(seen.values())


def _match_blowup(g: Graph, base: Graph) -> Optional[list[int]]:
    """Part masks realizing ``g`` as a clique-blowup of ``base`` (some parts
    may be empty), or None.  Twin classes are assigned to base vertices by
    exact adjacency-preserving search."""
    classes = _true_twin_classes(g)
    if len(classes) > base.n:
        return None
    k = len(classes)
    rel = [[False] * k for _ in range(k)]
    for i in range(k):
        ci = classes[i]
        rep_i = (ci & -ci).bit_length() - 1
        for j in range(i + 1, k):
            cj = classes[j]
            rep_j = (cj & -cj).bit_length() - 1
            rel[i][j] = rel[j][i] = g.adjacent(rep_i, rep_j)

    assign: list[int] = []

    def rec(i: int, used: int) -> bool:
        if i == k:
            return True
        for b in range(base.n):
            if used >> b & 1:
                continue
            ok = True
            for j in range(i):
                if rel[i][j] != base.adjacent(b, assign[j]):
                    ok = False
                    break
            if ok:
                assign.append(b)
                if rec(i + 1, used | 1 << b):
                    return True
                assign.pop()
        return False

    if not rec(0, 0):
        return None
    parts = [0] * base.n
    for i, b in enumerate(assign):
        parts[b] = classes[i]
    return parts


def certify_3k1_case(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> AtomOutcome:
    """Certificate for graphs with no stable triple (and no 4-wheel).

    If every neighborhood induces a chordal graph the graph is quasi-line;
    otherwise it is a clique-blowup of the 5-wheel and three stable sets are
    read off the parts.
    """
    if find_induced(g, THREE_K1) is not None:
        raise PreconditionError("certify_3k1_case requires a graph with no stable triple")
    quasi, covers, _bad = is_quasi_line(g)
    if quasi:
        assert covers is not None
        return AtomOutcome(
            kind="quasi_line",
            quasi_line=QuasiLineCertificate(covers=tuple(covers)),
            workspace={"case": "chordal-neighborhoods"},
        )
    parts = _match_blowup(g, wheel_graph(5))
    if parts is None:
        raise BugTrapError(
            "certify_3k1_case",
            "non-quasi-line input did not decompose as a hub-and-ring clique blowup",
            {"n": g.n, "edges": g.edges()},
        )
    r = [r_set(g, m).mask for m in parts]
    workspace = {
        "case": "wheel-blowup",
        "parts": [sorted(bits(p)) for p in parts],
    }
    return checked_nice(g, r[0] | r[2], r[1] | r[3], r[4], "certify_3k1_case", workspace, caps)
