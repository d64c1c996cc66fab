"""Certified coloring driver.

``classify_atom`` dispatches a connected in-class atom to the perfect /
stable-set-certificate / quasi-line trichotomy; ``color`` runs the full
recursion (components, clique cutsets, certified atoms) and validates the
result against the floor(3*omega/2) bound before returning.  Every step is
recorded in a JSON-serializable audit trail that replays deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .c5_structure import build_c5_structure, classify_rest, grow_c5_partition
from .c7_case import build_c7_structure, certify_c7c_case
from .decompose import find_clique_cutset
from .detect import (
    DEFAULT_CAPS,
    ExactCaps,
    check_proper,
    chi_exact,
    class_violation,
    find_induced,
    find_induced_cycle,
    is_perfect,
    is_quasi_line,
    omega,
)
from .errors import BugTrapError, MembershipError
from .graph import Graph, bits, induced_subgraph
from .nice import AtomOutcome, verify_nice
from .patterns import C7_COMPLEMENT, FIVE_WHEEL
from .wheel_cases import certify_5wheel_case, certify_wheelfree_c5_case


@dataclass
class AtomClassification:
    """Outcome of the trichotomy on one atom, with its trigger."""

    tag: str  # "perfect" | "nice" | "quasi_line"
    trigger: str  # "five_wheel" | "c5_wheel_free" | "c7_complement" | "none"
    outcome: Optional[AtomOutcome] = None

    def to_json(self) -> dict:
        out = {"tag": self.tag, "trigger": self.trigger}
        if self.outcome is not None:
            out["outcome"] = self.outcome.to_json()
        return out


def classify_atom(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> AtomClassification:
    """Classify a connected in-class atom as perfect, certified by stable
    sets, or quasi-line.

    Dispatch: an induced 5-wheel forces the hub case; a C5 without a 5-wheel
    goes to the wheel-free case; the 7-cycle complement without a C5 goes to
    the blowup case; otherwise the atom must verify perfect.
    """
    c5 = find_induced_cycle(g, 5)
    if c5 is None:
        if find_induced(g, C7_COMPLEMENT) is not None:
            outcome = certify_c7c_case(g, caps=caps)
            return AtomClassification(tag="nice", trigger="c7_complement", outcome=outcome)
        if not is_perfect(g, caps):
            raise BugTrapError(
                "classify_atom",
                "no trigger found but the atom is not perfect",
                {"n": g.n, "edges": g.edges()},
            )
        return AtomClassification(tag="perfect", trigger="none")
    wheel = find_induced(g, FIVE_WHEEL)
    if wheel is not None:
        rim, hub = wheel[:5], wheel[5]
        a = grow_c5_partition(g, rim)
        s = classify_rest(g, a, base=rim)
        if hub not in s.z:
            raise BugTrapError(
                "classify_atom", "wheel hub escaped the hub set", {"wheel": wheel, "structure": s.to_json()}
            )
        outcome = certify_5wheel_case(g, s, caps)
        return AtomClassification(tag="nice", trigger="five_wheel", outcome=outcome)
    s = build_c5_structure(g, c5)
    outcome = certify_wheelfree_c5_case(g, s, caps)
    tag = "nice" if outcome.kind == "nice" else "quasi_line"
    return AtomClassification(tag=tag, trigger="c5_wheel_free", outcome=outcome)


@dataclass
class ColoringResult:
    colors: tuple[int, ...]
    count: int
    omega: int
    audit: dict = field(default_factory=dict)

    @property
    def bound(self) -> int:
        return 3 * self.omega // 2

    def to_json(self) -> dict:
        return {
            "colors": list(self.colors),
            "count": self.count,
            "omega": self.omega,
            "bound": self.bound,
            "audit": self.audit,
        }


def color(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> ColoringResult:
    """Proper coloring with at most floor(3*omega/2) colors, with audit.

    Recursion: components are colored independently with a shared palette;
    a clique cutset splits the graph with palettes matched on the cutset;
    atoms are colored per their classification (exact coloring for perfect
    and quasi-line atoms, certificate recursion otherwise).  The result is
    validated before returning; a bound violation trips the bug trap.
    """
    violation = class_violation(g)
    if violation is not None:
        raise MembershipError(*violation)
    colors, audit = _color_rec(g, caps)
    count = (max(colors) + 1) if colors else 0
    w = omega(g, caps) if g.n else 0
    result = ColoringResult(colors=tuple(colors), count=count, omega=w, audit=audit)
    if not check_proper(g, result.colors):
        raise BugTrapError("color", "driver produced an improper coloring", result.to_json())
    if count > result.bound:
        raise BugTrapError("color", "driver exceeded the certified bound", result.to_json())
    return result


def _color_rec(g: Graph, caps: ExactCaps = DEFAULT_CAPS) -> tuple[list[int], dict]:
    if g.n == 0:
        return [], {"node": "empty"}
    comps = g.components()
    if len(comps) > 1:
        colors = [0] * g.n
        parts = []
        for cm in comps:
            sub, vmap = induced_subgraph(g, cm)
            sub_colors, sub_audit = _color_rec(sub, caps)
            for i, v in enumerate(vmap):
                colors[v] = sub_colors[i]
            parts.append({"vertices": sorted(bits(cm)), "audit": sub_audit})
        return colors, {"node": "components", "parts": parts}
    split = find_clique_cutset(g)
    if split is not None:
        left_mask = split.q.mask | split.v1.mask
        right_mask = split.q.mask | split.v2.mask
        gl, ml = induced_subgraph(g, left_mask)
        gr, mr = induced_subgraph(g, right_mask)
        cl, al = _color_rec(gl, caps)
        cr, ar = _color_rec(gr, caps)
        colors = _merge_on_cutset(g, split.q.mask, (cl, ml), (cr, mr))
        audit = {
            "node": "cutset",
            "q": sorted(split.q),
            "v1": sorted(split.v1),
            "v2": sorted(split.v2),
            "left": al,
            "right": ar,
        }
        return colors, audit
    return _color_atom(g, caps)


def _merge_on_cutset(
    g: Graph,
    q_mask: int,
    left: tuple[list[int], tuple[int, ...]],
    right: tuple[list[int], tuple[int, ...]],
) -> list[int]:
    """Combine child colorings, permuting the right palette so the clique
    cutset gets identical colors on both sides."""
    cl, ml = left
    cr, mr = right
    colors = [-1] * g.n
    for i, v in enumerate(ml):
        colors[v] = cl[i]
    # cutset colors are injective in both children (it is a clique)
    mapping: dict[int, int] = {}
    for i, v in enumerate(mr):
        if q_mask >> v & 1:
            mapping[cr[i]] = colors[v]
    used_targets = set(mapping.values())
    next_free = 0
    for c in sorted(set(cr)):
        if c in mapping:
            continue
        while next_free in used_targets:
            next_free += 1
        mapping[c] = next_free
        used_targets.add(next_free)
    for i, v in enumerate(mr):
        if colors[v] == -1:
            colors[v] = mapping[cr[i]]
    return colors


def _color_atom(g: Graph, caps: ExactCaps) -> tuple[list[int], dict]:
    cls = classify_atom(g, caps)
    w = omega(g, caps)
    bound = 3 * w // 2
    if cls.tag in ("perfect", "quasi_line"):
        k, colors = chi_exact(g, caps)
        if cls.tag == "perfect" and k != w:
            raise BugTrapError("color", "perfect atom with chromatic number above clique number", {"n": g.n, "edges": g.edges()})
        if k > bound:
            raise BugTrapError("color", "exact atom coloring exceeded the bound", {"n": g.n, "edges": g.edges()})
        return list(colors), {"node": "atom", "classification": cls.to_json(), "colors_used": k}
    cert = cls.outcome.nice
    assert cert is not None
    union = cert.union_mask
    rest_mask = g.full_mask & ~union
    sub, vmap = induced_subgraph(g, rest_mask)
    sub_colors, sub_audit = _color_rec(sub, caps)
    base = (max(sub_colors) + 1) if sub_colors else 0
    colors = [0] * g.n
    for i, v in enumerate(vmap):
        colors[v] = sub_colors[i]
    nxt = base
    for smask in (cert.s1.mask, cert.s2.mask, cert.s3.mask):
        if not smask:
            continue
        for v in bits(smask):
            colors[v] = nxt
        nxt += 1
    audit = {
        "node": "atom",
        "classification": cls.to_json(),
        "new_classes": [sorted(cert.s1), sorted(cert.s2), sorted(cert.s3)],
        "rest": sub_audit,
    }
    return colors, audit
