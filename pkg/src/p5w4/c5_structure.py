"""Structure of an atom around an induced C5: the maximal five-ring
partition, the X/Y/Z/T classification of the remaining vertices, and the
assertion suite checking every structural statement that classification is
supposed to guarantee on in-class atoms.

Ring indices are 0..4 and all index arithmetic is mod 5.  For a ring part
``A[i]``: ``X[i]`` vertices see A[i] and both opposite parts but neither
adjacent part, ``Y[i]`` vertices see every part except A[i], ``Z`` vertices
see all five parts, and ``T`` vertices see none.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .detect import (
    ExactCaps,
    DEFAULT_CAPS,
    clique_partition_masks,
    find_p3_in,
    is_good_wrt,
    maximal_cliques,
    omega,
    r_set,
)
from .errors import PreconditionError, UnclassifiableVertexError
from .graph import (
    Graph,
    VertexSet,
    as_mask,
    bits,
    is_anticomplete_sets,
    is_clique_mask,
    is_complete_sets,
)


def _m5(i: int) -> int:
    return i % 5


@dataclass(frozen=True)
class C5Structure:
    """The decomposition of a graph around an induced C5."""

    a: tuple[VertexSet, VertexSet, VertexSet, VertexSet, VertexSet]
    x: tuple[VertexSet, VertexSet, VertexSet, VertexSet, VertexSet]
    y: tuple[VertexSet, VertexSet, VertexSet, VertexSet, VertexSet]
    z: VertexSet
    t: VertexSet
    base: tuple[int, int, int, int, int]

    @property
    def a_mask(self) -> int:
        out = 0
        for s in self.a:
            out |= s.mask
        return out

    @property
    def x_mask(self) -> int:
        out = 0
        for s in self.x:
            out |= s.mask
        return out

    @property
    def y_mask(self) -> int:
        out = 0
        for s in self.y:
            out |= s.mask
        return out

    def to_json(self) -> dict:
        return {
            "a": [sorted(s) for s in self.a],
            "x": [sorted(s) for s in self.x],
            "y": [sorted(s) for s in self.y],
            "z": sorted(self.z),
            "t": sorted(self.t),
            "base": list(self.base),
        }


def validate_c5_embedding(g: Graph, c5: tuple[int, ...]) -> None:
    if len(c5) != 5 or len(set(c5)) != 5:
        raise PreconditionError(f"not a C5 embedding: {c5}")
    for i in range(5):
        for j in range(i + 1, 5):
            want = (j - i) in (1, 4)
            if g.adjacent(c5[i], c5[j]) != want:
                raise PreconditionError(f"embedding {c5} does not induce a C5")


def grow_c5_partition(g: Graph, c5: tuple[int, ...]) -> tuple[VertexSet, ...]:
    """Maximal ring partition seeded by an induced C5.

    Starting from singletons, repeatedly absorbs any vertex that is complete
    to both adjacent parts and anticomplete to both opposite parts, scanning
    vertices in ascending order and parts in ring order, until a full pass
    changes nothing.  Any fixpoint of single-vertex absorption is maximal.
    """
    validate_c5_embedding(g, c5)
    parts = [1 << c5[i] for i in range(5)]
    absorbed = sum(parts)
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if absorbed >> v & 1:
                continue
            nb = g.adj[v]
            for i in range(5):
                prev_m, next_m = parts[_m5(i - 1)], parts[_m5(i + 1)]
                opp1, opp2 = parts[_m5(i - 2)], parts[_m5(i + 2)]
                if (nb & prev_m) == prev_m and (nb & next_m) == next_m and not nb & (opp1 | opp2):
                    parts[i] |= 1 << v
                    absorbed |= 1 << v
                    changed = True
                    break
    return tuple(VertexSet(g.n, mask=m) for m in parts)


def classify_rest(
    g: Graph,
    a: tuple[VertexSet, ...],
    base: tuple[int, ...] | None = None,
) -> C5Structure:
    """Classify every vertex outside the ring into X_i / Y_i / Z / T.

    A vertex fitting no bucket raises ``UnclassifiableVertexError`` naming
    it; on connected in-class atoms this never fires.
    """
    a_masks = [s.mask for s in a]
    a_all = 0
    for m in a_masks:
        a_all |= m
    if base is None:
        base = tuple((m & -m).bit_length() - 1 for m in a_masks)
    x_masks = [0] * 5
    y_masks = [0] * 5
    z_mask = 0
    t_mask = 0
    for v in range(g.n):
        if a_all >> v & 1:
            continue
        nb = g.adj[v]
        pattern = tuple(i for i in range(5) if nb & a_masks[i])
        k = len(pattern)
        if k == 5:
            z_mask |= 1 << v
        elif k == 0:
            t_mask |= 1 << v
        elif k == 4:
            missing = next(i for i in range(5) if i not in pattern)
            y_masks[missing] |= 1 << v
        elif k == 3:
            hit = set(pattern)
            found = None
            for i in range(5):
                if hit == {i, _m5(i + 2), _m5(i - 2)}:
                    found = i
                    break
            if found is None:
                raise UnclassifiableVertexError(v, pattern)
            x_masks[found] |= 1 << v
        else:
            raise UnclassifiableVertexError(v, pattern)
    return C5Structure(
        a=tuple(a),
        x=tuple(VertexSet(g.n, mask=m) for m in x_masks),
        y=tuple(VertexSet(g.n, mask=m) for m in y_masks),
        z=VertexSet(g.n, mask=z_mask),
        t=VertexSet(g.n, mask=t_mask),
        base=tuple(base),
    )


def build_c5_structure(g: Graph, c5: tuple[int, ...] | None = None) -> C5Structure:
    """Find (or take) an induced C5, grow the maximal ring, classify the rest."""
    if c5 is None:
        from .detect import find_induced_cycle

        c5 = find_induced_cycle(g, 5)
        if c5 is None:
            raise PreconditionError("graph has no induced C5")
    a = grow_c5_partition(g, tuple(c5))
    return classify_rest(g, a, base=tuple(c5))


def w_sets(
    g: Graph,
    s: C5Structure,
    omega_value: int | None = None,
    caps: ExactCaps = DEFAULT_CAPS,
) -> list[list[tuple[VertexSet, VertexSet]]]:
    """Per ring index, the families of (X_i-clique, A_i-clique) pairs whose
    union reaches the clique number; empty family when X_i is empty."""
    if omega_value is None:
        omega_value = omega(g, caps)
    out: list[list[tuple[VertexSet, VertexSet]]] = []
    for i in range(5):
        fam: list[tuple[VertexSet, VertexSet]] = []
        if s.x[i].mask:
            for xk in clique_partition_masks(g, s.x[i].mask):
                for ak in clique_partition_masks(g, s.a[i].mask):
                    if xk.bit_count() + ak.bit_count() == omega_value:
                        fam.append((VertexSet(g.n, mask=xk), VertexSet(g.n, mask=ak)))
        out.append(fam)
    return out


def w_nonempty(g: Graph, s: C5Structure, omega_value: int) -> list[bool]:
    """Which ring indices have a nonempty family (cheap form of ``w_sets``)."""
    out = []
    for i in range(5):
        flag = False
        if s.x[i].mask:
            a_sizes = {m.bit_count() for m in clique_partition_masks(g, s.a[i].mask)}
            for xk in clique_partition_masks(g, s.x[i].mask):
                if (omega_value - xk.bit_count()) in a_sizes:
                    flag = True
                    break
        out.append(flag)
    return out


# ---------------------------------------------------------------------------
# assertion suite
# ---------------------------------------------------------------------------


@dataclass
class PropositionResult:
    pid: str
    title: str
    passed: bool
    vacuous: bool
    checked: int
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        out = {
            "id": self.pid,
            "title": self.title,
            "passed": self.passed,
            "vacuous": self.vacuous,
            "checked": self.checked,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class PropositionReport:
    results: list[PropositionResult] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[PropositionResult]:
        return [r for r in self.results if not r.passed]

    def coverage(self) -> dict[str, bool]:
        """Per check: was it exercised non-vacuously."""
        return {r.pid: not r.vacuous for r in self.results}

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.results]


class _Suite:
    """Collects universally-quantified checks; each check registers the
    number of instances it examined so vacuous passes are distinguishable."""

    def __init__(self) -> None:
        self.report = PropositionReport()

    def run(self, pid: str, title: str, fn: Callable[[], tuple[int, Optional[dict]]]) -> None:
        checked, witness = fn()
        self.report.results.append(
            PropositionResult(
                pid=pid,
                title=title,
                passed=witness is None,
                vacuous=checked == 0,
                checked=checked,
                witness=witness,
            )
        )


def _common_neighbor(g: Graph, u: int, v: int, within: int) -> bool:
    return bool(g.adj[u] & g.adj[v] & within)


def assert_c5_propositions(
    g: Graph,
    s: C5Structure,
    omega_value: int | None = None,
    caps: ExactCaps = DEFAULT_CAPS,
) -> PropositionReport:
    """Run the nineteen ring-structure checks, each literally as a
    universally quantified statement over the classified sets.

    All must pass on in-class atoms; failures carry a concrete witness that
    re-verifies against the raw graph.
    """
    suite = _Suite()
    am = [t.mask for t in s.a]
    xm = [t.mask for t in s.x]
    ym = [t.mask for t in s.y]
    zm = s.z.mask
    tm = s.t.mask
    a_cliques = [clique_partition_masks(g, m) if find_p3_in(g, m) is None else None for m in am]
    x_cliques = [clique_partition_masks(g, m) if find_p3_in(g, m) is None else None for m in xm]
    t_comps = g.components(tm) if tm else []
    adj = g.adj

    def p01() -> tuple[int, Optional[dict]]:
        masks = am + xm + ym + [zm, tm]
        union = 0
        for m in masks:
            if union & m:
                v = (union & m & -(union & m)).bit_length() - 1
                return 1, {"kind": "overlap", "vertex": v}
            union |= m
        if union != g.full_mask:
            v = (~union & g.full_mask & -(~union & g.full_mask)).bit_length() - 1
            return 1, {"kind": "uncovered", "vertex": v}
        return 1, None

    suite.run("P01", "ring, X, Y, Z, T partition the vertex set", p01)

    def p02() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            if am[i]:
                checked += 1
                p3 = find_p3_in(g, am[i])
                if p3:
                    return checked, {"part": i, "p3": p3}
        return checked, None

    suite.run("P02", "each ring part induces a P3-free graph", p02)

    def p03() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            if xm[i]:
                checked += 1
                if not is_complete_sets(g, xm[i], am[i]):
                    for v in bits(xm[i]):
                        miss = am[i] & ~adj[v]
                        if miss:
                            return checked, {"x_vertex": v, "nonneighbor": (miss & -miss).bit_length() - 1}
        return checked, None

    suite.run("P03", "X_i is complete to its own ring part", p03)

    def p04() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            if not xm[i]:
                continue
            for j in (_m5(i + 2), _m5(i - 2)):
                if a_cliques[j] is None:
                    continue
                for k in a_cliques[j]:
                    for v in bits(xm[i]):
                        hit = adj[v] & k
                        checked += 1
                        if hit and hit != k:
                            return checked, {"x_vertex": v, "clique": sorted(bits(k))}
        return checked, None

    suite.run("P04", "an X_i vertex touching an opposite-part clique covers it", p04)

    def p05() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            for v in bits(xm[i]):
                for j in (_m5(i + 2), _m5(i - 2)):
                    checked += 1
                    try:
                        ok = is_good_wrt(g, v, am[j])
                    except PreconditionError:
                        ok = False
                    if not ok:
                        return checked, {"x_vertex": v, "target_part": j}
        return checked, None

    suite.run("P05", "each X_i vertex is good w.r.t. both opposite parts", p05)

    def p06() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            for v in bits(xm[i]):
                checked += 1
                ip2, im2 = _m5(i + 2), _m5(i - 2)
                if (adj[v] & am[ip2]) != am[ip2] and (adj[v] & am[im2]) != am[im2]:
                    return checked, {"x_vertex": v, "index": i}
        return checked, None

    suite.run("P06", "each X_i vertex covers one opposite part entirely", p06)

    def p07() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            verts = list(bits(xm[i]))
            for ai, u in enumerate(verts):
                for v in verts[ai + 1 :]:
                    if adj[u] >> v & 1:
                        continue
                    checked += 1
                    for j in (_m5(i + 2), _m5(i - 2)):
                        if not _common_neighbor(g, u, v, am[j]):
                            return checked, {"pair": (u, v), "part": j}
        return checked, None

    suite.run("P07", "nonadjacent X_i vertices share neighbors in both opposite parts", p07)

    def p08() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            both = am[_m5(i + 2)] | am[_m5(i - 2)]
            verts = [v for v in bits(xm[i]) if adj[v] & both == both]
            hit = False
            for ai, u in enumerate(verts):
                for v in verts[ai + 1 :]:
                    if not adj[u] >> v & 1:
                        hit = True
            if hit:
                checked += 1
                if not is_clique_mask(g, both):
                    return checked, {"index": i, "parts": sorted(bits(both))}
        return checked, None

    suite.run("P08", "nonadjacent full-covering X_i pair forces opposite parts to one clique", p08)

    def p09() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            both = am[_m5(i + 2)] | am[_m5(i - 2)]
            for v in bits(xm[i]):
                if adj[v] & tm:
                    checked += 1
                    if adj[v] & both != both:
                        return checked, {"x_vertex": v}
        return checked, None

    suite.run("P09", "an X_i vertex with a tail neighbor covers both opposite parts", p09)

    def p10() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            if xm[i]:
                checked += 1
                p3 = find_p3_in(g, xm[i])
                if p3:
                    return checked, {"index": i, "p3": p3}
        return checked, None

    suite.run("P10", "each X_i induces a P3-free graph", p10)

    def p11() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            j = _m5(i + 1)
            if xm[i] and xm[j]:
                checked += 1
                if not is_complete_sets(g, xm[i], xm[j]):
                    return checked, {"parts": (i, j)}
        return checked, None

    suite.run("P11", "adjacent-index X parts are complete to each other", p11)

    def p12() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            if x_cliques[i] is None or not xm[i]:
                continue
            ip2, im2 = _m5(i + 2), _m5(i - 2)
            for k in x_cliques[i]:
                # (a)/(b): a far-side X vertex avoiding K pins K's touched cliques
                for jx, ja in ((ip2, im2), (im2, ip2)):
                    lonely = any(not (adj[v] & k) for v in bits(xm[jx]))
                    if not lonely or a_cliques[ja] is None:
                        continue
                    nk = 0
                    for v in bits(k):
                        nk |= adj[v]
                    for q in a_cliques[ja]:
                        if nk & q:
                            checked += 1
                            if not is_complete_sets(g, k, q):
                                return checked, {"x_clique": sorted(bits(k)), "a_clique": sorted(bits(q))}
                # (c): a fully-linked opposite clique pair isolates both
                if x_cliques[ip2] is None:
                    continue
                for k2 in x_cliques[ip2]:
                    if not is_complete_sets(g, k, k2):
                        continue
                    checked += 1
                    if not is_anticomplete_sets(g, k, xm[ip2] & ~k2):
                        return checked, {"kind": "pair-isolation", "k": sorted(bits(k))}
                    if not is_anticomplete_sets(g, k2, xm[i] & ~k):
                        return checked, {"kind": "pair-isolation", "k2": sorted(bits(k2))}
                    if not is_anticomplete_sets(g, xm[i] & ~k, xm[ip2] & ~k2):
                        return checked, {"kind": "rest-isolation", "parts": (i, ip2)}
                    for part, target in ((k, a_cliques[ip2]), (k2, a_cliques[i])):
                        if target is None:
                            continue
                        full = sum(1 for q in target if is_complete_sets(g, part, q) and q)
                        touched = 0
                        for q in target:
                            nk = 0
                            for v in bits(part):
                                nk |= adj[v]
                            if nk & q:
                                touched += 1
                        if full != 1 or touched != full:
                            return checked, {"kind": "exactly-one-clique", "clique": sorted(bits(part))}
                    if not is_anticomplete_sets(g, k, xm[im2]):
                        return checked, {"kind": "third-part", "k": sorted(bits(k))}
                    if not is_anticomplete_sets(g, k2, xm[_m5(i - 1)]):
                        return checked, {"kind": "third-part", "k2": sorted(bits(k2))}
        return checked, None

    suite.run("P12", "linked opposite X cliques are isolated and pin unique ring cliques", p12)

    def p13() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            im1, ip2 = _m5(i - 1), _m5(i + 2)
            if x_cliques[i] is None or x_cliques[im1] is None or a_cliques[ip2] is None:
                continue
            for k in x_cliques[i]:
                nk = 0
                for v in bits(k):
                    nk |= adj[v]
                for k2 in x_cliques[im1]:
                    nk2 = 0
                    for v in bits(k2):
                        nk2 |= adj[v]
                    for q in a_cliques[ip2]:
                        if nk & q and nk2 & q:
                            checked += 1
                            if not (is_complete_sets(g, k, q) and is_complete_sets(g, k2, q)):
                                return checked, {"q": sorted(bits(q)), "k": sorted(bits(k)), "k2": sorted(bits(k2))}
        return checked, None

    suite.run("P13", "consecutive X cliques touching one far clique cover it jointly", p13)

    def p14() -> tuple[int, Optional[dict]]:
        w = omega_value if omega_value is not None else omega(g, caps)
        fam = w_sets(g, s, w, caps)
        checked = 0
        for i in range(5):
            j = _m5(i + 1)
            if not fam[i] or not fam[j]:
                continue
            im2 = _m5(i - 2)
            if a_cliques[im2] is None:
                continue
            for k, _astar in fam[i]:
                for k2, _astar2 in fam[j]:
                    for d in a_cliques[im2]:
                        checked += 1
                        if is_clique_mask(g, k.mask | k2.mask | d):
                            return checked, {"k": sorted(k), "k2": sorted(k2), "d": sorted(bits(d))}
        return checked, None

    suite.run("P14", "peak clique pairs at adjacent indices exclude a shared far clique", p14)

    def p15() -> tuple[int, Optional[dict]]:
        checked = 0
        for q in t_comps:
            for i in range(5):
                for v in bits(xm[i]):
                    checked += 1
                    hit = adj[v] & q
                    if hit and hit != q:
                        return checked, {"x_vertex": v, "component": sorted(bits(q))}
        return checked, None

    suite.run("P15", "X vertices are complete or anticomplete to each tail component", p15)

    def p16() -> tuple[int, Optional[dict]]:
        checked = 0
        for i in range(5):
            if not ym[i]:
                continue
            for j in (_m5(i - 1), _m5(i + 1)):
                checked += 1
                if not is_clique_mask(g, am[j]) and not is_complete_sets(g, ym[i], am[j]):
                    return checked, {"kind": "non-clique-side", "y_index": i, "part": j}
            for v in bits(ym[i]):
                checked += 1
                im1, ip1 = _m5(i - 1), _m5(i + 1)
                if (adj[v] & am[im1]) != am[im1] and (adj[v] & am[ip1]) != am[ip1]:
                    return checked, {"kind": "neither-side", "y_vertex": v}
        return checked, None

    suite.run("P16", "Y_i covers a non-clique side part; each Y_i vertex covers a side", p16)

    def p17() -> tuple[int, Optional[dict]]:
        if zm or not tm:
            return 0, None
        p3 = find_p3_in(g, tm)
        return 1, None if p3 is None else {"p3": p3}

    suite.run("P17", "with no hub vertices the tail is P3-free", p17)

    def p18() -> tuple[int, Optional[dict]]:
        checked = 0
        for q in t_comps:
            for i in range(5):
                for v in bits(ym[i]):
                    checked += 1
                    hit = adj[v] & q
                    if hit and hit != q:
                        return checked, {"y_vertex": v, "component": sorted(bits(q))}
        return checked, None

    suite.run("P18", "Y vertices are complete or anticomplete to each tail component", p18)

    def p19() -> tuple[int, Optional[dict]]:
        checked = 0
        if not tm:
            return 0, None
        for i in range(5):
            others = xm[_m5(i - 2)] | xm[_m5(i + 2)] | ym[i] | ym[_m5(i + 1)] | ym[_m5(i - 1)] | zm
            for u in bits(xm[i]):
                tnb = adj[u] & tm
                if not tnb:
                    continue
                k = next(c for c in (x_cliques[i] or []) if c >> u & 1) if x_cliques[i] else 1 << u
                nonnbrs = others & ~adj[u]
                for t in bits(tnb):
                    for v in bits(nonnbrs):
                        checked += 1
                        if not adj[t] >> v & 1:
                            return checked, {"kind": "tail-link", "t": t, "u": u, "v": v}
                        if not (adj[v] & k):
                            if adj[t] & k != k:
                                return checked, {"kind": "tail-clique", "t": t, "k": sorted(bits(k))}
                            tstar = next(c for c in t_comps if c >> t & 1)
                            if not is_complete_sets(g, tstar, k):
                                return checked, {"kind": "tail-component", "t": t, "k": sorted(bits(k))}
        return checked, None

    suite.run("P19", "a tail vertex linked into X_i reaches its vertex's non-neighbors", p19)

    return suite.report
