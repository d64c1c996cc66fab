"""Case-level structural facts for atoms holding an induced C5.

Two families: facts that hold when hub vertices exist (an induced 5-wheel is
present, ``W01``..``W14``) and facts for the wheel-free situation
(``F01``..``F23``).  The certification code re-verifies the facts it builds
on before constructing stable sets; the verification harness runs the whole
family as assertions.  Each fact is checked literally as a universally
quantified statement, with concrete witnesses on failure.
"""

from __future__ import annotations

from typing import Optional

from .c5_structure import C5Structure, PropositionReport, PropositionResult, _m5
from .detect import (
    DEFAULT_CAPS,
    ExactCaps,
    clique_partition_masks,
    find_p3_in,
    maximal_cliques,
    omega,
    r_set,
)
from .graph import (
    Graph,
    bits,
    is_anticomplete_sets,
    is_clique_mask,
    is_complete_sets,
)


def _r_mask(g: Graph, m: int) -> int:
    return r_set(g, m).mask


def star_clique(g: Graph, part_mask: int, z_mask: int) -> int | None:
    """The unique clique of a P3-free part that ``z_mask`` is complete to and
    whose complement in the part it avoids; None if no such clique."""
    if not z_mask:
        return None
    for k in clique_partition_masks(g, part_mask):
        if is_complete_sets(g, z_mask, k) and is_anticomplete_sets(g, z_mask, part_mask & ~k):
            return k
    return None


def unique_covered_clique(g: Graph, src_mask: int, part_mask: int) -> int | None:
    """The unique part clique fully covered by ``src_mask`` with the rest of
    the part untouched, or None."""
    return star_clique(g, part_mask, src_mask)


def _hits(r_mask: int, clique: int) -> int:
    return (r_mask & clique).bit_count()


def _maximal_in_g(g: Graph, clique: int) -> bool:
    """A clique (mask) of g is maximal in the whole graph."""
    ext = g.full_mask & ~clique
    for v in bits(clique):
        ext &= g.adj[v]
        if not ext:
            return True
    return not ext


class _Facts:
    def __init__(self) -> None:
        self.results: list[PropositionResult] = []

    def add(self, pid: str, title: str, checked: int, witness: Optional[dict]) -> None:
        self.results.append(
            PropositionResult(
                pid=pid,
                title=title,
                passed=witness is None,
                vacuous=checked == 0,
                checked=checked,
                witness=witness,
            )
        )


def wheel_case_facts(
    g: Graph,
    s: C5Structure,
    omega_value: int | None = None,
    caps: ExactCaps = DEFAULT_CAPS,
) -> PropositionReport:
    """Structural facts used by the 5-wheel-case certificate construction."""
    f = _Facts()
    am = [t.mask for t in s.a]
    xm = [t.mask for t in s.x]
    zm, tm = s.z.mask, s.t.mask
    adj = g.adj
    a_cliques = [clique_partition_masks(g, m) if find_p3_in(g, m) is None else None for m in am]
    w = omega_value if omega_value is not None else omega(g, caps)

    checked = 0
    wit = None
    for z in bits(zm):
        for i in range(5):
            if a_cliques[i] is None:
                continue
            covered = 0
            for k in a_cliques[i]:
                hit = adj[z] & k
                checked += 1
                if hit and hit != k:
                    wit = wit or {"z": z, "clique": sorted(bits(k))}
                if hit == k:
                    covered += 1
            if covered != 1 and wit is None:
                wit = {"z": z, "part": i, "covered": covered}
    f.add("W01", "each hub vertex covers exactly one clique per ring part", checked, wit)

    if zm:
        ok = any(
            all(is_clique_mask(g, am[_m5(j + d)]) for d in (0, 2, -2)) for j in range(5)
        )
        f.add("W02", "some index has its part and both opposite parts cliques", 1, None if ok else {})
    else:
        f.add("W02", "some index has its part and both opposite parts cliques", 0, None)

    if zm:
        ok = is_clique_mask(g, zm)
        f.add("W03", "the hub set is a clique", 1, None if ok else {"z": sorted(bits(zm))})
    else:
        f.add("W03", "the hub set is a clique", 0, None)

    checked = 0
    wit = None
    stars: list[int | None] = [None] * 5
    if zm:
        for i in range(5):
            checked += 1
            stars[i] = star_clique(g, am[i], zm)
            if stars[i] is None:
                wit = wit or {"part": i}
    f.add("W04", "each ring part has a unique hub-covered clique", checked, wit)

    checked = 0
    wit = None
    if zm:
        for i in range(5):
            ip2, im2 = _m5(i + 2), _m5(i - 2)
            area = zm | am[ip2] | am[im2]
            rr = _r_mask(g, am[ip2]) | _r_mask(g, am[im2])
            for mc in maximal_cliques(g, within=area):
                if not _maximal_in_g(g, mc):
                    continue
                checked += 1
                if _hits(rr, mc) < 2:
                    wit = wit or {"index": i, "clique": sorted(bits(mc))}
    f.add("W05", "far-part picks hit hub-area maximal cliques twice", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        if xm[i] and zm:
            checked += 1
            if not is_anticomplete_sets(g, xm[i], zm):
                wit = wit or {"index": i}
    f.add("W06", "spokes avoid the hub set", checked, wit)

    checked = 0
    wit = None
    if zm:
        for i in range(5):
            if not xm[i]:
                continue
            for j in (_m5(i + 2), _m5(i - 2)):
                star = stars[j]
                if star is None:
                    continue
                checked += 1
                if not (
                    is_complete_sets(g, xm[i], star)
                    and is_anticomplete_sets(g, xm[i], am[j] & ~star)
                ):
                    wit = wit or {"index": i, "part": j}
    f.add("W07", "spokes align with the hub-covered far cliques", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        if not xm[i]:
            continue
        ip2, im2 = _m5(i + 2), _m5(i - 2)
        area = xm[i] | am[ip2] | am[im2]
        rr = _r_mask(g, am[ip2]) | _r_mask(g, am[im2])
        for mc in maximal_cliques(g, within=area):
            if mc.bit_count() != w:
                continue
            checked += 1
            if _hits(rr, mc) < 2:
                wit = wit or {"index": i, "clique": sorted(bits(mc))}
    f.add("W08", "far-part picks hit spoke-area maximum cliques twice", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        j = _m5(i + 2)
        if xm[i] and xm[j]:
            checked += 1
            if not is_anticomplete_sets(g, xm[i], xm[j]):
                wit = wit or {"pair": (i, j)}
    f.add("W09", "opposite spokes are anticomplete", checked, wit)

    f.add(
        "W10",
        "no Y vertices coexist with a hub",
        1 if zm else 0,
        None if (not zm or s.y_mask == 0) else {"y": sorted(bits(s.y_mask))},
    )

    checked = 0
    wit = None
    for i in range(5):
        if any(adj[v] & tm for v in bits(xm[i])):
            checked += 1
            ip2, im2 = _m5(i + 2), _m5(i - 2)
            if not (is_clique_mask(g, am[ip2]) and is_clique_mask(g, am[im2])):
                wit = wit or {"index": i}
    f.add("W11", "tail-linked spokes force both far parts to cliques", checked, wit)

    checked = 0
    wit = None
    if zm and tm:
        xall = s.x_mask
        for q in g.components(tm):
            checked += 1
            ok = False
            for i in range(5):
                touch = 0
                for v in bits(xm[i]):
                    if adj[v] & q:
                        touch |= 1 << v
                if touch and is_complete_sets(g, touch, q):
                    ok = True
                    break
            if not ok:
                wit = wit or {"component": sorted(bits(q))}
        for t in bits(tm):
            checked += 1
            if not adj[t] & xall:
                wit = wit or {"t": t}
    f.add("W12", "every tail component hangs fully on some spoke part", checked, wit)

    checked = 1 if (zm and tm) else 0
    wit = None
    if checked and not is_complete_sets(g, zm, tm):
        wit = {}
    f.add("W13", "the hub set covers the tail", checked, wit)

    checked = 1 if (zm and tm) else 0
    wit = None
    if checked:
        p3 = find_p3_in(g, tm)
        if p3:
            wit = {"p3": p3}
    f.add("W14", "the tail is P3-free", checked, wit)

    report = PropositionReport()
    report.results = f.results
    return report


def script_a(g: Graph, s: C5Structure, m: int) -> int:
    """One vertex per clique of ring part ``m``: a vertex complete to the two
    flanking Y parts when every part clique has one, else the least vertex.

    Always a maximum stable set of the part.
    """
    am = s.a[m].mask
    yy = s.y[_m5(m - 1)].mask | s.y[_m5(m + 1)].mask
    parts = clique_partition_masks(g, am)
    if yy:
        picks = []
        for k in parts:
            good = [v for v in bits(k) if g.adj[v] & yy == yy]
            if not good:
                picks = None
                break
            picks.append(good[0])
        if picks is not None:
            out = 0
            for v in picks:
                out |= 1 << v
            return out
    out = 0
    for k in parts:
        out |= k & -k
    return out


def b_clique(g: Graph, s: C5Structure, m: int) -> int | None:
    """The unique clique of ring part ``m`` that the Y pair across from it is
    complete to (and the rest of the part anticomplete); None when the pair
    is empty or no unique clique exists."""
    pair = s.y[_m5(m + 2)].mask | s.y[_m5(m - 2)].mask
    if not pair:
        return None
    return star_clique(g, s.a[m].mask, pair)


def wheelfree_case_facts(
    g: Graph,
    s: C5Structure,
    omega_value: int | None = None,
    caps: ExactCaps = DEFAULT_CAPS,
) -> PropositionReport:
    """Structural facts used by the wheel-free-case certificate construction."""
    f = _Facts()
    am = [t.mask for t in s.a]
    xm = [t.mask for t in s.x]
    ym = [t.mask for t in s.y]
    tm = s.t.mask
    adj = g.adj
    a_cliques = [clique_partition_masks(g, m) if find_p3_in(g, m) is None else None for m in am]
    x_cliques = [clique_partition_masks(g, m) if find_p3_in(g, m) is None else None for m in xm]
    x_all = s.x_mask
    y_all = s.y_mask
    w = omega_value if omega_value is not None else omega(g, caps)

    checked = 0
    wit = None
    for i in range(5):
        j = _m5(i + 1)
        if xm[i] and xm[j]:
            im2 = _m5(i - 2)
            both = xm[i] | xm[j]
            if any(adj[p] & both == both for p in bits(am[im2])):
                checked += 1
                if not is_clique_mask(g, both):
                    wit = wit or {"pair": (i, j)}
    f.add("F01", "a jointly-covered consecutive spoke pair is a clique", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        j = _m5(i + 2)
        if x_cliques[i] is None or x_cliques[j] is None:
            continue
        for k in x_cliques[i]:
            for k2 in x_cliques[j]:
                checked += 1
                nk = 0
                for v in bits(k):
                    nk |= adj[v]
                if nk & k2 and not is_complete_sets(g, k, k2):
                    wit = wit or {"k": sorted(bits(k)), "k2": sorted(bits(k2))}
    f.add("F02", "opposite spoke cliques are linked all-or-nothing", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        j = _m5(i + 2)
        if x_cliques[i] is None or x_cliques[j] is None:
            continue
        for k in x_cliques[i]:
            for k2 in x_cliques[j]:
                if not is_anticomplete_sets(g, k, k2):
                    continue
                checked += 1
                if not (is_complete_sets(g, k, am[j]) or is_complete_sets(g, k2, am[i])):
                    wit = wit or {"k": sorted(bits(k)), "k2": sorted(bits(k2))}
    f.add("F03", "an unlinked opposite spoke clique pair covers a base part", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        if xm[_m5(i + 1)] and xm[i] and xm[_m5(i + 2)]:
            checked += 1
            if not is_anticomplete_sets(g, xm[i], xm[_m5(i + 2)]):
                wit = wit or {"index": i}
    f.add("F04", "a middle spoke part separates its two neighbors", checked, wit)

    checked = 0
    wit = None
    for t in bits(tm):
        checked += 1
        for i in range(5):
            if all(adj[t] & xm[_m5(i + d)] for d in (0, 1, 2)):
                wit = wit or {"t": t, "start": i}
    f.add("F05", "no tail vertex meets three consecutive spoke parts", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        if not xm[i]:
            continue
        ip2, im2 = _m5(i + 2), _m5(i - 2)
        area = xm[i] | am[ip2] | am[im2]
        rr = _r_mask(g, am[ip2]) | _r_mask(g, am[im2])
        local = [mc for mc in maximal_cliques(g, within=area)]
        if not local:
            continue
        top = max(m.bit_count() for m in local)
        for mc in local:
            if mc.bit_count() != top or not (mc & am[ip2]) or not (mc & am[im2]):
                continue
            checked += 1
            if _hits(rr, mc) < 2:
                wit = wit or {"index": i, "clique": sorted(bits(mc))}
    f.add("F06", "far-part picks hit two-sided spoke-area maximum cliques twice", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        if x_cliques[i] is None:
            continue
        for j, k_idx in ((_m5(i + 2), _m5(i - 2)), (_m5(i - 2), _m5(i + 2))):
            for xk in x_cliques[i]:
                if all((adj[p] & xk) != xk for p in bits(am[j])):
                    checked += 1
                    if not is_clique_mask(g, am[k_idx]):
                        wit = wit or {"index": i, "x_clique": sorted(bits(xk)), "side": j}
    f.add("F07", "a side avoiding some spoke clique forces the other side to one clique", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        if not xm[i]:
            continue
        ip2, im2 = _m5(i + 2), _m5(i - 2)
        area = xm[i] | am[ip2] | am[im2]
        local = list(maximal_cliques(g, within=area))
        if not local:
            continue
        top = max(m.bit_count() for m in local)
        rxa = _r_mask(g, xm[i]) | _r_mask(g, am[ip2]) | _r_mask(g, am[im2])
        ra = _r_mask(g, am[ip2]) | _r_mask(g, am[im2])
        for mc in local:
            if mc.bit_count() == top:
                for j, k_idx in ((ip2, im2), (im2, ip2)):
                    if not mc & am[j]:
                        checked += 1
                        if not (mc & xm[i]) or not is_clique_mask(g, am[k_idx]) or (mc & am[k_idx]) != am[k_idx]:
                            wit = wit or {"index": i, "clique": sorted(bits(mc))}
                checked += 1
                if _hits(rxa, mc) < 2:
                    wit = wit or {"index": i, "kind": "max-two", "clique": sorted(bits(mc))}
            checked += 1
            if _hits(ra, mc) < 1:
                wit = wit or {"index": i, "kind": "maximal-one", "clique": sorted(bits(mc))}
    f.add("F08", "one-sided spoke-area maximum cliques carry the spoke and full far side", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        if not ym[i]:
            continue
        for j in (_m5(i + 2), _m5(i - 2)):
            if a_cliques[j] is None:
                continue
            for k in a_cliques[j]:
                for y in bits(ym[i]):
                    hit = adj[y] & k
                    checked += 1
                    if hit and hit != k:
                        wit = wit or {"y": y, "clique": sorted(bits(k))}
    f.add("F09", "a Y vertex touching a far clique covers it", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        for y in bits(ym[i]):
            for j in (_m5(i + 2), _m5(i - 2)):
                if a_cliques[j] is None:
                    continue
                checked += 1
                covered = sum(1 for k in a_cliques[j] if adj[y] & k == k)
                touched = sum(1 for k in a_cliques[j] if adj[y] & k)
                if covered != 1 or touched != 1:
                    wit = wit or {"y": y, "part": j}
    f.add("F10", "each Y vertex covers exactly one clique per far part", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        far = am[_m5(i + 2)] | am[_m5(i - 2)]
        for y in bits(ym[i]):
            for j in (_m5(i - 1), _m5(i + 1)):
                if adj[y] & am[j] != am[j]:
                    checked += 1
                    if adj[y] & far != far or not is_clique_mask(g, far):
                        wit = wit or {"y": y, "side": j}
    f.add("F11", "a Y vertex missing a side covers both far parts as one clique", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        if ym[i]:
            checked += 1
            if not is_clique_mask(g, ym[i]):
                wit = wit or {"index": i}
    f.add("F12", "each Y part is a clique", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        j = _m5(i + 1)
        if ym[i] and ym[j]:
            checked += 1
            if not is_complete_sets(g, ym[i], ym[j]):
                wit = wit or {"pair": (i, j)}
    f.add("F13", "adjacent Y parts are complete to each other", checked, wit)

    checked = 0
    wit = None
    for t in bits(tm):
        checked += 1
        if not adj[t] & x_all:
            wit = wit or {"t": t}
    f.add("F14", "every tail vertex reaches a spoke", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        pair = ym[i] | ym[_m5(i + 1)]
        if not pair:
            continue
        checked += 1
        if star_clique(g, am[_m5(i - 2)], pair) is None:
            wit = wit or {"pair_index": i}
    f.add("F15", "each flanking Y pair pins a unique far clique", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        if not ym[i]:
            continue
        for j in (_m5(i - 1), _m5(i + 1)):
            if a_cliques[j] is None:
                continue
            for k in a_cliques[j]:
                checked += 1
                if not any(adj[v] & ym[i] == ym[i] for v in bits(k)):
                    wit = wit or {"y_index": i, "clique": sorted(bits(k))}
    f.add("F16", "every side clique holds a vertex covering the Y part", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        y = ym[_m5(i + 1)]
        if not y:
            continue
        for jx in (i, _m5(i + 2)):
            if xm[jx]:
                checked += 1
                if not is_anticomplete_sets(g, y, xm[jx]):
                    wit = wit or {"y_index": _m5(i + 1), "x_index": jx}
    f.add("F17", "a Y part avoids the spokes flanking its index", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        far_y = ym[_m5(i + 2)] | ym[_m5(i - 2)]
        checked += 1
        if xm[i] and far_y:
            wit = wit or {"index": i}
    f.add("F18", "no spoke part coexists with a far Y part", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        y = ym[_m5(i + 1)]
        if not y:
            continue
        for x in bits(xm[i]):
            for yv in bits(y):
                for j in (i, _m5(i + 2), _m5(i - 2)):
                    checked += 1
                    if not adj[x] & adj[yv] & am[j]:
                        wit = wit or {"x": x, "y": yv, "part": j}
        for x in bits(xm[_m5(i + 2)]):
            for yv in bits(y):
                for j in (i, _m5(i + 2), _m5(i - 1)):
                    checked += 1
                    if not adj[x] & adj[yv] & am[j]:
                        wit = wit or {"x": x, "y": yv, "part": j}
    f.add("F19", "flanked Y and spoke vertices share base neighbors", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        if xm[i]:
            side = ym[_m5(i + 1)] | ym[_m5(i - 1)]
            if side:
                checked += 1
                if not is_complete_sets(g, side, am[i]):
                    wit = wit or {"index": i}
    f.add("F20", "with a spoke present its flanking Y parts cover the base part", checked, wit)

    checked = 0
    wit = None
    if x_all:
        for i in range(5):
            j = _m5(i + 2)
            if ym[i] and ym[j]:
                checked += 1
                if not is_anticomplete_sets(g, ym[i], ym[j]):
                    wit = wit or {"pair": (i, j)}
    f.add("F21", "with spokes present far Y parts are anticomplete", checked, wit)

    checked = 0
    wit = None
    if x_all:
        for i in range(5):
            y1, y2 = ym[_m5(i - 1)], ym[_m5(i + 1)]
            if not (y1 and y2):
                continue
            for t in bits(tm):
                checked += 1
                if adj[t] & y1 and adj[t] & y2:
                    wit = wit or {"t": t, "index": i}
    f.add("F22", "no tail vertex spans both Y parts flanking an index", checked, wit)

    checked = 0
    wit = None
    for i in range(5):
        if not ym[i]:
            continue
        im1, im2 = _m5(i - 1), _m5(i - 2)
        area = am[im1] | am[im2] | ym[i] | ym[_m5(i + 1)]
        aa = script_a(g, s, im1) | script_a(g, s, im2)
        for mc in maximal_cliques(g, within=area):
            if not _maximal_in_g(g, mc):
                continue
            checked += 1
            if _hits(aa, mc) < 2:
                wit = wit or {"index": i, "clique": sorted(bits(mc))}
    f.add("F23", "side picks hit Y-area maximal cliques twice", checked, wit)

    report = PropositionReport()
    report.results = f.results
    return report
