"""Certificate constructions for atoms that contain an induced C5.

Two entry points: ``certify_5wheel_case`` (hub vertices present) and
``certify_wheelfree_c5_case`` (no wheel of any size).  Both re-verify the
case facts they build on, resolve every "up to relabeling" step by searching
the ten dihedral orientations of the ring in a fixed order, and validate the
constructed stable sets before returning; a construction that validates
under no orientation trips the bug trap with the workspace attached.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .c5_structure import C5Structure, _m5, w_nonempty
from .case_facts import b_clique, script_a, wheel_case_facts, wheelfree_case_facts
from .detect import (
    DEFAULT_CAPS,
    ExactCaps,
    clique_partition_masks,
    maximal_cliques,
    omega,
    r_set,
)
from .errors import BugTrapError
from .graph import Graph, VertexSet, bits, is_clique_mask, is_complete_sets
from .nice import AtomOutcome, certify_3k1_case, make_certificate, verify_nice

_ROTATIONS = [tuple(_m5(i + k) for i in range(5)) for k in range(5)]
_REFLECTIONS = [tuple(_m5(k - i) for i in range(5)) for k in range(5)]
DIHEDRAL = _ROTATIONS + _REFLECTIONS


def permute_structure(s: C5Structure, perm: tuple[int, ...]) -> C5Structure:
    """Relabel ring indices by ``perm`` (old index -> new index)."""
    n = s.z.n
    a = [VertexSet(n)] * 5
    x = [VertexSet(n)] * 5
    y = [VertexSet(n)] * 5
    base = [0] * 5
    for i in range(5):
        a[perm[i]] = s.a[i]
        x[perm[i]] = s.x[i]
        y[perm[i]] = s.y[i]
        base[perm[i]] = s.base[i]
    return C5Structure(a=tuple(a), x=tuple(x), y=tuple(y), z=s.z, t=s.t, base=tuple(base))


class _View:
    """Mask-level working view of an oriented structure, with caches."""

    def __init__(self, g: Graph, s: C5Structure, w: int):
        self.g = g
        self.s = s
        self.w = w
        self.am = [t.mask for t in s.a]
        self.xm = [t.mask for t in s.x]
        self.ym = [t.mask for t in s.y]
        self.zm = s.z.mask
        self.tm = s.t.mask
        self.a_all = s.a_mask
        self.x_all = s.x_mask
        self.y_all = s.y_mask
        self._r: dict[int, int] = {}
        self._wflags: Optional[list[bool]] = None
        self._t_cliques: Optional[list[int]] = None

    def r(self, mask: int) -> int:
        if mask not in self._r:
            self._r[mask] = r_set(self.g, mask).mask
        return self._r[mask]

    @property
    def t_cliques(self) -> list[int]:
        if self._t_cliques is None:
            self._t_cliques = self.g.components(self.tm) if self.tm else []
        return self._t_cliques

    @property
    def L(self) -> int:
        out = 0
        for c in self.t_cliques:
            out |= c & -c
        return out

    @property
    def Lp(self) -> int:
        out = 0
        for c in self.t_cliques:
            rest = c & ~(c & -c)
            if rest:
                out |= rest & -rest
        return out

    @property
    def wflags(self) -> list[bool]:
        if self._wflags is None:
            self._wflags = w_nonempty(self.g, self.s, self.w)
        return self._wflags

    def a_clique_list(self, i: int) -> list[int]:
        return clique_partition_masks(self.g, self.am[i])

    def x_clique_list(self, i: int) -> list[int]:
        return clique_partition_masks(self.g, self.xm[i])

    def a_clique(self, i: int) -> bool:
        return is_clique_mask(self.g, self.am[i])


def _oriented_views(g: Graph, s: C5Structure, w: int) -> Iterator[tuple[tuple[int, ...], _View]]:
    for perm in DIHEDRAL:
        yield perm, _View(g, permute_structure(s, perm), w)


def _try(
    g: Graph,
    v: _View,
    sets: tuple[int, int, int],
    stage: str,
    workspace: dict,
    caps: ExactCaps,
) -> Optional[AtomOutcome]:
    """Validate a candidate construction; None if it does not verify."""
    cert = make_certificate(g, *sets)
    verdict = verify_nice(g, cert, caps)
    if verdict.valid:
        ws = dict(workspace)
        ws["verdict"] = verdict.to_json()
        return AtomOutcome(kind="nice", nice=cert, workspace=ws)
    return None


def _preflight(g: Graph, s: C5Structure, w: int, facts_fn, stage: str, caps: ExactCaps) -> None:
    report = facts_fn(g, s, w, caps)
    if not report.all_pass:
        raise BugTrapError(
            stage,
            "case facts failed before construction",
            {"failures": [r.to_json() for r in report.failures], "structure": s.to_json()},
        )


# ---------------------------------------------------------------------------
# hub (5-wheel) case
# ---------------------------------------------------------------------------


def certify_5wheel_case(
    g: Graph,
    s: C5Structure,
    caps: ExactCaps = DEFAULT_CAPS,
    precheck: bool = True,
) -> AtomOutcome:
    """Stable-set certificate for an in-class atom with an induced 5-wheel,
    built around a ring structure whose hub set is nonempty."""
    w = omega(g, caps)
    if not s.z.mask:
        raise BugTrapError("certify_5wheel_case", "empty hub set", {"structure": s.to_json()})
    if precheck:
        _preflight(g, s, w, wheel_case_facts, "certify_5wheel_case", caps)

    if not s.t.mask:
        for perm, v in _oriented_views(g, s, w):
            if not v.a_clique(2) or v.wflags[4]:
                continue
            sets = (
                v.r(v.am[0]) | v.r(v.am[2]) | v.r(v.xm[1]),
                v.r(v.am[1]) | v.r(v.am[3]) | v.r(v.xm[2]),
                v.r(v.am[4]) | v.r(v.xm[0]) | v.r(v.xm[3]),
            )
            out = _try(g, v, sets, "certify_5wheel_case", {"case": "no-tail", "orientation": perm}, caps)
            if out:
                return out
        raise BugTrapError("certify_5wheel_case", "no orientation certified the no-tail case", {"structure": s.to_json()})

    v0 = _View(g, s, w)
    triple = [j for j in range(5) if v0.xm[j] and v0.xm[_m5(j + 2)] and v0.xm[_m5(j - 2)]]
    if triple:
        j = triple[0]
        ztop = any(s.z.mask.bit_count() + tc.bit_count() == w for tc in v0.t_cliques)
        if not ztop:
            k = next((i for i in range(5) if v0.wflags[i]), j)
            if v0.wflags[_m5(k + 1)] or v0.wflags[_m5(k - 1)]:
                raise BugTrapError(
                    "certify_5wheel_case",
                    "peak families at adjacent indices in the spread-spokes case",
                    {"k": k, "structure": s.to_json()},
                )
            sets = (
                v0.r(v0.am[k]) | v0.r(v0.am[_m5(k + 2)]) | v0.r(v0.tm),
                v0.r(v0.am[_m5(k + 1)]) | v0.r(v0.am[_m5(k - 2)]) | v0.r(v0.xm[_m5(k + 2)]),
                v0.r(v0.am[_m5(k - 1)]) | v0.r(v0.xm[k]) | v0.r(v0.xm[_m5(k - 2)]),
            )
            out = _try(g, v0, sets, "certify_5wheel_case", {"case": "spread-spokes", "k": k}, caps)
            if out:
                return out
        sets = (
            v0.r(v0.am[0]) | v0.r(v0.am[2]),
            v0.r(v0.am[1]) | v0.r(v0.am[4]) | v0.L,
            v0.r(v0.am[3]) | v0.Lp,
        )
        out = _try(g, v0, sets, "certify_5wheel_case", {"case": "spread-spokes-top-tail", "j": j}, caps)
        if out:
            return out
        raise BugTrapError("certify_5wheel_case", "spread-spokes constructions failed", {"structure": s.to_json()})

    for perm, v in _oriented_views(g, s, w):
        live = {i for i in range(5) if v.xm[i]}
        template = live == {0} or (4 in live and live <= {4, 0, 1} and (live & {0, 1}))
        if not template or not v.a_clique(2):
            continue
        if v.wflags[0]:
            if v.wflags[1] or v.wflags[4]:
                continue
            sets = (
                v.r(v.am[1]) | v.r(v.am[4]) | v.r(v.xm[0]),
                v.r(v.am[0]) | v.r(v.am[3]) | v.L,
                v.r(v.am[2]) | v.Lp,
            )
            tag = "banded-spokes-peak"
        else:
            sets = (
                v.r(v.am[0]) | v.r(v.xm[1]) | v.r(v.xm[4]),
                v.r(v.am[1]) | v.r(v.am[3]) | v.L,
                v.r(v.am[2]) | v.r(v.am[4]) | v.Lp,
            )
            tag = "banded-spokes-flat"
        out = _try(g, v, sets, "certify_5wheel_case", {"case": tag, "orientation": perm}, caps)
        if out:
            return out
    raise BugTrapError("certify_5wheel_case", "no orientation certified the banded-spokes case", {"structure": s.to_json()})


# ---------------------------------------------------------------------------
# wheel-free case
# ---------------------------------------------------------------------------


def certify_wheelfree_c5_case(
    g: Graph,
    s: C5Structure,
    caps: ExactCaps = DEFAULT_CAPS,
    precheck: bool = True,
) -> AtomOutcome:
    """Certificate (stable sets or quasi-line) for a wheel-free in-class atom
    with an induced C5 and empty hub set."""
    w = omega(g, caps)
    if s.z.mask:
        raise BugTrapError("certify_wheelfree_c5_case", "hub set not empty", {"structure": s.to_json()})
    if precheck:
        _preflight(g, s, w, wheelfree_case_facts, "certify_wheelfree_c5_case", caps)
    v0 = _View(g, s, w)
    if not v0.x_all and not v0.y_all:
        if v0.tm:
            raise BugTrapError("certify_wheelfree_c5_case", "tail present without spokes", {"structure": s.to_json()})
        sets = (v0.r(v0.am[0]) | v0.r(v0.am[2]), v0.r(v0.am[1]) | v0.r(v0.am[3]), v0.r(v0.am[4]))
        out = _try(g, v0, sets, "certify_wheelfree_c5_case", {"case": "bare-ring"}, caps)
        if out:
            return out
        raise BugTrapError("certify_wheelfree_c5_case", "bare-ring construction failed", {"structure": s.to_json()})
    if not v0.y_all:
        return _certify_x_only(g, s, w, caps)
    if not v0.x_all:
        return _certify_y_only(g, s, w, caps)
    return _certify_mixed(g, s, w, caps)


def _max_in_area_cliques(g: Graph, area: int) -> list[int]:
    local = list(maximal_cliques(g, within=area))
    if not local:
        return []
    top = max(m.bit_count() for m in local)
    return [m for m in local if m.bit_count() == top]


def _certify_x_only(g: Graph, s: C5Structure, w: int, caps: ExactCaps) -> AtomOutcome:
    # one-sided peak area: some maximum clique of the whole graph sits in a
    # spoke area and misses the far side
    for perm, v in _oriented_views(g, s, w):
        if not v.xm[0]:
            continue
        area = v.xm[0] | v.am[2] | v.am[3]
        hit = any(
            m.bit_count() == w and not (m & v.am[3])
            for m in maximal_cliques(g, within=area)
        )
        if not hit:
            continue
        sets = (
            v.r(v.am[1]) | v.r(v.am[4]) | v.r(v.xm[0]),
            v.r(v.am[0]) | v.r(v.am[2]) | v.r(v.xm[1]) | v.L,
            v.r(v.am[3]) | v.Lp,
        )
        out = _try(g, v, sets, "certify_wheelfree_c5_case", {"case": "one-sided-peak", "orientation": perm}, caps)
        if out:
            return out

    live = [i for i in range(5) if s.x[i].mask]
    if len(live) == 1:
        for perm, v in _oriented_views(g, s, w):
            if not v.xm[0] or (v.x_all & ~v.xm[0]):
                continue
            sets = (
                v.r(v.xm[0]) | v.r(v.am[1]) | v.r(v.am[4]),
                v.r(v.am[0]) | v.r(v.am[2]) | v.L,
                v.r(v.am[3]) | v.Lp,
            )
            out = _try(g, v, sets, "certify_wheelfree_c5_case", {"case": "single-spoke", "orientation": perm}, caps)
            if out:
                return out
        raise BugTrapError("certify_wheelfree_c5_case", "single-spoke constructions failed", {"structure": s.to_json()})

    v0 = _View(g, s, w)
    crossing = any(
        v0.xm[i] and v0.xm[_m5(i + 2)] and not _anticomplete(g, v0.xm[i], v0.xm[_m5(i + 2)])
        for i in range(5)
    )
    if crossing:
        return _certify_x_crossing(g, s, w, caps)
    return _certify_x_spread(g, s, w, caps)


def _anticomplete(g: Graph, a: int, b: int) -> bool:
    return all(not (g.adj[u] & b) for u in bits(a))


def _certify_x_spread(g: Graph, s: C5Structure, w: int, caps: ExactCaps) -> AtomOutcome:
    """Spokes pairwise unlinked across the ring: pick a hinge index whose
    peak family is empty and whose flanks carry the maximum cliques."""
    v0 = _View(g, s, w)

    def property_holds(v: _View) -> bool:
        # flank picks plus all ring picks hit every maximum clique of the
        # hinge-flank areas twice
        r_all = 0
        for kk in range(5):
            r_all |= v.r(v.am[kk])
        for p in (1, 4):
            area = v.a_all | v.xm[0] | v.xm[p]
            rr = v.r(v.xm[p]) | r_all
            for m in maximal_cliques(g, within=area):
                if m.bit_count() == w and (rr & m).bit_count() < 2:
                    return False
        return True

    candidates: list[tuple[tuple[int, ...], _View]] = []
    if v0.tm:
        for j in range(5):
            ok = not v0.xm[_m5(j - 1)]
            if ok:
                for tc in v0.t_cliques:
                    spread = v0.xm[j] | v0.xm[_m5(j + 2)] | v0.xm[_m5(j - 2)]
                    if not is_complete_sets(g, tc, spread) or not _anticomplete(g, tc, v0.xm[_m5(j + 1)]):
                        ok = False
                        break
            if ok:
                hinge = _m5(j - 1)
                for perm, v in _oriented_views(g, s, w):
                    if perm[hinge] == 0:
                        candidates.append((perm, v))
    for perm, v in _oriented_views(g, s, w):
        if not v.xm[0] or not v.wflags[0]:
            candidates.append((perm, v))
    for perm, v in candidates:
        if v.tm and not _anticomplete(g, v.tm, v.xm[2]):
            continue
        if not property_holds(v):
            continue
        sets = (
            v.r(v.xm[4]) | v.r(v.am[0]) | v.r(v.xm[1]),
            v.r(v.am[1]) | v.r(v.xm[2]) | v.r(v.am[3]) | v.r(v.tm),
            v.r(v.am[2]) | v.r(v.xm[3]) | v.r(v.am[4]),
        )
        out = _try(g, v, sets, "certify_wheelfree_c5_case", {"case": "spread-hinge", "orientation": perm}, caps)
        if out:
            return out
    raise BugTrapError("certify_wheelfree_c5_case", "no hinge orientation certified the spread case", {"structure": s.to_json()})


def _crossing_data(g: Graph, v: _View) -> Optional[dict]:
    """The unique linked spoke-clique pair across indices 0 and 2, with the
    ring cliques it pins; None when the orientation shows no crossing."""
    cross = [
        (u, t)
        for u in bits(v.xm[0])
        for t in bits(g.adj[u] & v.xm[2])
    ]
    if not cross:
        return None
    u, t = min(cross)
    q0 = next(c for c in v.x_clique_list(0) if c >> u & 1)
    q2 = next(c for c in v.x_clique_list(2) if c >> t & 1)
    if not is_complete_sets(g, q0, q2):
        return None
    a0s = _unique_star(g, q2, v.am[0])
    a2s = _unique_star(g, q0, v.am[2])
    if a0s is None or a2s is None:
        return None
    if not (is_complete_sets(g, v.xm[0], a2s) and is_complete_sets(g, v.xm[2], a0s)):
        return None
    return {"q0": q0, "q2": q2, "a0s": a0s, "a2s": a2s}


def _unique_star(g: Graph, src: int, part: int) -> Optional[int]:
    from .case_facts import star_clique

    return star_clique(g, part, src)


def _certify_x_crossing(g: Graph, s: C5Structure, w: int, caps: ExactCaps) -> AtomOutcome:
    stage = "certify_wheelfree_c5_case"
    for perm, v in _oriented_views(g, s, w):
        if v.xm[1]:
            continue
        data = _crossing_data(g, v)
        if data is None:
            continue
        q0, q2, a0s, a2s = data["q0"], data["q2"], data["a0s"], data["a2s"]
        ws = {"case": "crossing", "orientation": perm, "q0": sorted(bits(q0)), "q2": sorted(bits(q2))}

        if not v.tm:
            viol = any(
                not is_complete_sets(g, q2, d5) and not _anticomplete(g, q2, d5)
                for d5 in v.a_clique_list(4)
            )
            if viol:
                ragged_ok = (
                    not (v.xm[0] & ~q0)
                    and not v.xm[4]
                    and _anticomplete(g, v.xm[0], v.xm[3])
                )
                if ragged_ok:
                    sets = (
                        v.r(v.am[4]) | v.r(v.xm[0]) | v.r(v.xm[3]),
                        v.r(v.am[1]) | v.r(v.am[3]) | v.r(v.xm[2]),
                        v.r(v.am[0]) | v.r(v.am[2]),
                    )
                    out = _try(g, v, sets, stage, {**ws, "branch": "ragged-far-clique"}, caps)
                    if out:
                        return out
                continue  # otherwise the mirrored orientation presents the facts
            d2_hit = any(
                a0s.bit_count() + d.bit_count() == w or a2s.bit_count() + d.bit_count() == w
                for d in v.a_clique_list(1)
            )
            if d2_hit and any(a0s.bit_count() + d.bit_count() == w for d in v.a_clique_list(1)):
                sets = (
                    v.r(v.am[1]) | v.r(v.xm[0] & ~q0) | v.r(v.xm[2]),
                    v.r(v.am[2]) | v.r(v.am[4]) | v.r(v.xm[3]),
                    v.r(v.am[0]) | v.r(v.am[3]) | v.r(v.xm[4]),
                )
                out = _try(g, v, sets, stage, {**ws, "branch": "middle-peak"}, caps)
                if out:
                    return out
                continue
            if d2_hit:
                continue  # mirrored orientation will present the middle peak on its side
            fam0 = [
                (xk, ak)
                for xk in v.x_clique_list(0)
                for ak in v.a_clique_list(0)
                if xk.bit_count() + ak.bit_count() == w
            ]
            if any(ak == a0s for _, ak in fam0):
                continue  # pinned-side peak: mirrored orientation applies
            d5_top = any(d.bit_count() + a0s.bit_count() == w for d in v.a_clique_list(4))
            if not d5_top:
                sets = (
                    v.r(v.am[0] & ~a0s) | v.r(v.am[3]) | v.r(q2) | v.r(v.xm[4]),
                    v.r(v.am[1]) | v.r(v.xm[0]) | v.r(v.xm[2] & ~q2),
                    v.r(v.am[2]) | v.r(v.am[4]) | v.r(v.xm[3]),
                )
                out = _try(g, v, sets, stage, {**ws, "branch": "free-pinned-clique"}, caps)
                if out:
                    return out
                continue
            sets = (
                v.r(v.am[1]) | v.r(v.am[3]) | v.r(v.xm[2]),
                v.r(v.am[2]) | v.r(v.am[4]) | v.r(v.xm[3]),
                v.r(v.am[0]) | v.r(v.xm[4]),
            )
            out = _try(g, v, sets, stage, {**ws, "branch": "anchored-far-peak"}, caps)
            if out:
                return out
            continue

        # tail present
        if v.xm[3] and v.xm[4]:
            t1 = t2 = 0
            ok = True
            for tc in v.t_cliques:
                near = v.xm[0] | v.xm[3]
                far = v.xm[2] | v.xm[4]
                if is_complete_sets(g, tc, near) and _anticomplete(g, tc, far):
                    t1 |= tc
                elif is_complete_sets(g, tc, far) and _anticomplete(g, tc, near):
                    t2 |= tc
                else:
                    ok = False
                    break
            if not ok:
                continue
            if not v.wflags[4]:
                sets = (
                    v.r(v.am[4]) | v.r(v.xm[0]) | v.r(v.xm[3]) | (v.L & t2),
                    v.r(v.am[1]) | v.r(v.am[3]) | v.r(v.xm[2]) | (v.L & t1),
                    v.r(v.am[0]) | v.r(v.am[2]) | (v.Lp & t2),
                )
                out = _try(g, v, sets, stage, {**ws, "branch": "tail-two-families-far"}, caps)
                if out:
                    return out
            if not v.wflags[3]:
                sets = (
                    v.r(v.am[3]) | v.r(v.xm[2]) | v.r(v.xm[4]) | (v.L & t1),
                    v.r(v.am[1]) | v.r(v.am[4]) | v.r(v.xm[0]) | (v.L & t2),
                    v.r(v.am[0]) | v.r(v.am[2]) | (v.Lp & t1),
                )
                out = _try(g, v, sets, stage, {**ws, "branch": "tail-two-families-near"}, caps)
                if out:
                    return out
            continue
        if v.xm[4]:
            continue  # mirrored orientation has the empty far spoke
        if v.xm[3] and not _anticomplete(g, v.xm[0], v.xm[3]):
            # second crossing into index 3; tail must ride the index-2 clique
            if not (is_clique_mask(g, v.am[0]) and is_clique_mask(g, v.xm[2]) and is_clique_mask(g, v.xm[3])):
                continue
            if not is_complete_sets(g, v.tm, v.xm[2]) or not _anticomplete(g, v.tm, v.xm[3]):
                continue  # mirrored through the base index fixes the roles
            sets = (
                v.r(v.am[1]) | v.r(v.am[4]) | v.r(v.xm[0]),
                v.r(v.am[3]) | v.r(v.xm[2]),
                v.r(v.am[0]) | v.r(v.am[2]) | v.r(v.tm),
            )
            out = _try(g, v, sets, stage, {**ws, "branch": "tail-double-crossing"}, caps)
            if out:
                return out
            continue
        for tc in v.t_cliques:
            if not (is_complete_sets(g, tc, q0) or is_complete_sets(g, tc, q2)):
                break
        else:
            sets = (
                v.r(v.am[4]) | v.r(v.xm[0]) | v.r(v.xm[3]),
                v.r(v.am[1]) | v.r(v.am[3]) | v.r(v.xm[2]),
                v.r(v.am[0]) | v.r(v.am[2]) | v.r(v.tm),
            )
            out = _try(g, v, sets, stage, {**ws, "branch": "tail-on-crossing"}, caps)
            if out:
                return out
    raise BugTrapError(stage, "no orientation certified the crossing case", {"structure": s.to_json()})


def _certify_y_only(g: Graph, s: C5Structure, w: int, caps: ExactCaps) -> AtomOutcome:
    stage = "certify_wheelfree_c5_case"
    v0 = _View(g, s, w)
    if v0.tm:
        raise BugTrapError(stage, "tail present without spokes", {"structure": s.to_json()})
    linked = any(
        v0.ym[i] and v0.ym[_m5(i + 2)] and not _anticomplete(g, v0.ym[i], v0.ym[_m5(i + 2)])
        for i in range(5)
    )
    uncovered = any(
        v0.ym[i]
        and v0.ym[_m5(i + 2)]
        and not is_complete_sets(g, v0.ym[i], v0.am[_m5(i + 1)])
        and not is_complete_sets(g, v0.ym[_m5(i + 2)], v0.am[_m5(i + 1)])
        for i in range(5)
    )
    if linked or uncovered:
        if not all(is_clique_mask(g, v0.am[i]) for i in range(5)):
            raise BugTrapError(stage, "expected one-clique ring parts before the no-triple path", {"structure": s.to_json()})
        out = certify_3k1_case(g, caps)
        out.workspace["case"] = "y-linked-no-triple"
        return out
    aa = [script_a(g, s, m) for m in range(5)]
    sets = (aa[0] | aa[2], aa[1] | aa[3], aa[4])
    out = _try(g, v0, sets, stage, {"case": "y-fan"}, caps)
    if out:
        return out
    raise BugTrapError(stage, "y-fan construction failed", {"structure": s.to_json()})


def _certify_mixed(g: Graph, s: C5Structure, w: int, caps: ExactCaps) -> AtomOutcome:
    stage = "certify_wheelfree_c5_case"
    v0 = _View(g, s, w)
    case1 = all(not v0.xm[i] or not v0.ym[i] for i in range(5))
    if case1:
        for perm, v in _oriented_views(g, s, w):
            if not v.ym[1] or not v.xm[0]:
                continue
            if v.xm[1] or v.xm[3] or v.xm[4] or v.ym[0] or v.ym[2] or v.ym[3]:
                continue
            if not v.tm:
                sets = (
                    v.r(v.am[1]) | v.r(v.am[4]) | v.r(v.xm[0]),
                    v.r(v.am[0]) | script_a(g, v.s, 2),
                    script_a(g, v.s, 3) | v.r(v.xm[2]),
                )
                out = _try(g, v, sets, stage, {"case": "split-roles", "orientation": perm}, caps)
                if out:
                    return out
                continue
            if v.ym[4] or not v.a_clique(4):
                continue
            b3 = b_clique(g, v.s, 3)
            if b3 is None:
                continue
            sets = (
                v.r(v.am[1]) | v.r(v.am[4]) | v.r(v.xm[0]),
                v.r(v.am[0]) | script_a(g, v.s, 2) | v.r(v.tm),
                v.r(v.am[3] & ~b3) | v.r(v.xm[2]) | v.r(v.ym[1]),
            )
            out = _try(g, v, sets, stage, {"case": "split-roles-tail", "orientation": perm}, caps)
            if out:
                return out
        raise BugTrapError(stage, "no orientation certified the split-roles case", {"structure": s.to_json()})

    for perm, v in _oriented_views(g, s, w):
        if not (v.xm[0] and v.ym[0]):
            continue
        if v.xm[2] or v.xm[3] or v.ym[2] or v.ym[3]:
            continue
        if not v.xm[1] and not v.xm[4]:
            sets = (
                script_a(g, v.s, 1) | script_a(g, v.s, 4) | v.r(v.xm[0]),
                script_a(g, v.s, 0) | script_a(g, v.s, 3) | v.L,
                script_a(g, v.s, 2) | v.Lp,
            )
            out = _try(g, v, sets, stage, {"case": "stacked-roles", "orientation": perm}, caps)
            if out:
                return out
            continue
        if not v.xm[4]:
            continue  # mirrored orientation puts the live flank at index 4
        sets = (
            script_a(g, v.s, 1) | script_a(g, v.s, 4) | v.r(v.xm[0]) | v.L,
            v.r(v.am[0]) | v.r(v.am[3]) | v.r(v.xm[4]),
            v.r(v.am[2]) | v.Lp,
        )
        out = _try(g, v, sets, stage, {"case": "stacked-roles-flank", "orientation": perm}, caps)
        if out:
            return out
    raise BugTrapError(stage, "no orientation certified the stacked-roles case", {"structure": s.to_json()})
