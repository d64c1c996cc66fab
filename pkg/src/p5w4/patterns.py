"""Canonical pattern graphs for induced-subgraph detection.

Fixed patterns carry an explicit realization whose vertex order defines the
embedding order reported by ``detect.find_induced``.  Odd holes and odd
antiholes are parametric families dispatched by length.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import Graph, complement, cycle_graph, empty_graph, path_graph, wheel_graph


@dataclass(frozen=True)
class Pattern:
    """A named induced-subgraph pattern.

    ``kind`` is ``fixed`` (with a concrete realization), ``odd_hole`` or
    ``odd_antihole`` (families of all odd chordless cycles / their
    complements with length >= ``min_len``).
    """

    name: str
    kind: str = "fixed"
    graph: Graph | None = None
    min_len: int = 5


def _two_k2() -> Graph:
    return Graph(4, [(0, 1), (2, 3)])


P3 = Pattern("P3", graph=path_graph(3))
P4 = Pattern("P4", graph=path_graph(4))
P5 = Pattern("P5", graph=path_graph(5))
C4 = Pattern("C4", graph=cycle_graph(4))
C5 = Pattern("C5", graph=cycle_graph(5))
C6 = Pattern("C6", graph=cycle_graph(6))
C7 = Pattern("C7", graph=cycle_graph(7))
TWO_K2 = Pattern("2K2", graph=_two_k2())
THREE_K1 = Pattern("3K1", graph=empty_graph(3))
FOUR_WHEEL = Pattern("W4", graph=wheel_graph(4))
FIVE_WHEEL = Pattern("W5", graph=wheel_graph(5))
C7_COMPLEMENT = Pattern("C7c", graph=complement(cycle_graph(7)))


def k_wheel(k: int) -> Pattern:
    return Pattern(f"W{k}", graph=wheel_graph(k))


def odd_hole(min_len: int = 5) -> Pattern:
    return Pattern(f"odd-hole>={min_len}", kind="odd_hole", min_len=min_len)


def odd_antihole(min_len: int = 5) -> Pattern:
    return Pattern(f"odd-antihole>={min_len}", kind="odd_antihole", min_len=min_len)


_FIXED = {
    p.name: p
    for p in (P3, P4, P5, C4, C5, C6, C7, TWO_K2, THREE_K1, FOUR_WHEEL, FIVE_WHEEL, C7_COMPLEMENT)
}


def by_name(name: str) -> Pattern:
    """Look up a pattern by CLI name (``P5``, ``W4``, ``Wk``, ``odd-hole``, ...)."""
    if name in _FIXED:
        return _FIXED[name]
    m = re.fullmatch(r"W(\d+)", name)
    if m:
        return k_wheel(int(m.group(1)))
    m = re.fullmatch(r"odd-hole(?:>=(\d+))?", name)
    if m:
        return odd_hole(int(m.group(1) or 5))
    m = re.fullmatch(r"odd-antihole(?:>=(\d+))?", name)
    if m:
        return odd_antihole(int(m.group(1) or 5))
    raise KeyError(f"unknown pattern {name!r}")


def all_fixed_patterns() -> list[Pattern]:
    return list(_FIXED.values())
