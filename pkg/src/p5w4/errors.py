"""Exception types shared across the package.

Exit-code mapping for the CLI lives in cli.py; library code raises these
directly and never exits the process.
"""

from __future__ import annotations

from typing import Any


class P5W4Error(Exception):
    """Base class for all package errors."""


class GraphConstructionError(P5W4Error):
    """Invalid graph input: self-loop, duplicate edge, or vertex cap exceeded."""


class PreconditionError(P5W4Error):
    """An operation was called outside its stated precondition."""


class ResourceCapError(P5W4Error):
    """An exact search was requested beyond its configured size cap.

    Raised instead of silently returning an approximate answer.
    """

    def __init__(self, operation: str, n: int, cap: int):
        super().__init__(f"{operation}: graph has {n} vertices, exact-search cap is {cap}")
        self.operation = operation
        self.n = n
        self.cap = cap


class MembershipError(P5W4Error):
    """Input graph is not (P5, 4-wheel)-free."""

    def __init__(self, witness_name: str, witness: tuple[int, ...]):
        super().__init__(f"not in class: induced {witness_name} on vertices {witness}")
        self.witness_name = witness_name
        self.witness = witness


class DisconnectedInputError(P5W4Error):
    """Operation requires a connected graph."""


class UnclassifiableVertexError(P5W4Error):
    """A vertex fits no bucket of the five-ring classification.

    On a connected in-class atom this must never fire; it signals either a
    class-membership violation upstream or a partition bug.
    """

    def __init__(self, vertex: int, neighbor_pattern: tuple[int, ...]):
        super().__init__(
            f"vertex {vertex} fits no classification bucket "
            f"(has neighbors in ring parts {neighbor_pattern})"
        )
        self.vertex = vertex
        self.neighbor_pattern = neighbor_pattern


class BugTrapError(P5W4Error):
    """A certified construction failed its own validation.

    These are the bugs this repository exists to find: the error carries the
    full workspace state (JSON-serializable) for triage.
    """

    def __init__(self, stage: str, detail: str, workspace: dict[str, Any] | None = None):
        super().__init__(f"bug trap in {stage}: {detail}")
        self.stage = stage
        self.detail = detail
        self.workspace = workspace or {}
