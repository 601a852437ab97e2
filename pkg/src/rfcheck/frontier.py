"""Right frontier computation.

A label is on the frontier when it is LAST or dominates LAST, domination
being the transitive closure of "is a segment containing" and "is the first
argument of a subordinating relation to".  Complex segments reached this way
also open up the frontier of their own member sub-structure.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .sdrs import RelationType, Sdrs, components


class Provenance(enum.Enum):
    LAST = "last"
    OUTSCOPES = "outscopes"
    SUBORDINATING_PARENT = "subordinating-parent"
    TRANSITIVE_CLOSURE = "transitive-closure"
    OPEN_CONSTITUENT = "open-constituent"
    DISJOINT_COMPONENT = "disjoint-component"


@dataclass(frozen=True)
class FrontierNode:
    label: str
    provenance: Provenance
    depth: int
    component: int = 0
    # reached only through the open-constituent recursion
    open_constituent: bool = False


@dataclass(frozen=True)
class FrontierSet:
    entries: tuple[FrontierNode, ...]

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.entries)

    def __iter__(self) -> Iterator[str]:
        return iter(self.nodes)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, label: object) -> bool:
        return any(e.label == label for e in self.entries)

    def entry(self, label: str) -> FrontierNode | None:
        for e in self.entries:
            if e.label == label:
                return e
        return None

    def as_set(self, open_constituents: bool = True) -> frozenset[str]:
        return frozenset(
            e.label for e in self.entries if open_constituents or not e.open_constituent
        )


def dominance_parents(g: Sdrs, alpha: str) -> frozenset[str]:
    """Labels ``gamma`` with ``alpha < gamma``: segments containing alpha and
    first arguments of subordinating relations whose second argument is alpha."""
    g.label(alpha)
    return frozenset(g.containers(alpha)) | frozenset(g.subordinating_sources(alpha))


def _sub_last(g: Sdrs, members: tuple[str, ...]) -> str:
    # latest text wins; on a tie prefer the lower-ranked (inner) constituent
    return max(members, key=lambda m: (g.last_position(m), -g.rank(m), m))


class _Walker:
    """Memoizes the frontier of each segment's member sub-structure."""

    def __init__(self, g: Sdrs):
        self.g = g
        self.memo: dict[str, list[tuple[str, int]]] = {}

    def closure(self, start: str, scope: frozenset[str] | None) -> dict[str, tuple[int, Provenance]]:
        g = self.g
        found = {start: (0, Provenance.LAST)}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            depth = found[x][0] + 1
            via = [(p, Provenance.OUTSCOPES) for p in g.containers(x)]
            via += [(p, Provenance.SUBORDINATING_PARENT) for p in g.subordinating_sources(x)]
            for p, prov in via:
                if p in found or (scope is not None and p not in scope):
                    continue
                if depth > 1:
                    prov = Provenance.TRANSITIVE_CLOSURE
                found[p] = (depth, prov)
                queue.append(p)
        return found

    def open_part(self, gamma: str) -> list[tuple[str, int]]:
        """Frontier of the sub-structure induced by gamma's members, as
        (label, depth below gamma) pairs."""
        if gamma in self.memo:
            return self.memo[gamma]
        members = self.g.members(gamma)
        scope = frozenset(members)
        inner = self.rf(_sub_last(self.g, members), scope)
        out = [(x, d + 1) for x, (d, _, _) in inner.items()]
        self.memo[gamma] = out
        return out

    def rf(self, start: str, scope: frozenset[str] | None) -> dict[str, tuple[int, Provenance, bool]]:
        found = {x: (d, prov, False) for x, (d, prov) in self.closure(start, scope).items()}
        pending = [x for x in found if self.g.is_complex(x)]
        while pending:
            gamma = pending.pop()
            base = found[gamma][0]
            for x, d in self.open_part(gamma):
                depth = base + d
                if x not in found:
                    found[x] = (depth, Provenance.OPEN_CONSTITUENT, True)
                    if self.g.is_complex(x):
                        pending.append(x)
                elif found[x][2] and depth < found[x][0]:
                    found[x] = (depth, Provenance.OPEN_CONSTITUENT, True)
        return found


def _ordered(g: Sdrs, found: dict[str, tuple[int, Provenance, bool]], component: int = 0) -> list[FrontierNode]:
    nodes = [
        FrontierNode(x, prov, depth, component, is_open)
        for x, (depth, prov, is_open) in found.items()
    ]
    nodes.sort(key=lambda n: (n.depth, -g.last_position(n.label), -g.rank(n.label), n.label))
    return nodes


def right_frontier(g: Sdrs, start: str) -> FrontierSet:
    """Frontier seen from ``start`` (normally LAST), nearest nodes first."""
    g.label(start)
    found = _Walker(g).rf(start, None)
    return FrontierSet(tuple(_ordered(g, found)))


def right_frontier_union(g: Sdrs) -> FrontierSet:
    """Union of the frontiers of each weakly connected component, each taken
    from that component's own last EDU."""
    walker = _Walker(g)
    entries: list[FrontierNode] = []
    seen: set[str] = set()
    for i, comp in enumerate(components(g)):
        found = walker.rf(comp.last, None)
        for node in _ordered(g, found, i):
            if node.label in seen:
                continue
            seen.add(node.label)
            if i > 0 and not node.open_constituent:
                node = FrontierNode(node.label, Provenance.DISJOINT_COMPONENT, node.depth, i, False)
            entries.append(node)
    return FrontierSet(tuple(entries))


def available_attachment_points(
    g: Sdrs,
    incoming: RelationType,
    coordinating_open_constituents: bool = False,
    frontier: FrontierSet | None = None,
) -> frozenset[str]:
    """Labels a new constituent may attach to with ``incoming``.

    Parallel and Contrast are exempt and see every label.  Open constituents
    of frontier segments are offered to subordinating relations only, unless
    ``coordinating_open_constituents`` is set.
    """
    if incoming.structural:
        return frozenset(g.labels)
    if frontier is None:
        frontier = right_frontier_union(g)
    if incoming.subordinating or coordinating_open_constituents:
        return frontier.as_set(open_constituents=True)
    return frontier.as_set(open_constituents=False)
