"""Normalization of annotator graphs.

Three rewrites add the material annotators tend to leave implicit:

* coherence: members of a complex segment that are not connected inside the
  segment get chained with Continuation;
* expansion: ``R(a, b)`` followed by a Continuation chain from ``b`` means
  ``a`` is really related to the segment grouping the chain;
* factoring: some subordinating relations to a Continuation-linked segment
  distribute over its members.

Every function returns a new ``Sdrs``; inputs are never modified.
"""

from __future__ import annotations

from collections import defaultdict, deque
from typing import Iterable

from .sdrs import (
    ComplexSegment,
    Origin,
    RelationInstance,
    Sdrs,
    SdrsError,
    build_sdrs,
    classify,
)

CONTINUATION = classify("Continuation")
DISTRIBUTIVE = frozenset({"Elaboration", "EntityElaboration", "Frame", "Attribution", "Comment"})


class NormalizationDiverged(RuntimeError):
    """The rewrite loop did not reach a fixpoint within its iteration cap."""


def _rebuild(g: Sdrs, relations: Iterable[RelationInstance], segments: Iterable[ComplexSegment]) -> Sdrs:
    edus = [g.labels[e] for e in g.edus]
    return build_sdrs(edus, relations, segments)


def _connected(x: str, y: str, nodes: frozenset[str], adj: dict[str, set[str]]) -> bool:
    seen = {x}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if u == y:
            return True
        for v in adj[u]:
            if v in nodes and v not in seen:
                seen.add(v)
                queue.append(v)
    return False


def ensure_continuation_coherence(g: Sdrs) -> Sdrs:
    """Add ``Continuation(x, y)`` between textually adjacent members of a
    segment when nothing inside the segment connects them yet."""
    adj: dict[str, set[str]] = defaultdict(set)
    for r in g.relations:
        adj[r.source].add(r.target)
        adj[r.target].add(r.source)
    for seg in g.segments.values():
        for m in seg.members:
            adj[seg.label].add(m)
            adj[m].add(seg.label)

    added: list[RelationInstance] = []
    for seg in g.segments.values():
        nodes = frozenset(seg.members)
        for x, y in zip(seg.members, seg.members[1:]):
            if _connected(x, y, nodes, adj):
                continue
            added.append(RelationInstance(CONTINUATION, x, y, Origin.INFERRED_CONTINUATION))
            adj[x].add(y)
            adj[y].add(x)
    if not added:
        return g
    return _rebuild(g, g.relations + tuple(added), g.segments.values())


def _continuation_chain(head: str, forward: dict[str, list[str]]) -> frozenset[str]:
    chain = {head}
    queue = deque([head])
    while queue:
        x = queue.popleft()
        for y in forward.get(x, ()):
            if y not in chain:
                chain.add(y)
                queue.append(y)
    return frozenset(chain)


def _fresh_id(g: Sdrs, members: tuple[str, ...], taken: set[str]) -> str:
    base = "[" + ",".join(members) + "]"
    name = base
    while name in g.labels or name in taken:
        name += "'"
    return name


def expand_continuations(g: Sdrs) -> Sdrs:
    """Group Continuation chains into segments and lift the relation that
    attaches the chain head onto the new segment.

    A chain is everything reachable from the head along Continuation edges
    (source to target).  Chains already contained in some segment are left
    alone, as are liftings that would create a dominance cycle.
    """
    forward: dict[str, list[str]] = defaultdict(list)
    for r in g.relations:
        if r.rel.name == "Continuation":
            forward[r.source].append(r.target)
    if not forward:
        return g

    covered = [frozenset(seg.members) for seg in g.segments.values()]
    relations = list(g.relations)
    segments = list(g.segments.values())
    created: dict[frozenset[str], str] = {}
    changed = False

    for r in g.relations:
        if r.rel.name == "Continuation" or r.target not in forward:
            continue
        chain = _continuation_chain(r.target, forward)
        if len(chain) < 2 or r.source in chain:
            continue
        if chain not in created and any(chain <= c for c in covered):
            continue
        if chain not in created:
            members = tuple(sorted(chain, key=lambda x: (g.first_position(x), g.last_position(x), x)))
            seg_id = _fresh_id(g, members, set(created.values()))
            trial_segments = segments + [ComplexSegment(seg_id, members)]
        else:
            seg_id = created[chain]
            trial_segments = segments
        lifted = RelationInstance(
            r.rel,
            r.source,
            seg_id,
            Origin.INFERRED_EXPANSION,
            r.lifted_from if r.lifted_from is not None else (r.key if r.annotated else None),
        )
        trial_relations = [x for x in relations if x is not r] + [lifted]
        try:
            _rebuild(g, trial_relations, trial_segments)
        except SdrsError:
            continue
        relations, segments = trial_relations, trial_segments
        created.setdefault(chain, seg_id)
        changed = True

    if not changed:
        return g
    return _rebuild(g, relations, segments)


def _continuation_linked(g: Sdrs, members: tuple[str, ...]) -> bool:
    if len(members) < 2:
        return False
    nodes = frozenset(members)
    adj: dict[str, set[str]] = defaultdict(set)
    for r in g.relations:
        if r.rel.name == "Continuation" and r.source in nodes and r.target in nodes:
            adj[r.source].add(r.target)
            adj[r.target].add(r.source)
    first = members[0]
    return all(_connected(first, m, nodes, adj) for m in members[1:])


def factor_distributive(g: Sdrs) -> Sdrs:
    """For ``R(a, seg)`` with R distributive and seg's members linked by
    Continuation, add ``R(a, m)`` for each member ``m`` (one level only)."""
    linked = {s: _continuation_linked(g, seg.members) for s, seg in g.segments.items()}
    keys = set(g.relation_keys)
    added: list[RelationInstance] = []
    for r in g.relations:
        if r.rel.name not in DISTRIBUTIVE or not linked.get(r.target):
            continue
        for m in g.members(r.target):
            new = RelationInstance(r.rel, r.source, m, Origin.INFERRED_FACTORING)
            if m == r.source or new.key in keys:
                continue
            keys.add(new.key)
            added.append(new)
    if not added:
        return g
    return _rebuild(g, g.relations + tuple(added), g.segments.values())


def normalize(g: Sdrs, max_rounds: int | None = None) -> Sdrs:
    """Apply coherence, expansion and factoring until nothing changes."""
    if max_rounds is None:
        max_rounds = 2 * len(g.labels)
    for _ in range(max(max_rounds, 1)):
        nxt = factor_distributive(expand_continuations(ensure_continuation_coherence(g)))
        if nxt == g:
            return g
        g = nxt
    raise NormalizationDiverged(f"no fixpoint after {max_rounds} rounds")

