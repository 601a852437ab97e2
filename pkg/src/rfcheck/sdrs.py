"""SDRS data model: labels, the relation inventory, complex segments and
elementary graph queries.

Relations and segments refer to constituents by label id.  An ``Sdrs`` is
immutable once built; derived indexes are computed lazily and cached.
"""

from __future__ import annotations

import enum
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class SdrsError(ValueError):
    """Base class for malformed discourse structures."""


class DuplicateId(SdrsError):
    pass


class DanglingEndpoint(SdrsError):
    pass


class MembershipCycle(SdrsError):
    """Raised when membership plus subordination links form a cycle."""


class EmptyDocument(SdrsError):
    pass


class EmptySegment(SdrsError):
    pass


class SelfRelation(SdrsError):
    pass


class UnknownLabel(SdrsError):
    pass


class UnknownRelationName(SdrsError):
    pass


class Kind(enum.Enum):
    EDU = "edu"
    COMPLEX = "complex"


class Category(enum.Enum):
    SUBORDINATING = "subordinating"
    COORDINATING = "coordinating"


class Origin(enum.Enum):
    ANNOTATED = "annotated"
    INFERRED_CONTINUATION = "inferred-continuation"
    INFERRED_EXPANSION = "inferred-expansion"
    INFERRED_FACTORING = "inferred-factoring"


@dataclass(frozen=True)
class Label:
    id: str
    kind: Kind
    order_index: int | None = None

    @property
    def is_edu(self) -> bool:
        return self.kind is Kind.EDU


@dataclass(frozen=True)
class RelationType:
    name: str
    category: Category
    structural: bool = False

    @property
    def subordinating(self) -> bool:
        return self.category is Category.SUBORDINATING

    @property
    def coordinating(self) -> bool:
        return self.category is Category.COORDINATING


SUBORDINATING_NAMES = (
    "Elaboration",
    "EntityElaboration",
    "Comment",
    "Flashback",
    "Background",
    "Goal",
    "Explanation",
    "Attribution",
    "Frame",
)
COORDINATING_NAMES = (
    "Narration",
    "Contrast",
    "Result",
    "Parallel",
    "Continuation",
    "Alternation",
    "Conditional",
)
STRUCTURAL_NAMES = frozenset({"Parallel", "Contrast"})

RELATIONS: dict[str, RelationType] = {
    **{n: RelationType(n, Category.SUBORDINATING) for n in SUBORDINATING_NAMES},
    **{
        n: RelationType(n, Category.COORDINATING, n in STRUCTURAL_NAMES)
        for n in COORDINATING_NAMES
    },
}

# spellings seen in annotation guidelines; keys are normalized by _fold
_ALIASES = {
    "eelab": "EntityElaboration",
    "eelaboration": "EntityElaboration",
    "entityelab": "EntityElaboration",
    "commentary": "Comment",
    "cont": "Continuation",
    "elab": "Elaboration",
    "altern": "Alternation",
}


def _fold(name: str) -> str:
    return name.replace("-", "").replace("_", "").replace(" ", "").lower()


_BY_FOLDED = {_fold(n): n for n in RELATIONS}
_BY_FOLDED.update(_ALIASES)


def classify(rel_name: str) -> RelationType:
    """Look up a relation name (case and hyphenation insensitive)."""
    try:
        return RELATIONS[rel_name]
    except KeyError:
        pass
    canonical = _BY_FOLDED.get(_fold(rel_name))
    if canonical is None:
        raise UnknownRelationName(f"unknown relation name {rel_name!r}")
    return RELATIONS[canonical]


RelationKey = tuple[str, str, str]


@dataclass(frozen=True)
class RelationInstance:
    """``rel(source, target)``: source is the first argument (the attachment
    point in the annotation), target the attached constituent."""

    rel: RelationType
    source: str
    target: str
    origin: Origin = Origin.ANNOTATED
    # key of the annotated relation this edge was lifted from by expansion
    lifted_from: RelationKey | None = None

    @property
    def key(self) -> RelationKey:
        return (self.rel.name, self.source, self.target)

    @property
    def annotated(self) -> bool:
        return self.origin is Origin.ANNOTATED


def relation(name: str, source: str, target: str, origin: Origin = Origin.ANNOTATED) -> RelationInstance:
    return RelationInstance(classify(name), source, target, origin)


@dataclass(frozen=True)
class ComplexSegment:
    label: str
    members: tuple[str, ...]


@dataclass(frozen=True)
class Component:
    labels: frozenset[str]
    last: str


@dataclass(frozen=True)
class Sdrs:
    """The tuple <A, F, LAST>, with F given extensionally as relation edges
    plus segment membership.  Build with :func:`build_sdrs`."""

    labels: Mapping[str, Label]
    relations: tuple[RelationInstance, ...]
    segments: Mapping[str, ComplexSegment]
    last: str

    def __hash__(self) -> int:
        return hash((frozenset(self.labels), self.relations, self.last))

    # -- lookups --------------------------------------------------------

    def label(self, label_id: str) -> Label:
        try:
            return self.labels[label_id]
        except KeyError:
            raise UnknownLabel(f"unknown label {label_id!r}") from None

    def members(self, label_id: str) -> tuple[str, ...]:
        seg = self.segments.get(label_id)
        return seg.members if seg is not None else ()

    def is_complex(self, label_id: str) -> bool:
        return label_id in self.segments

    @cached_property
    def edus(self) -> tuple[str, ...]:
        """EDU ids in textual order."""
        es = [lab for lab in self.labels.values() if lab.is_edu]
        es.sort(key=lambda lab: lab.order_index)
        return tuple(lab.id for lab in es)

    @cached_property
    def relation_keys(self) -> frozenset[RelationKey]:
        return frozenset(r.key for r in self.relations)

    @cached_property
    def _containers(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = defaultdict(list)
        for seg in self.segments.values():
            for m in seg.members:
                out[m].append(seg.label)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _sub_sources(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = defaultdict(list)
        for r in self.relations:
            if r.rel.subordinating:
                out[r.target].append(r.source)
        return {k: tuple(v) for k, v in out.items()}

    def containers(self, label_id: str) -> tuple[str, ...]:
        """Segments that immediately contain ``label_id``."""
        return self._containers.get(label_id, ())

    def subordinating_sources(self, label_id: str) -> tuple[str, ...]:
        """Labels ``g`` with some subordinating ``R(g, label_id)``."""
        return self._sub_sources.get(label_id, ())

    @cached_property
    def _edu_sets(self) -> dict[str, frozenset[str]]:
        out: dict[str, frozenset[str]] = {}

        def visit(x: str) -> frozenset[str]:
            if x in out:
                return out[x]
            if self.labels[x].is_edu:
                res = frozenset((x,))
            else:
                res = frozenset().union(*(visit(m) for m in self.members(x)))
            out[x] = res
            return res

        for x in self.labels:
            visit(x)
        return out

    def edus_of(self, label_id: str) -> frozenset[str]:
        """EDUs transitively contained in a label (an EDU contains itself)."""
        self.label(label_id)
        return self._edu_sets[label_id]

    def first_position(self, label_id: str) -> int:
        return min(self.labels[e].order_index for e in self.edus_of(label_id))

    def last_position(self, label_id: str) -> int:
        return max(self.labels[e].order_index for e in self.edus_of(label_id))

    @cached_property
    def _ranks(self) -> dict[str, int]:
        out: dict[str, int] = {}

        def visit(x: str) -> int:
            if x not in out:
                ms = self.members(x)
                out[x] = 1 + max(visit(m) for m in ms) if ms else 0
            return out[x]

        for x in self.labels:
            visit(x)
        return out

    def rank(self, label_id: str) -> int:
        """0 for an EDU, 1 + highest member rank for a complex segment."""
        self.label(label_id)
        return self._ranks[label_id]

    def position_key(self, label_id: str) -> tuple[int, int, int, str]:
        """Introduction order: a constituent is in place once its last EDU is."""
        return (
            self.last_position(label_id),
            self.rank(label_id),
            self.first_position(label_id),
            label_id,
        )


def _member_sort_key(positions: Mapping[str, tuple[int, int]], x: str):
    first, last = positions[x]
    return (first, last, x)


def _check_acyclic(labels: Iterable[str], parents: Mapping[str, Iterable[str]]) -> None:
    # Kahn's algorithm over child -> parent edges
    indeg: dict[str, int] = {x: 0 for x in labels}
    children: dict[str, list[str]] = defaultdict(list)
    for child, ps in parents.items():
        for p in set(ps):
            indeg[p] += 1
            children[child].append(p)
    queue = deque(x for x, d in indeg.items() if d == 0)
    seen = 0
    while queue:
        x = queue.popleft()
        seen += 1
        for p in children[x]:
            indeg[p] -= 1
            if indeg[p] == 0:
                queue.append(p)
    if seen != len(indeg):
        stuck = sorted(x for x, d in indeg.items() if d > 0)
        raise MembershipCycle(f"membership/subordination cycle through {stuck}")


def build_sdrs(
    edus: Sequence[Label],
    relations: Iterable[RelationInstance] = (),
    segments: Iterable[ComplexSegment] = (),
) -> Sdrs:
    """Validate the parts and assemble an :class:`Sdrs`.

    LAST is the EDU with the highest ``order_index``.  Segment members are
    re-sorted by the position of their earliest EDU.  Relations with the
    same (type, source, target) are merged, an annotated instance winning
    over inferred ones.
    """
    if not edus:
        raise EmptyDocument("an SDRS needs at least one EDU")
    segments = list(segments)
    labels: dict[str, Label] = {}
    orders: set[int] = set()
    for lab in edus:
        if not lab.is_edu or lab.order_index is None or lab.order_index < 0:
            raise SdrsError(f"{lab.id!r} is not an EDU label with an order index")
        if lab.id in labels:
            raise DuplicateId(f"duplicate label id {lab.id!r}")
        if lab.order_index in orders:
            raise DuplicateId(f"duplicate EDU order index {lab.order_index}")
        orders.add(lab.order_index)
        labels[lab.id] = lab
    for seg in segments:
        if seg.label in labels:
            raise DuplicateId(f"duplicate label id {seg.label!r}")
        labels[seg.label] = Label(seg.label, Kind.COMPLEX)

    parents: dict[str, set[str]] = defaultdict(set)
    for seg in segments:
        if not seg.members:
            raise EmptySegment(f"segment {seg.label!r} has no members")
        if len(set(seg.members)) != len(seg.members):
            raise DuplicateId(f"segment {seg.label!r} lists a member twice")
        for m in seg.members:
            if m not in labels:
                raise DanglingEndpoint(f"segment {seg.label!r} member {m!r} is not declared")
            parents[m].add(seg.label)

    merged: dict[RelationKey, RelationInstance] = {}
    for r in relations:
        for end in (r.source, r.target):
            if end not in labels:
                raise DanglingEndpoint(f"{r.rel.name}({r.source}, {r.target}): unknown label {end!r}")
        if r.source == r.target:
            raise SelfRelation(f"{r.rel.name}({r.source}, {r.target}) relates a label to itself")
        prev = merged.get(r.key)
        if prev is None or (r.annotated and not prev.annotated):
            merged[r.key] = r
        if r.rel.subordinating:
            parents[r.target].add(r.source)

    _check_acyclic(labels, parents)

    # member order needs EDU spans, which need an acyclic membership graph
    spans: dict[str, tuple[int, int]] = {}
    by_label = {s.label: s for s in segments}

    def span(x: str) -> tuple[int, int]:
        if x not in spans:
            lab = labels[x]
            if lab.is_edu:
                spans[x] = (lab.order_index, lab.order_index)
            else:
                ss = [span(m) for m in by_label[x].members]
                spans[x] = (min(s[0] for s in ss), max(s[1] for s in ss))
        return spans[x]

    ordered = {}
    for seg in segments:
        for m in seg.members:
            span(m)
        members = tuple(sorted(seg.members, key=lambda m: _member_sort_key(spans, m)))
        ordered[seg.label] = ComplexSegment(seg.label, members)

    last = max(edus, key=lambda lab: lab.order_index).id
    rels = tuple(sorted(merged.values(), key=lambda r: r.key))
    return Sdrs(
        labels=dict(sorted(labels.items())),
        relations=rels,
        segments=dict(sorted(ordered.items())),
        last=last,
    )


def i_outscopes(g: Sdrs, gamma: str, alpha: str) -> bool:
    """True iff ``gamma`` is a complex segment with ``alpha`` as a member."""
    g.label(gamma)
    g.label(alpha)
    return alpha in g.members(gamma)


def components(g: Sdrs) -> list[Component]:
    """Weakly connected components over relation and membership links.

    The component holding ``g.last`` comes first; the rest follow by
    descending position of their own last EDU.
    """
    adj: dict[str, set[str]] = defaultdict(set)
    for r in g.relations:
        adj[r.source].add(r.target)
        adj[r.target].add(r.source)
    for seg in g.segments.values():
        for m in seg.members:
            adj[seg.label].add(m)
            adj[m].add(seg.label)
    seen: set[str] = set()
    out: list[Component] = []
    for start in g.labels:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        edus = [x for x in comp if g.labels[x].is_edu]
        last = max(edus, key=lambda x: g.labels[x].order_index)
        out.append(Component(frozenset(comp), last))
    out.sort(key=lambda c: -g.labels[c.last].order_index)
    return out
