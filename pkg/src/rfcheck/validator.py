"""Incremental replay of annotated documents against the right frontier.

Every annotated relation is one attachment decision.  The constituent that
comes later in the text is the newly introduced one (the subject); the
other endpoint is the attachment point, which has to be available in the
structure built from the text preceding the subject.  A complex segment is
judged once complete, against the structure preceding its first EDU.
"""

from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .closure import normalize as normalize_sdrs
from .corpus import Document
from .frontier import FrontierSet, Provenance, available_attachment_points, right_frontier_union
from .sdrs import ComplexSegment, RelationInstance, RelationKey, Sdrs, build_sdrs, components


class IndexOutOfRange(IndexError):
    pass


class EmptyInput(ValueError):
    pass


class Status(enum.Enum):
    COMPLIANT = "compliant"
    VIOLATION = "violation"
    POSTPONED_COMPLIANT = "postponed-resolved-compliant"
    POSTPONED_VIOLATION = "postponed-resolved-violation"
    EXEMPT = "exempt"

    @property
    def compliant(self) -> bool:
        return self in (Status.COMPLIANT, Status.POSTPONED_COMPLIANT)

    @property
    def violation(self) -> bool:
        return self in (Status.VIOLATION, Status.POSTPONED_VIOLATION)


@dataclass(frozen=True)
class ReplayConfig:
    normalize: bool = True
    coordinating_open_constituents: bool = False


@dataclass(frozen=True)
class AttachmentVerdict:
    doc_id: str
    subject: str
    point: str | None
    decision: RelationInstance | None
    status: Status
    via: Provenance | None = None
    # 1-based index of the EDU completing the subject
    step: int = 0
    # number of EDUs in the structure the decision was checked against
    context: int = 0
    distance: int | None = None
    nonadjacent: bool | None = None
    # the annotated attached constituent (second argument) and its EDUs
    attached: str | None = None
    attached_edus: tuple[str, ...] = ()
    rescued_by_open_constituent: bool = False
    note: str = ""

    @property
    def postponed(self) -> bool:
        return self.status in (Status.POSTPONED_COMPLIANT, Status.POSTPONED_VIOLATION)

    @property
    def is_decision(self) -> bool:
        return self.decision is not None


def _reduced_segments(g: Sdrs, present_edus: frozenset[str]) -> list[ComplexSegment]:
    present: dict[str, tuple[str, ...]] = {}

    def visit(x: str) -> bool:
        if g.labels[x].is_edu:
            return x in present_edus
        if x not in present:
            present[x] = tuple(m for m in g.members(x) if visit(m))
        return bool(present[x])

    for s in g.segments:
        visit(s)
    return [ComplexSegment(s, ms) for s, ms in present.items() if ms]


def _prefix(doc: Document, i: int, normalize: bool, exclude: frozenset[RelationKey] = frozenset()) -> Sdrs:
    if not 1 <= i <= len(doc.edus):
        raise IndexOutOfRange(f"document {doc.id!r} has {len(doc.edus)} EDUs, asked for prefix {i}")
    full = doc.sdrs
    edus = [full.labels[e] for e in full.edus[:i]]
    segments = _reduced_segments(full, frozenset(lab.id for lab in edus))
    present = {lab.id for lab in edus} | {s.label for s in segments}
    relations = [
        r for r in full.relations
        if r.source in present and r.target in present and r.key not in exclude
    ]
    g = build_sdrs(edus, relations, segments)
    return normalize_sdrs(g) if normalize else g


def prefix_graph(doc: Document, i: int, normalize: bool = True) -> Sdrs:
    """Structure over the first ``i`` EDUs.

    Segments keep only their members present in the prefix (and vanish when
    none is); relations are kept when both endpoints are present.
    """
    return _prefix(doc, i, normalize)


def constituent_distance(g: Sdrs, x: str) -> int:
    """Textual distance of an EDU from ``g.last``; a segment of rank n gets
    the largest distance among its EDUs plus n."""
    lab = g.label(x)
    last = g.labels[g.last].order_index
    if lab.is_edu:
        return abs(last - lab.order_index)
    return max(abs(last - g.labels[e].order_index) for e in g.edus_of(x)) + g.rank(x)


def attachment_distance(context: Sdrs, point: str) -> int:
    """Distance of an attachment point from the incoming constituent, i.e.
    measured with the newcomer as LAST: attaching to the previous LAST is 1."""
    return constituent_distance(context, point) + 1


class _Replayer:
    def __init__(self, doc: Document, config: ReplayConfig):
        self.doc = doc
        self.config = config
        self.full = doc.sdrs
        self._cache: dict[int, tuple[Sdrs, FrontierSet]] = {}

    def context(self, i: int, exclude: frozenset[RelationKey] = frozenset()) -> tuple[Sdrs, FrontierSet]:
        if exclude:
            g = _prefix(self.doc, i, self.config.normalize, exclude)
            return g, right_frontier_union(g)
        if i not in self._cache:
            g = _prefix(self.doc, i, self.config.normalize)
            self._cache[i] = (g, right_frontier_union(g))
        return self._cache[i]

    def judge(self, r: RelationInstance) -> tuple[tuple, AttachmentVerdict]:
        full = self.full
        a, b = r.source, r.target
        if full.position_key(b) > full.position_key(a):
            subject, point = b, a
        else:
            subject, point = a, b
        postponed = subject != r.target
        size = full.first_position(subject)
        exclude: frozenset[RelationKey] = frozenset()
        point_ready = full.last_position(point) + 1
        if point_ready > size:
            # the point only appears inside the subject's own span
            size, postponed, exclude = point_ready, True, frozenset({r.key})
        ctx, frontier = self.context(size, exclude)

        step = full.last_position(subject) + 1
        order = (step, full.position_key(subject), full.position_key(point), r.rel.name)
        common = dict(
            doc_id=self.doc.id,
            subject=subject,
            point=point,
            decision=r,
            step=step,
            context=size,
            attached=r.target,
            attached_edus=tuple(e for e in full.edus if e in full.edus_of(r.target)),
        )
        if point not in ctx.labels:
            return order, AttachmentVerdict(status=Status.VIOLATION, note="unresolvable-postponement", **common)

        common.update(
            distance=attachment_distance(ctx, point),
            nonadjacent=ctx.last not in ctx.edus_of(point),
        )
        if r.rel.structural:
            return order, AttachmentVerdict(status=Status.EXEMPT, **common)

        avail = available_attachment_points(
            ctx, r.rel, self.config.coordinating_open_constituents, frontier
        )
        entry = frontier.entry(point)
        if point in avail:
            status = Status.POSTPONED_COMPLIANT if postponed else Status.COMPLIANT
            return order, AttachmentVerdict(status=status, via=entry.provenance, **common)
        status = Status.POSTPONED_VIOLATION if postponed else Status.VIOLATION
        rescued = entry is not None and entry.open_constituent
        return order, AttachmentVerdict(status=status, rescued_by_open_constituent=rescued, **common)

    def disconnections(self) -> list[AttachmentVerdict]:
        n = len(self.doc.edus)
        g, _ = self.context(n)
        comps = sorted(components(g), key=lambda c: min(g.first_position(x) for x in c.labels))
        return [
            AttachmentVerdict(
                doc_id=self.doc.id,
                subject=c.last,
                point=None,
                decision=None,
                status=Status.VIOLATION,
                step=n,
                context=n,
                note="disconnected",
            )
            for c in comps[1:]
        ]

    def replay(self) -> list[AttachmentVerdict]:
        judged = [self.judge(r) for r in self.full.relations]
        judged.sort(key=lambda pair: pair[0])
        return [v for _, v in judged] + self.disconnections()

    def open_ratios(self) -> list[float]:
        out = []
        for i in range(1, len(self.doc.edus) + 1):
            g, frontier = self.context(i)
            out.append(len(frontier) / len(g.labels))
        return out


def replay(doc: Document, config: ReplayConfig = ReplayConfig()) -> list[AttachmentVerdict]:
    """Judge every annotated decision of ``doc`` in textual order.

    Besides one verdict per relation, each weakly connected component of the
    final structure beyond the first yields a ``disconnected`` violation
    (with no decision attached).
    """
    return _Replayer(doc, config).replay()


def _scored(verdicts: Iterable[AttachmentVerdict], include_structural: bool) -> list[AttachmentVerdict]:
    return [
        v for v in verdicts
        if v.is_decision and (include_structural or v.status is not Status.EXEMPT)
    ]


def _good(v: AttachmentVerdict) -> bool:
    return v.status.compliant or v.status is Status.EXEMPT


def rfc_edu_score(verdicts: Iterable[AttachmentVerdict], include_structural: bool = False) -> float:
    """Share of attached EDUs that reach the frontier, directly or as part of
    a segment that does."""
    scored = _scored(verdicts, include_structural)
    direct: dict[tuple[str, str], bool] = {}
    via_segment: dict[tuple[str, str], bool] = defaultdict(bool)
    for v in scored:
        if v.attached_edus == (v.attached,):
            key = (v.doc_id, v.attached)
            direct[key] = direct.get(key, False) or _good(v)
        else:
            for e in v.attached_edus:
                key = (v.doc_id, e)
                via_segment[key] = via_segment[key] or _good(v)
    universe = set(direct) | set(via_segment)
    if not universe:
        raise EmptyInput("no attachment decisions to score")
    hits = sum(1 for k in universe if direct.get(k, False) or via_segment.get(k, False))
    return hits / len(universe)


def rfc_r_score(verdicts: Iterable[AttachmentVerdict], include_structural: bool = False) -> float:
    """Share of attachment decisions whose point is on the frontier."""
    scored = _scored(verdicts, include_structural)
    if not scored:
        raise EmptyInput("no attachment decisions to score")
    return sum(1 for v in scored if _good(v)) / len(scored)


@dataclass
class CorpusStats:
    n_documents: int
    n_edus: int
    n_decisions: int
    n_compliant: int
    n_exempt: int
    rfc_edu: float | None
    rfc_r: float | None
    distance_histogram: dict[int, int]
    nonlocal_fraction: float | None
    nonadjacent_fraction: float | None
    nonlocal_nonadjacent_fraction: float | None
    open_fraction: float | None
    violations_per_doc: dict[str, int]
    docs_over_5_violations_fraction: float
    coordinating_open_rescues: int = 0
    disconnections: int = 0
    postponed: int = 0

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["distance_histogram"] = {str(k): v for k, v in sorted(self.distance_histogram.items())}
        return d


def _fraction(num: int, den: int) -> float | None:
    return num / den if den else None


def summarize(
    verdicts: Sequence[AttachmentVerdict],
    open_ratios: Sequence[float],
    doc_ids: Sequence[str],
    n_edus: int,
    include_structural: bool = False,
) -> CorpusStats:
    scored = _scored(verdicts, include_structural)
    measured = [v for v in scored if v.distance is not None]
    hist = Counter(v.distance for v in measured)
    nonlocal_ = [v for v in measured if v.distance >= 2]
    nonadj = [v for v in measured if v.nonadjacent]
    both = [v for v in measured if v.distance >= 2 and v.nonadjacent]
    per_doc = {d: 0 for d in doc_ids}
    for v in verdicts:
        if v.status.violation:
            per_doc[v.doc_id] += 1
    try:
        rfc_edu = rfc_edu_score(verdicts, include_structural)
        rfc_r = rfc_r_score(verdicts, include_structural)
    except EmptyInput:
        rfc_edu = rfc_r = None
    return CorpusStats(
        n_documents=len(doc_ids),
        n_edus=n_edus,
        n_decisions=len(scored),
        n_compliant=sum(1 for v in scored if _good(v)),
        n_exempt=sum(1 for v in verdicts if v.status is Status.EXEMPT),
        rfc_edu=rfc_edu,
        rfc_r=rfc_r,
        distance_histogram=dict(sorted(hist.items())),
        nonlocal_fraction=_fraction(len(nonlocal_), len(measured)),
        nonadjacent_fraction=_fraction(len(nonadj), len(measured)),
        nonlocal_nonadjacent_fraction=_fraction(len(both), len(measured)),
        open_fraction=_fraction(sum(open_ratios), len(open_ratios)) if open_ratios else None,
        violations_per_doc=per_doc,
        docs_over_5_violations_fraction=(
            sum(1 for c in per_doc.values() if c > 5) / len(per_doc) if per_doc else 0.0
        ),
        coordinating_open_rescues=sum(1 for v in verdicts if v.rescued_by_open_constituent),
        disconnections=sum(1 for v in verdicts if v.note == "disconnected"),
        postponed=sum(1 for v in verdicts if v.postponed),
    )


@dataclass
class CorpusReport:
    verdicts: list[AttachmentVerdict]
    stats: CorpusStats


def validate_corpus(
    docs: Sequence[Document],
    config: ReplayConfig = ReplayConfig(),
    include_structural: bool = False,
) -> CorpusReport:
    if not docs:
        raise EmptyInput("empty corpus")
    verdicts: list[AttachmentVerdict] = []
    ratios: list[float] = []
    for doc in docs:
        rp = _Replayer(doc, config)
        verdicts += rp.replay()
        ratios += rp.open_ratios()
    stats = summarize(
        verdicts, ratios, [d.id for d in docs], sum(len(d.edus) for d in docs), include_structural
    )
    return CorpusReport(verdicts, stats)


def corpus_stats(
    docs: Sequence[Document],
    config: ReplayConfig = ReplayConfig(),
    include_structural: bool = False,
) -> CorpusStats:
    """Frontier compliance, distance distribution and search-space figures
    for a whole corpus."""
    return validate_corpus(docs, config, include_structural).stats
