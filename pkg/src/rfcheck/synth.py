"""Random structures for property tests and a planted-fault corpus generator.

The planted-fault generator never calls the frontier code: it only produces
documents without complex segments or Continuation, where the frontier of a
prefix is LAST plus its ancestors along subordinating edges, and it keeps its
own ledger of which decisions it meant to be compliant.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .corpus import Document, document
from .sdrs import (
    COORDINATING_NAMES,
    RELATIONS,
    SUBORDINATING_NAMES,
    ComplexSegment,
    Kind,
    Label,
    RelationInstance,
    Sdrs,
    SdrsError,
    build_sdrs,
)

_ALL_NAMES = sorted(RELATIONS)


def random_sdrs(rng: random.Random, max_constituents: int = 12) -> Sdrs:
    """A random valid structure with at most ``max_constituents`` labels.

    Segments draw members from earlier labels, so nesting and shared
    membership both occur.  Continuation is over-sampled to give the
    normalization rewrites something to do.
    """
    n_edus = rng.randint(1, min(8, max_constituents))
    n_segs = rng.randint(0, min(4, max_constituents - n_edus))
    edus = [Label(f"e{i}", Kind.EDU, i) for i in range(n_edus)]
    pool = [lab.id for lab in edus]
    segments: list[ComplexSegment] = []
    for k in range(n_segs):
        size = rng.randint(1, min(4, len(pool)))
        members = tuple(rng.sample(pool, size))
        seg = ComplexSegment(f"s{k}", members)
        segments.append(seg)
        pool.append(seg.label)

    relations: list[RelationInstance] = []
    for _ in range(rng.randint(0, 2 * len(pool))):
        a, b = rng.sample(pool, 2) if len(pool) > 1 else (pool[0], pool[0])
        if a == b:
            continue
        name = "Continuation" if rng.random() < 0.25 else rng.choice(_ALL_NAMES)
        cand = relations + [RelationInstance(RELATIONS[name], a, b)]
        try:
            build_sdrs(edus, cand, segments)
        except SdrsError:
            continue
        relations = cand
    return build_sdrs(edus, relations, segments)


@dataclass(frozen=True)
class PlantedDecision:
    doc_id: str
    subject: str
    point: str
    relation: str
    compliant: bool
    exempt: bool
    distance: int


@dataclass
class PlantedCorpus:
    documents: list[Document]
    decisions: list[PlantedDecision] = field(default_factory=list)

    def _scored(self) -> list[PlantedDecision]:
        return [d for d in self.decisions if not d.exempt]

    @property
    def rfc_r(self) -> float:
        scored = self._scored()
        return sum(d.compliant for d in scored) / len(scored)

    @property
    def rfc_edu(self) -> float:
        per_edu: dict[tuple[str, str], bool] = {}
        for d in self._scored():
            key = (d.doc_id, d.subject)
            per_edu[key] = per_edu.get(key, False) or d.compliant
        return sum(per_edu.values()) / len(per_edu)

    @property
    def distance_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(d.distance for d in self._scored()).items()))

    @property
    def violations_per_doc(self) -> dict[str, int]:
        out = {doc.id: 0 for doc in self.documents}
        for d in self._scored():
            if not d.compliant:
                out[d.doc_id] += 1
        return out


def _ancestors(parents: dict[int, set[int]], node: int) -> set[int]:
    out = {node}
    stack = [node]
    while stack:
        for p in parents.get(stack.pop(), ()):
            if p not in out:
                out.add(p)
                stack.append(p)
    return out


_SUB = list(SUBORDINATING_NAMES)
_COORD = [n for n in COORDINATING_NAMES if n not in ("Continuation", "Parallel", "Contrast")]


def planted_corpus(
    n_docs: int = 100,
    n_edus: int = 20,
    violation_rate: float = 0.15,
    second_rate: float = 0.2,
    structural_rate: float = 0.05,
    seed: int = 0,
) -> PlantedCorpus:
    """Documents where every EDU after the first attaches to earlier text,
    with a known fraction of attachments deliberately off the frontier."""
    rng = random.Random(seed)
    corpus = PlantedCorpus([])
    for k in range(n_docs):
        doc_id = f"synth-{k:03d}"
        parents: dict[int, set[int]] = {}
        triples: list[tuple[str, str, str]] = []
        for j in range(1, n_edus):
            frontier = _ancestors(parents, j - 1)
            closed = sorted(set(range(j)) - frontier)
            used: set[int] = set()
            n_decisions = 2 if (j > 1 and rng.random() < second_rate) else 1
            for _ in range(n_decisions):
                if rng.random() < structural_rate:
                    name = rng.choice(["Parallel", "Contrast"])
                    options = sorted(set(range(j)) - used)
                    compliant, exempt = True, True
                elif closed and rng.random() < violation_rate:
                    name = rng.choice(_SUB + _COORD)
                    options = [p for p in closed if p not in used]
                    compliant, exempt = False, False
                else:
                    name = rng.choice(_SUB + _COORD)
                    options = sorted(frontier - used)
                    compliant, exempt = True, False
                if not options:
                    continue
                point = rng.choice(options)
                used.add(point)
                triples.append((name, f"e{point}", f"e{j}"))
                corpus.decisions.append(
                    PlantedDecision(doc_id, f"e{j}", f"e{point}", name, compliant, exempt, j - point)
                )
                if name in SUBORDINATING_NAMES:
                    parents.setdefault(j, set()).add(point)
        edus = [(f"e{i}", f"Sentence {i} of {doc_id}.") for i in range(n_edus)]
        corpus.documents.append(document(doc_id, edus, triples))
    return corpus
