"""Corpus documents and their newline-delimited JSON wire format.

Each line of a corpus file holds one document::

    {"id": "d1",
     "edus": [{"id": "1", "start": 0, "end": 12, "text": "..."}, ...],
     "relations": [{"type": "Elaboration", "source": "1", "target": "2"}, ...],
     "segments": [{"id": "s1", "members": ["2", "3"]}, ...]}

EDUs are ordered by span start, a containing EDU before the EDUs embedded in
it.  The JSON schema lives in ``rfcheck/data/corpus.schema.json``.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from typing import IO, Any, Iterable, Iterator, Sequence

import jsonschema

from .sdrs import (
    ComplexSegment,
    Kind,
    Label,
    RelationInstance,
    Sdrs,
    SdrsError,
    build_sdrs,
    classify,
)


class CorpusError(ValueError):
    """Malformed corpus input.  ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        super().__init__(message)
        self.line = line
        self.field = field

    def __str__(self) -> str:
        msg = super().__str__()
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field:
            where.append(f"field {self.field}")
        return f"{', '.join(where)}: {msg}" if where else msg


class SchemaError(CorpusError):
    pass


class OverlapError(CorpusError):
    pass


class UnknownDocument(KeyError):
    pass


def _schema() -> dict:
    text = resources.files("rfcheck").joinpath("data/corpus.schema.json").read_text("utf-8")
    return json.loads(text)


_VALIDATOR = jsonschema.Draft202012Validator(_schema())


@dataclass(frozen=True)
class Edu:
    id: str
    start: int
    end: int
    text: str = ""


@dataclass(frozen=True)
class RelationRecord:
    type: str
    source: str
    target: str


@dataclass(frozen=True)
class SegmentRecord:
    id: str
    members: tuple[str, ...]


@dataclass(frozen=True)
class Document:
    id: str
    edus: tuple[Edu, ...]
    relations: tuple[RelationRecord, ...] = ()
    segments: tuple[SegmentRecord, ...] = ()

    @cached_property
    def order(self) -> dict[str, int]:
        return {e.id: i for i, e in enumerate(self.edus)}

    def edu_labels(self) -> list[Label]:
        return [Label(e.id, Kind.EDU, i) for i, e in enumerate(self.edus)]

    def relation_instances(self) -> list[RelationInstance]:
        return [RelationInstance(classify(r.type), r.source, r.target) for r in self.relations]

    def complex_segments(self) -> list[ComplexSegment]:
        return [ComplexSegment(s.id, s.members) for s in self.segments]

    @cached_property
    def sdrs(self) -> Sdrs:
        """The full annotated structure, not normalized."""
        return build_sdrs(self.edu_labels(), self.relation_instances(), self.complex_segments())

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "edus": [{"id": e.id, "start": e.start, "end": e.end, "text": e.text} for e in self.edus],
            "relations": [{"type": r.type, "source": r.source, "target": r.target} for r in self.relations],
            "segments": [{"id": s.id, "members": list(s.members)} for s in self.segments],
        }


def _check_nesting(edus: Sequence[Edu]) -> None:
    # edus sorted by (start, -end); a stack holds the currently open containers
    stack: list[Edu] = []
    for e in edus:
        while stack and stack[-1].end <= e.start:
            stack.pop()
        if stack and e.end > stack[-1].end:
            raise OverlapError(
                f"EDU {e.id!r} [{e.start}, {e.end}) partially overlaps "
                f"{stack[-1].id!r} [{stack[-1].start}, {stack[-1].end})"
            )
        stack.append(e)


def document_from_dict(obj: Any, line: int | None = None) -> Document:
    """Validate one decoded JSON object and turn it into a :class:`Document`."""
    errors = sorted(_VALIDATOR.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        field = "/".join(str(p) for p in err.absolute_path) or "<document>"
        raise SchemaError(err.message, line, field)

    edus = [Edu(e["id"], e["start"], e["end"], e.get("text", "")) for e in obj["edus"]]
    for i, e in enumerate(edus):
        if e.end <= e.start:
            raise SchemaError(f"EDU {e.id!r} has an empty or inverted span", line, f"edus/{i}/end")
    edus.sort(key=lambda e: (e.start, -e.end, e.id))
    try:
        _check_nesting(edus)
    except OverlapError as exc:
        exc.line = line
        raise

    relations = []
    for i, r in enumerate(obj.get("relations", [])):
        try:
            rel = classify(r["type"])
        except SdrsError as exc:
            exc.line = line
            exc.field = f"relations/{i}/type"
            raise
        relations.append(RelationRecord(rel.name, r["source"], r["target"]))
    segments = [SegmentRecord(s["id"], tuple(s["members"])) for s in obj.get("segments", [])]

    doc = Document(obj["id"], tuple(edus), tuple(relations), tuple(segments))
    try:
        doc.sdrs
    except SdrsError as exc:
        raise SchemaError(f"document {doc.id!r}: {exc}", line, None) from exc
    return doc


def iter_corpus(stream: IO[str]) -> Iterator[Document]:
    seen: set[str] = set()
    for lineno, raw in enumerate(stream, 1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc.msg}", lineno, None) from exc
        doc = document_from_dict(obj, lineno)
        if doc.id in seen:
            raise SchemaError(f"duplicate document id {doc.id!r}", lineno, "id")
        seen.add(doc.id)
        yield doc


def parse_corpus(path: str | os.PathLike) -> list[Document]:
    """Read a newline-delimited JSON corpus file (UTF-8)."""
    with open(path, encoding="utf-8") as fh:
        return list(iter_corpus(fh))


def loads_corpus(text: str) -> list[Document]:
    return list(iter_corpus(io.StringIO(text)))


def dumps_corpus(docs: Iterable[Document]) -> str:
    return "".join(json.dumps(d.to_dict(), ensure_ascii=False) + "\n" for d in docs)


def write_corpus(docs: Iterable[Document], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_corpus(docs))


def document(
    doc_id: str,
    edus: Sequence[tuple[str, str]],
    relations: Iterable[tuple[str, str, str]] = (),
    segments: Iterable[tuple[str, Sequence[str]]] = (),
) -> Document:
    """Build a document from (id, text) pairs laid end to end, separated by
    single spaces.  Relation triples are (type, source, target)."""
    obj_edus = []
    pos = 0
    for eid, text in edus:
        obj_edus.append({"id": eid, "start": pos, "end": pos + max(len(text), 1), "text": text})
        pos += max(len(text), 1) + 1
    obj = {
        "id": doc_id,
        "edus": obj_edus,
        "relations": [{"type": t, "source": s, "target": g} for t, s, g in relations],
        "segments": [{"id": sid, "members": list(ms)} for sid, ms in segments],
    }
    return document_from_dict(obj)


def find_document(docs: Iterable[Document], doc_id: str) -> Document:
    for d in docs:
        if d.id == doc_id:
            return d
    raise UnknownDocument(doc_id)
