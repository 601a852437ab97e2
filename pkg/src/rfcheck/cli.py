"""Command-line driver: ``rfcheck validate|stats|frontier CORPUS``.

Exit codes: 0 success (and, for ``validate``, no violations), 1 violations
found, 2 bad input or usage.  Set ``RFCHECK_LOG_LEVEL`` (e.g. ``DEBUG``) for
progress logging on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

from .corpus import CorpusError, UnknownDocument, find_document, parse_corpus
from .frontier import right_frontier_union
from .sdrs import SdrsError
from .validator import (
    AttachmentVerdict,
    CorpusStats,
    EmptyInput,
    IndexOutOfRange,
    ReplayConfig,
    prefix_graph,
    validate_corpus,
)

log = logging.getLogger("rfcheck")

EXIT_OK, EXIT_VIOLATIONS, EXIT_INPUT = 0, 1, 2

VERDICT_FIELDS = [
    "doc_id",
    "step",
    "subject",
    "point",
    "relation",
    "source",
    "target",
    "status",
    "via",
    "distance",
    "nonadjacent",
    "rescued_by_open_constituent",
    "note",
]


def verdict_row(v: AttachmentVerdict) -> dict:
    d = v.decision
    return {
        "doc_id": v.doc_id,
        "step": v.step,
        "subject": v.subject,
        "point": v.point,
        "relation": d.rel.name if d else None,
        "source": d.source if d else None,
        "target": d.target if d else None,
        "status": v.status.value,
        "via": v.via.value if v.via else None,
        "distance": v.distance,
        "nonadjacent": v.nonadjacent,
        "rescued_by_open_constituent": v.rescued_by_open_constituent,
        "note": v.note,
    }


def verdicts_csv(verdicts: Sequence[AttachmentVerdict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=VERDICT_FIELDS, lineterminator="\r\n")
    w.writeheader()
    for v in verdicts:
        row = verdict_row(v)
        w.writerow({k: "" if row[k] is None else row[k] for k in VERDICT_FIELDS})
    return buf.getvalue()


def verdicts_json(verdicts: Sequence[AttachmentVerdict], stats: CorpusStats) -> str:
    return json.dumps(
        {"verdicts": [verdict_row(v) for v in verdicts], "summary": stats.to_dict()},
        indent=2,
        ensure_ascii=False,
    ) + "\n"


def histogram_csv(stats: CorpusStats) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["distance", "count"])
    for dist, count in sorted(stats.distance_histogram.items()):
        w.writerow([dist, count])
    return buf.getvalue()


def _config(args: argparse.Namespace) -> ReplayConfig:
    return ReplayConfig(
        normalize=not args.no_normalize,
        coordinating_open_constituents=getattr(args, "coordinating_open_constituents", False),
    )


def _write(out_dir: str | None, name: str, text: str) -> None:
    if out_dir is None:
        return
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    (path / name).write_text(text, encoding="utf-8")


def cmd_validate(args: argparse.Namespace) -> int:
    docs = parse_corpus(args.corpus)
    log.info("read %d documents from %s", len(docs), args.corpus)
    report = validate_corpus(docs, _config(args), args.include_structural)
    as_csv = verdicts_csv(report.verdicts)
    as_json = verdicts_json(report.verdicts, report.stats)
    _write(args.out_dir, "verdicts.csv", as_csv)
    _write(args.out_dir, "verdicts.json", as_json)
    _write(args.out_dir, "summary.json", json.dumps(report.stats.to_dict(), indent=2) + "\n")
    sys.stdout.write(as_csv if args.format == "csv" else as_json)
    n_viol = sum(report.stats.violations_per_doc.values())
    s = report.stats
    print(
        f"{s.n_documents} documents, {s.n_decisions} decisions, {n_viol} violations; "
        f"rfc_edu={_pct(s.rfc_edu)} rfc_r={_pct(s.rfc_r)}",
        file=sys.stderr,
    )
    return EXIT_VIOLATIONS if n_viol else EXIT_OK


def _pct(x: float | None) -> str:
    return "n/a" if x is None else f"{100 * x:.2f}%"


def cmd_stats(args: argparse.Namespace) -> int:
    docs = parse_corpus(args.corpus)
    log.info("read %d documents from %s", len(docs), args.corpus)
    stats = validate_corpus(docs, _config(args), args.include_structural).stats
    text = json.dumps(stats.to_dict(), indent=2) + "\n"
    hist = histogram_csv(stats)
    _write(args.out_dir, "stats.json", text)
    _write(args.out_dir, "distance_histogram.csv", hist)
    if args.histogram_csv:
        Path(args.histogram_csv).write_text(hist, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def cmd_frontier(args: argparse.Namespace) -> int:
    docs = parse_corpus(args.corpus)
    doc = find_document(docs, args.doc)
    if args.edu is not None:
        if args.edu not in doc.order:
            raise IndexOutOfRange(f"document {doc.id!r} has no EDU {args.edu!r}")
        at = doc.order[args.edu] + 1
    else:
        at = args.at
    g = prefix_graph(doc, at, normalize=not args.no_normalize)
    frontier = right_frontier_union(g)
    for e in frontier.entries:
        print(f"{e.label}\t{e.provenance.value}\t{e.depth}\t{e.component}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rfcheck", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser, replay_flags: bool = True) -> None:
        sp.add_argument("corpus", help="newline-delimited JSON corpus file")
        sp.add_argument("--no-normalize", action="store_true", help="skip the closure rewrites")
        if replay_flags:
            sp.add_argument(
                "--include-structural",
                action="store_true",
                help="count Parallel/Contrast decisions as compliant instead of leaving them out",
            )
            sp.add_argument(
                "--coordinating-open-constituents",
                action="store_true",
                help="let coordinating relations reach open constituents of frontier segments",
            )
            sp.add_argument("--out-dir", help="also write report files to this directory")

    v = sub.add_parser("validate", help="check every attachment decision")
    common(v)
    v.add_argument("--format", choices=["csv", "json"], default="csv")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("stats", help="corpus statistics as JSON")
    common(s)
    s.add_argument("--histogram-csv", help="write the distance histogram (distance,count) here")
    s.set_defaults(func=cmd_stats)

    f = sub.add_parser("frontier", help="print the right frontier of a document prefix")
    common(f, replay_flags=False)
    f.add_argument("--doc", required=True, help="document id")
    where = f.add_mutually_exclusive_group(required=True)
    where.add_argument("--at", type=int, help="1-based EDU index; the prefix ends there")
    where.add_argument("--edu", help="EDU id; the prefix ends there")
    f.set_defaults(func=cmd_frontier)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    level = os.environ.get("RFCHECK_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, SdrsError, OSError, IndexOutOfRange, EmptyInput) as exc:
        print(f"rfcheck: {args.corpus}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnknownDocument as exc:
        print(f"rfcheck: {args.corpus}: unknown document {exc.args[0]!r}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
