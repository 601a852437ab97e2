"""Replay a corpus under each combination of closure normalization and the
coordinating open-constituent flag, and tabulate the compliance figures."""

import argparse
import itertools
import sys

from rfcheck import fixtures
from rfcheck.corpus import parse_corpus
from rfcheck.validator import ReplayConfig, corpus_stats


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("corpus", nargs="?", help="NDJSON corpus (default: built-in fixtures)")
    args = p.parse_args()
    docs = parse_corpus(args.corpus) if args.corpus else fixtures.all_fixtures()

    print("normalize\tcoord_open\trfc_edu\trfc_r\tviolations\trescues\tnonlocal\tnonadjacent")
    for norm, coord in itertools.product([True, False], repeat=2):
        s = corpus_stats(docs, ReplayConfig(normalize=norm, coordinating_open_constituents=coord))
        print(
            f"{norm}\t{coord}\t{s.rfc_edu:.4f}\t{s.rfc_r:.4f}\t"
            f"{sum(s.violations_per_doc.values())}\t{s.coordinating_open_rescues}\t"
            f"{s.nonlocal_fraction:.4f}\t{s.nonadjacent_fraction:.4f}"
        )


if __name__ == "__main__":
    sys.exit(main())
