"""Sweep the planted violation rate and compare what the validator measures
with what the generator planted.  Every row should report zero error."""

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field

from rfcheck.synth import planted_corpus
from rfcheck.validator import corpus_stats


@dataclass
class Config:
    n_docs: int = 100
    n_edus: int = 20
    rates: list[float] = field(default_factory=lambda: [0.0, 0.05, 0.1, 0.2, 0.4])
    seeds: int = 3


def run(cfg: Config):
    for rate in cfg.rates:
        for seed in range(cfg.seeds):
            t0 = time.perf_counter()
            planted = planted_corpus(cfg.n_docs, cfg.n_edus, violation_rate=rate, seed=seed)
            stats = corpus_stats(planted.documents)
            yield {
                "rate": rate,
                "seed": seed,
                "planted_rfc_edu": round(planted.rfc_edu, 6),
                "measured_rfc_edu": round(stats.rfc_edu, 6),
                "planted_rfc_r": round(planted.rfc_r, 6),
                "measured_rfc_r": round(stats.rfc_r, 6),
                "histogram_match": stats.distance_histogram == planted.distance_histogram,
                "per_doc_match": stats.violations_per_doc == planted.violations_per_doc,
                "nonlocal": round(stats.nonlocal_fraction, 4),
                "open_fraction": round(stats.open_fraction, 4),
                "seconds": round(time.perf_counter() - t0, 3),
            }


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-docs", type=int, default=Config.n_docs)
    p.add_argument("--n-edus", type=int, default=Config.n_edus)
    p.add_argument("--rates", type=float, nargs="+")
    p.add_argument("--seeds", type=int, default=Config.seeds)
    args = p.parse_args()
    cfg = Config(args.n_docs, args.n_edus, args.rates or Config().rates, args.seeds)

    writer = None
    exact = True
    for row in run(cfg):
        if writer is None:
            writer = csv.DictWriter(sys.stdout, fieldnames=list(row))
            writer.writeheader()
        writer.writerow(row)
        exact &= (
            row["planted_rfc_edu"] == row["measured_rfc_edu"]
            and row["planted_rfc_r"] == row["measured_rfc_r"]
            and row["histogram_match"]
            and row["per_doc_match"]
        )
    print("all rows exact" if exact else "MISMATCH", file=sys.stderr)
    return 0 if exact else 1


if __name__ == "__main__":
    sys.exit(main())
