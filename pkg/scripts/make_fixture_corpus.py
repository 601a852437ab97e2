"""Write the hand-annotated fixtures (and optionally a planted-fault corpus)
as newline-delimited JSON, ready for ``rfcheck validate``."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from rfcheck import fixtures
from rfcheck.corpus import write_corpus
from rfcheck.synth import planted_corpus


@dataclass
class Config:
    out_dir: Path = Path("corpora")
    planted_docs: int = 100
    planted_edus: int = 20
    seed: int = 0


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out-dir", type=Path, default=Config.out_dir)
    p.add_argument("--planted-docs", type=int, default=Config.planted_docs)
    p.add_argument("--planted-edus", type=int, default=Config.planted_edus)
    p.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(p.parse_args()))

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    docs = fixtures.all_fixtures() + [fixtures.enumeration_grouped()]
    write_corpus(docs, cfg.out_dir / "fixtures.ndjson")
    print(f"wrote {len(docs)} documents to {cfg.out_dir / 'fixtures.ndjson'}")

    if cfg.planted_docs > 0:
        planted = planted_corpus(cfg.planted_docs, cfg.planted_edus, seed=cfg.seed)
        write_corpus(planted.documents, cfg.out_dir / "planted.ndjson")
        print(
            f"wrote {len(planted.documents)} documents to {cfg.out_dir / 'planted.ndjson'} "
            f"(ground truth rfc_edu={planted.rfc_edu:.4f}, rfc_r={planted.rfc_r:.4f})"
        )


if __name__ == "__main__":
    main()
