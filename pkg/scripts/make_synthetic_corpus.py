"""Generate a synthetic labeled corpus file for training and demos.

    python scripts/make_synthetic_corpus.py corpus.jsonl --abstracts 60 --seed 7
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from xaiwriter.synthetic import synthetic_corpus, write_corpus_jsonl


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("output", type=Path)
    parser.add_argument("--conference", default="synthconf")
    parser.add_argument("--abstracts", type=int, default=60)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    corpus = synthetic_corpus(
        conference=args.conference, n_abstracts=args.abstracts, seed=args.seed
    )
    write_corpus_jsonl(corpus, args.output)
    n_sentences = sum(len(r.sentences) for r in corpus.records)
    print(f"wrote {len(corpus.records)} abstracts ({n_sentences} sentences) to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
