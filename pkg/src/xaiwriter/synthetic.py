"""Synthetic labeled corpora for fixtures, demos, and the acceptance suite.

Each aspect label draws from its own vocabulary pool (with a thin shared
filler set), which makes the five classes separable at desk scale while
still producing plausible-looking abstract sentences.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .aspects import AspectLabel
from .corpus import Corpus, CorpusRecord, LabeledSentence

LABEL_POOLS: dict[AspectLabel, list[str]] = {
    AspectLabel.BACKGROUND: [
        "prior", "existing", "recent", "literature", "studies", "remain", "limited",
        "challenge", "widely", "known", "however", "increasingly", "despite",
        "attention", "longstanding", "gap", "context", "motivates", "established",
        "community", "growing", "interest",
    ],
    AspectLabel.PURPOSE: [
        "propose", "present", "introduce", "aim", "goal", "objective", "paper",
        "study", "investigate", "address", "focus", "develop", "design", "explore",
        "seek", "intend", "target", "contribute", "pursue", "formulate", "motivate",
        "question",
    ],
    AspectLabel.METHOD: [
        "method", "approach", "algorithm", "train", "apply", "procedure", "pipeline",
        "implement", "combine", "framework", "technique", "module", "architecture",
        "optimize", "compute", "encode", "cluster", "iterate", "parameter", "layer",
        "sample", "batch",
    ],
    AspectLabel.FINDING: [
        "results", "show", "demonstrate", "achieve", "improve", "outperform",
        "significant", "accuracy", "gains", "evaluation", "experiments", "observe",
        "confirm", "evidence", "margin", "better", "consistently", "strong",
        "baselines", "benchmark", "substantial", "robust",
    ],
    AspectLabel.OTHER: [
        "code", "available", "online", "release", "public", "future", "work",
        "acknowledge", "thank", "license", "repository", "appendix", "supplementary",
        "details", "site", "funding", "reviewers", "discussion", "materials",
        "ethics", "statement", "open",
    ],
}

FILLERS = [
    "the", "of", "a", "we", "our", "this", "for", "to", "and", "in",
    "with", "is", "are", "that", "on", "new",
]

STRUCTURE_TEMPLATES: list[list[AspectLabel]] = [
    [AspectLabel.BACKGROUND, AspectLabel.PURPOSE, AspectLabel.METHOD, AspectLabel.FINDING],
    [
        AspectLabel.BACKGROUND, AspectLabel.BACKGROUND, AspectLabel.PURPOSE,
        AspectLabel.METHOD, AspectLabel.METHOD, AspectLabel.FINDING,
    ],
    [
        AspectLabel.BACKGROUND, AspectLabel.PURPOSE, AspectLabel.METHOD,
        AspectLabel.METHOD, AspectLabel.FINDING, AspectLabel.FINDING,
    ],
    [
        AspectLabel.BACKGROUND, AspectLabel.PURPOSE, AspectLabel.PURPOSE,
        AspectLabel.METHOD, AspectLabel.FINDING, AspectLabel.OTHER,
    ],
    [
        AspectLabel.BACKGROUND, AspectLabel.BACKGROUND, AspectLabel.PURPOSE,
        AspectLabel.METHOD, AspectLabel.FINDING, AspectLabel.FINDING,
        AspectLabel.OTHER,
    ],
]


def synthetic_sentence(label: AspectLabel, rng: np.random.Generator) -> str:
    pool = LABEL_POOLS[label]
    n_tokens = int(rng.integers(6, 15))
    words = []
    for _ in range(n_tokens):
        if rng.random() < 0.25:
            words.append(FILLERS[int(rng.integers(len(FILLERS)))])
        else:
            words.append(pool[int(rng.integers(len(pool)))])
    sentence = " ".join(words)
    return sentence[0].upper() + sentence[1:] + "."


def synthetic_corpus(
    conference: str = "synthconf",
    n_abstracts: int = 60,
    seed: int = 7,
    year: int = 2022,
) -> Corpus:
    rng = np.random.default_rng(seed)
    records = []
    for i in range(n_abstracts):
        template = STRUCTURE_TEMPLATES[int(rng.integers(len(STRUCTURE_TEMPLATES)))]
        sentences = tuple(
            LabeledSentence(synthetic_sentence(label, rng), label) for label in template
        )
        records.append(
            CorpusRecord(
                conference=conference,
                year=year,
                abstract_id=f"{conference}-{i:04d}",
                sentences=sentences,
            )
        )
    return Corpus(records=records)


def labeled_sentences(n: int, seed: int = 11) -> list[LabeledSentence]:
    """A flat stream of labeled sentences cycling over the five labels."""
    rng = np.random.default_rng(seed)
    labels = list(AspectLabel)
    return [synthetic_sentence_pair(labels[i % 5], rng) for i in range(n)]


def synthetic_sentence_pair(label: AspectLabel, rng: np.random.Generator) -> LabeledSentence:
    return LabeledSentence(synthetic_sentence(label, rng), label)


def write_corpus_jsonl(corpus: Corpus, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for rec in corpus.records:
            fh.write(
                json.dumps(
                    {
                        "conference": rec.conference,
                        "year": rec.year,
                        "abstract_id": rec.abstract_id,
                        "sentences": [
                            {"text": s.text, "label": s.label.value} for s in rec.sentences
                        ],
                    }
                )
                + "\n"
            )
