"""Versioned on-disk artifacts: classifier, style model, profile, example
index. Loading a file whose format_version does not match is a hard error;
silent best-effort migration is worse than a retrain at desk scale.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .aspects import AspectLabel
from .classifier import (
    AspectClassifier,
    FeaturizerConfig,
    SentenceEmbedding,
    TrainConfig,
    embed_sentence,
    train_classifier,
)
from .corpus import (
    ConferenceProfile,
    Corpus,
    LengthStats,
    StructurePattern,
    build_profile,
)
from .dialogue import Artifacts
from .explainers import ExampleIndex, IndexEntry
from .generator import ExternalGenerator
from .style_lm import StyleModel, quantize_quality, sentence_perplexity, train_style_lm

ARTIFACT_FORMAT_VERSION = 1


class ArtifactVersionError(ValueError):
    pass


def _check_version(obj: dict, path) -> None:
    found = obj.get("format_version")
    if found != ARTIFACT_FORMAT_VERSION:
        raise ArtifactVersionError(
            f"{path}: format_version {found!r}, expected {ARTIFACT_FORMAT_VERSION}"
        )


def _dump(obj: dict, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, sort_keys=True), encoding="utf-8")


def _load(path: Path) -> dict:
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    _check_version(obj, path)
    return obj


# --- classifier -------------------------------------------------------------

def save_classifier(clf: AspectClassifier, path: Path) -> None:
    _dump(
        {
            "format_version": ARTIFACT_FORMAT_VERSION,
            "kind": "aspect_classifier",
            "feature_dim": clf.featurizer.feature_dim,
            "hash_seed": clf.featurizer.hash_seed,
            "weights": clf.weights.tolist(),
            "bias": clf.bias.tolist(),
            "idf": clf.idf.tolist(),
            "metadata": clf.metadata,
        },
        Path(path),
    )


def load_classifier(path: Path) -> AspectClassifier:
    obj = _load(Path(path))
    return AspectClassifier(
        weights=np.asarray(obj["weights"], dtype=np.float64),
        bias=np.asarray(obj["bias"], dtype=np.float64),
        featurizer=FeaturizerConfig(obj["feature_dim"], obj["hash_seed"]),
        idf=np.asarray(obj["idf"], dtype=np.float64),
        metadata=obj.get("metadata", {}),
    )


# --- style model -------------------------------------------------------------

def save_style_lm(lm: StyleModel, path: Path) -> None:
    _dump(
        {
            "format_version": ARTIFACT_FORMAT_VERSION,
            "kind": "style_lm",
            "n": lm.n,
            "alpha": lm.alpha,
            "vocab": sorted(lm.vocab),
            "counts": {
                " ".join(ctx): dict(sorted(counter.items())) for ctx, counter in lm.counts.items()
            },
        },
        Path(path),
    )


def load_style_lm(path: Path) -> StyleModel:
    obj = _load(Path(path))
    lm = StyleModel(n=int(obj["n"]), alpha=float(obj["alpha"]))
    lm.vocab = set(obj["vocab"])
    for ctx_key, counter in obj["counts"].items():
        ctx = tuple(ctx_key.split(" ")) if ctx_key else ()
        lm.counts[ctx] = Counter(counter)
        lm.context_totals[ctx] = sum(counter.values())
    return lm


# --- profile -----------------------------------------------------------------

def save_profile(profile: ConferenceProfile, path: Path) -> None:
    _dump(
        {
            "format_version": ARTIFACT_FORMAT_VERSION,
            "kind": "conference_profile",
            "conference": profile.conference,
            "quality_boundaries": list(profile.quality_boundaries),
            "label_distribution": {
                label.value: frac for label, frac in profile.label_distribution.items()
            },
            "length_stats": {
                "mean": profile.length_stats.mean,
                "p5": profile.length_stats.p5,
                "p95": profile.length_stats.p95,
            },
            "patterns": [
                {
                    "sequence": [label.value for label in pattern.sequence],
                    "display_form": [[label.value, pct] for label, pct in pattern.display_form],
                }
                for pattern in profile.patterns
            ],
            "data_card": profile.data_card,
            "model_card": profile.model_card,
            "n_abstracts": profile.n_abstracts,
            "n_sentences": profile.n_sentences,
        },
        Path(path),
    )


def load_profile(path: Path) -> ConferenceProfile:
    obj = _load(Path(path))
    return ConferenceProfile(
        conference=obj["conference"],
        quality_boundaries=tuple(obj["quality_boundaries"]),
        label_distribution={
            AspectLabel(k): v for k, v in obj["label_distribution"].items()
        },
        length_stats=LengthStats(**obj["length_stats"]),
        patterns=tuple(
            StructurePattern(
                sequence=tuple(AspectLabel(v) for v in p["sequence"]),
                display_form=tuple((AspectLabel(lv), pct) for lv, pct in p["display_form"]),
            )
            for p in obj["patterns"]
        ),
        data_card=obj["data_card"],
        model_card=obj["model_card"],
        n_abstracts=obj["n_abstracts"],
        n_sentences=obj["n_sentences"],
    )


# --- example index -----------------------------------------------------------

def save_index(index: ExampleIndex, path: Path) -> None:
    _dump(
        {
            "format_version": ARTIFACT_FORMAT_VERSION,
            "kind": "example_index",
            "conference": index.conference,
            "entries": [
                {
                    "text": e.text,
                    "label": e.label.value,
                    "quality": e.quality,
                    "embedding": {str(i): w for i, w in sorted(e.embedding.weights.items())},
                    "dim": e.embedding.dim,
                }
                for e in index.entries
            ],
        },
        Path(path),
    )


def load_index(path: Path) -> ExampleIndex:
    obj = _load(Path(path))
    entries = [
        IndexEntry(
            text=e["text"],
            label=AspectLabel(e["label"]),
            quality=int(e["quality"]),
            embedding=SentenceEmbedding(
                {int(i): w for i, w in e["embedding"].items()}, e["dim"]
            ),
        )
        for e in obj["entries"]
    ]
    return ExampleIndex(conference=obj["conference"], entries=entries)


# --- full bundle ---------------------------------------------------------------

@dataclass
class TrainSettings:
    classifier: TrainConfig = TrainConfig()
    lm_order: int = 2
    lm_alpha: float = 0.1
    pattern_k: int = 5
    pattern_length: int = 12
    seed: int = 0


def build_example_index(
    corpus: Corpus,
    conference: str,
    clf: AspectClassifier,
    lm: StyleModel,
    boundaries: tuple[float, float, float, float],
) -> ExampleIndex:
    entries = []
    for sentence in corpus.sentences_for(conference):
        ppl = sentence_perplexity(lm, sentence.text)
        entries.append(
            IndexEntry(
                text=sentence.text,
                label=sentence.label,
                quality=quantize_quality(ppl, boundaries),
                embedding=embed_sentence(clf, sentence.text),
            )
        )
    return ExampleIndex(conference=conference, entries=entries)


def train_artifacts(
    corpus: Corpus,
    settings: TrainSettings = TrainSettings(),
    generator: ExternalGenerator | None = None,
) -> dict[str, Artifacts]:
    """Full training pipeline: one classifier over the whole corpus, then a
    style model, profile, and retrieval index per conference."""
    clf = train_classifier(corpus, settings.classifier)
    out: dict[str, Artifacts] = {}
    for conference in corpus.conferences():
        sub = Corpus(records=corpus.for_conference(conference))
        lm = train_style_lm(sub, n=settings.lm_order, alpha=settings.lm_alpha)
        profile = build_profile(
            corpus,
            conference,
            perplexity_fn=lambda text, _lm=lm: sentence_perplexity(_lm, text),
            k=settings.pattern_k,
            pattern_length=settings.pattern_length,
            seed=settings.seed,
        )
        index = build_example_index(corpus, conference, clf, lm, profile.quality_boundaries)
        out[conference] = Artifacts(
            classifier=clf, style_lm=lm, profile=profile, index=index, generator=generator
        )
    return out


def save_artifacts(artifacts: dict[str, Artifacts], root: Path) -> None:
    root = Path(root)
    conferences = sorted(artifacts)
    first = artifacts[conferences[0]]
    save_classifier(first.classifier, root / "classifier.json")
    for conference in conferences:
        bundle = artifacts[conference]
        conf_dir = root / "conferences" / conference
        save_style_lm(bundle.style_lm, conf_dir / "style_lm.json")
        save_profile(bundle.profile, conf_dir / "profile.json")
        save_index(bundle.index, conf_dir / "index.json")
    _dump(
        {
            "format_version": ARTIFACT_FORMAT_VERSION,
            "kind": "manifest",
            "conferences": conferences,
        },
        root / "manifest.json",
    )


def load_artifacts(root: Path, generator: ExternalGenerator | None = None) -> dict[str, Artifacts]:
    root = Path(root)
    manifest = _load(root / "manifest.json")
    clf = load_classifier(root / "classifier.json")
    out = {}
    for conference in manifest["conferences"]:
        conf_dir = root / "conferences" / conference
        out[conference] = Artifacts(
            classifier=clf,
            style_lm=load_style_lm(conf_dir / "style_lm.json"),
            profile=load_profile(conf_dir / "profile.json"),
            index=load_index(conf_dir / "index.json"),
            generator=generator,
        )
    return out
