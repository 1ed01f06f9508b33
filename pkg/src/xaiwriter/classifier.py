"""The writing structure model: softmax regression over hashed n-gram counts.

Desk-scale by design. Features are hashed unigram+bigram counts with a
seeded, platform-stable hash; training is plain per-sample SGD, so a fixed
seed reproduces the weights bit for bit. The same featurizer (with TF-IDF
weighting) provides sentence embeddings whose dot product is the
similarity used by retrieval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from hashlib import blake2b

import numpy as np

from .aspects import ALL_LABELS, LABEL_INDEX, AspectLabel
from .corpus import Corpus
from .tokenization import tokenize

N_CLASSES = len(ALL_LABELS)


@dataclass(frozen=True)
class FeaturizerConfig:
    feature_dim: int = 4096
    hash_seed: int = 13


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 12
    learning_rate: float = 0.3
    feature_dim: int = 4096
    hash_seed: int = 13
    seed: int = 0


def hash_feature(key: str, seed: int, dim: int) -> int:
    digest = blake2b(key.encode("utf-8"), digest_size=8, key=seed.to_bytes(8, "little")).digest()
    return int.from_bytes(digest, "little") % dim


def feature_keys(tokens: list[str]) -> list[str]:
    keys = [f"u:{t}" for t in tokens]
    keys.extend(f"b:{a} {b}" for a, b in zip(tokens, tokens[1:]))
    return keys


def featurize(text: str, config: FeaturizerConfig) -> dict[int, float]:
    """Hashed unigram+bigram counts, sparse."""
    counts: dict[int, float] = {}
    for key in feature_keys(tokenize(text)):
        idx = hash_feature(key, config.hash_seed, config.feature_dim)
        counts[idx] = counts.get(idx, 0.0) + 1.0
    return counts


@dataclass(frozen=True)
class Prediction:
    label: AspectLabel
    confidence: float
    probabilities: tuple[float, ...]  # ordered as ALL_LABELS


@dataclass(frozen=True)
class SentenceEmbedding:
    """Sparse unit-norm vector; empty sentences embed as the zero vector."""

    weights: dict[int, float]
    dim: int

    def norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.weights.values()))

    def dot(self, other: "SentenceEmbedding") -> float:
        if len(self.weights) > len(other.weights):
            return other.dot(self)
        return sum(v * other.weights.get(i, 0.0) for i, v in self.weights.items())


@dataclass
class AspectClassifier:
    weights: np.ndarray  # (N_CLASSES, feature_dim)
    bias: np.ndarray  # (N_CLASSES,)
    featurizer: FeaturizerConfig
    idf: np.ndarray  # (feature_dim,), for embeddings
    metadata: dict = field(default_factory=dict)

    def logits(self, features: dict[int, float]) -> np.ndarray:
        z = self.bias.copy()
        if features:
            idx = np.fromiter(features.keys(), dtype=np.int64)
            vals = np.fromiter(features.values(), dtype=np.float64)
            z += self.weights[:, idx] @ vals
        return z


def _softmax(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max()
    e = np.exp(shifted)
    return e / e.sum()


class DegenerateCorpusError(ValueError):
    pass


def train_classifier(corpus: Corpus, config: TrainConfig = TrainConfig()) -> AspectClassifier:
    """SGD-trained softmax regression; deterministic for a fixed seed."""
    examples = [(s.text, s.label) for rec in corpus.records for s in rec.sentences]
    if not examples:
        raise DegenerateCorpusError("empty corpus")
    labels_present = {label for _, label in examples}
    if len(labels_present) < 2:
        raise DegenerateCorpusError(
            f"corpus contains a single label ({next(iter(labels_present)).value}); "
            "refusing to train a degenerate classifier"
        )

    fz = FeaturizerConfig(config.feature_dim, config.hash_seed)
    feats = []
    df = np.zeros(config.feature_dim)
    for text, label in examples:
        f = featurize(text, fz)
        idx = np.fromiter(f.keys(), dtype=np.int64) if f else np.empty(0, dtype=np.int64)
        vals = np.fromiter(f.values(), dtype=np.float64) if f else np.empty(0)
        feats.append((idx, vals, LABEL_INDEX[label]))
        df[idx] += 1.0

    n = len(examples)
    idf = np.log((1.0 + n) / (1.0 + df)) + 1.0

    weights = np.zeros((N_CLASSES, config.feature_dim))
    bias = np.zeros(N_CLASSES)
    rng = np.random.default_rng(config.seed)
    epoch_losses = []
    for _ in range(config.epochs):
        order = rng.permutation(n)
        total_loss = 0.0
        for i in order:
            idx, vals, y = feats[i]
            z = bias.copy()
            if idx.size:
                z += weights[:, idx] @ vals
            p = _softmax(z)
            total_loss += -math.log(max(p[y], 1e-300))
            grad = p.copy()
            grad[y] -= 1.0
            if idx.size:
                weights[:, idx] -= config.learning_rate * np.outer(grad, vals)
            bias -= config.learning_rate * grad
        epoch_losses.append(total_loss / n)

    return AspectClassifier(
        weights=weights,
        bias=bias,
        featurizer=fz,
        idf=idf,
        metadata={
            "n_examples": n,
            "labels": sorted(label.value for label in labels_present),
            "epochs": config.epochs,
            "learning_rate": config.learning_rate,
            "seed": config.seed,
            "epoch_losses": epoch_losses,
        },
    )


def predict_aspect(clf: AspectClassifier, sentence: str) -> Prediction:
    probs = _softmax(clf.logits(featurize(sentence, clf.featurizer)))
    best = int(np.argmax(probs))
    return Prediction(
        label=ALL_LABELS[best],
        confidence=float(probs[best]),
        probabilities=tuple(float(p) for p in probs),
    )


def embed_sentence(clf: AspectClassifier, sentence: str) -> SentenceEmbedding:
    """TF-IDF weighted hashed n-gram vector, L2-normalised."""
    counts = featurize(sentence, clf.featurizer)
    weighted = {i: v * float(clf.idf[i]) for i, v in counts.items()}
    norm = math.sqrt(sum(v * v for v in weighted.values()))
    if norm == 0.0:
        return SentenceEmbedding({}, clf.featurizer.feature_dim)
    return SentenceEmbedding({i: v / norm for i, v in weighted.items()}, clf.featurizer.feature_dim)
