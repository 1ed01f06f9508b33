"""Integrated-gradients word importance for the structure classifier.

Attribution runs on the classifier's hashed count features with a zero
baseline and a midpoint Riemann sum along the straight path. Feature
attributions are folded back onto tokens: a unigram's attribution goes to
its token, a bigram's is split evenly between its two tokens, and hash
collisions share a feature's attribution proportionally to the colliding
keys' counts. Token weights therefore sum to logit(x) - logit(baseline).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .aspects import LABEL_INDEX, AspectLabel
from .classifier import AspectClassifier, featurize, hash_feature
from .tokenization import tokenize


@dataclass(frozen=True)
class TokenAttribution:
    token: str
    weight: float


def _logit_gradient(clf: AspectClassifier, target_idx: int, idx: np.ndarray, _x: np.ndarray) -> np.ndarray:
    # Linear head: the gradient of the target logit is the weight row,
    # independent of the evaluation point.
    return clf.weights[target_idx, idx]


def feature_attributions(
    clf: AspectClassifier, features: dict[int, float], target: AspectLabel, steps: int = 64
) -> dict[int, float]:
    """attr_f = x_f * (1/m) * sum_k dlogit/dx_f evaluated at the k-th midpoint."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if not features:
        return {}
    target_idx = LABEL_INDEX[target]
    idx = np.fromiter(features.keys(), dtype=np.int64)
    x = np.fromiter(features.values(), dtype=np.float64)
    grad_sum = np.zeros_like(x)
    for k in range(steps):
        alpha = (k + 0.5) / steps
        grad_sum += _logit_gradient(clf, target_idx, idx, alpha * x)
    attrs = x * grad_sum / steps
    return {int(i): float(a) for i, a in zip(idx, attrs)}


def token_attributions(
    clf: AspectClassifier, sentence: str, target: AspectLabel, steps: int = 64
) -> list[TokenAttribution]:
    """Per-token weights for every token of the sentence, in order."""
    tokens = tokenize(sentence)
    features = featurize(sentence, clf.featurizer)
    attrs = feature_attributions(clf, features, target, steps)

    seed, dim = clf.featurizer.hash_seed, clf.featurizer.feature_dim
    # (feature index, token position, share) for every key instance
    instances: list[tuple[int, int, float]] = []
    for pos, tok in enumerate(tokens):
        instances.append((hash_feature(f"u:{tok}", seed, dim), pos, 1.0))
    for pos, (a, b) in enumerate(zip(tokens, tokens[1:])):
        f = hash_feature(f"b:{a} {b}", seed, dim)
        instances.append((f, pos, 0.5))
        instances.append((f, pos + 1, 0.5))

    per_feature_instances: dict[int, float] = {}
    for f, _pos, share in instances:
        per_feature_instances[f] = per_feature_instances.get(f, 0.0) + share

    weights = [0.0] * len(tokens)
    for f, pos, share in instances:
        attr = attrs.get(f, 0.0)
        if attr != 0.0:
            weights[pos] += attr * share / per_feature_instances[f]
    return [TokenAttribution(tok, w) for tok, w in zip(tokens, weights)]
