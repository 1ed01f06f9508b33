"""The writing style model: an additively smoothed n-gram language model.

Sentence perplexity is exp of the mean negative log-probability over the
token sequence plus the end marker; lower means more typical of the
training conference. quantize_quality folds perplexity onto the 1-5 scale
through the conference's percentile boundaries (lower perplexity, higher
score).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .corpus import Corpus
from .tokenization import tokenize

BOS = "<s>"
EOS = "</s>"
UNK = "<unk>"


@dataclass
class StyleModel:
    n: int
    alpha: float
    counts: dict[tuple[str, ...], Counter] = field(default_factory=dict)
    context_totals: dict[tuple[str, ...], int] = field(default_factory=dict)
    vocab: set[str] = field(default_factory=set)

    @property
    def vocab_size(self) -> int:
        return len(self.vocab)

    def _normalize(self, token: str) -> str:
        return token if token in self.vocab else UNK

    def token_prob(self, context: tuple[str, ...], token: str) -> float:
        token = self._normalize(token)
        ctx_counts = self.counts.get(context)
        count = ctx_counts[token] if ctx_counts else 0
        total = self.context_totals.get(context, 0)
        return (count + self.alpha) / (total + self.alpha * self.vocab_size)


def train_style_lm(corpus: Corpus, n: int = 2, alpha: float = 0.1) -> StyleModel:
    if n < 1:
        raise ValueError("n must be >= 1")
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    sentences = [tokenize(s.text) for rec in corpus.records for s in rec.sentences]
    if not sentences:
        raise ValueError("empty corpus")

    lm = StyleModel(n=n, alpha=alpha)
    for tokens in sentences:
        lm.vocab.update(tokens)
    lm.vocab.add(EOS)
    lm.vocab.add(UNK)

    for tokens in sentences:
        padded = [BOS] * (n - 1) + tokens + [EOS]
        for i in range(n - 1, len(padded)):
            context = tuple(padded[i - n + 1 : i])
            token = padded[i]
            lm.counts.setdefault(context, Counter())[token] += 1
            lm.context_totals[context] = lm.context_totals.get(context, 0) + 1
    return lm


def sentence_perplexity(lm: StyleModel, sentence: str) -> float:
    """exp(-(1/T) * sum log P(token | context)); T counts the end marker."""
    tokens = [lm._normalize(t) for t in tokenize(sentence)]
    padded = [BOS] * (lm.n - 1) + tokens + [EOS]
    log_sum = 0.0
    steps = 0
    for i in range(lm.n - 1, len(padded)):
        context = tuple(padded[i - lm.n + 1 : i])
        log_sum += math.log(lm.token_prob(context, padded[i]))
        steps += 1
    return math.exp(-log_sum / steps)


def quantize_quality(ppl: float, boundaries: tuple[float, float, float, float]) -> int:
    """Map a perplexity onto quality levels 5 (best) down to 1.

    A value equal to a boundary lands in the better bucket.
    """
    if not math.isfinite(ppl):
        raise ValueError(f"non-finite perplexity: {ppl}")
    b1, b2, b3, b4 = boundaries
    if not (b1 < b2 < b3 < b4):
        raise ValueError(f"boundaries must be strictly ascending: {boundaries}")
    if ppl <= b1:
        return 5
    if ppl <= b2:
        return 4
    if ppl <= b3:
        return 3
    if ppl <= b4:
        return 2
    return 1
