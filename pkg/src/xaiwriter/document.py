"""A submitted abstract with its per-sentence predictions and review."""

from __future__ import annotations

from dataclasses import dataclass

from .classifier import AspectClassifier, Prediction, predict_aspect
from .corpus import ConferenceProfile
from .review import AbstractReview, build_review
from .segmenter import segment_abstract
from .style_lm import StyleModel, quantize_quality, sentence_perplexity


@dataclass(frozen=True)
class SentenceAnalysis:
    index: int
    text: str
    span: tuple[int, int]
    prediction: Prediction
    perplexity: float
    quality_score: int


@dataclass
class AbstractDocument:
    raw_text: str
    sentences: list[SentenceAnalysis]
    review: AbstractReview
    revision: int

    def labels(self):
        return [s.prediction.label for s in self.sentences]


def analyze_abstract(
    text: str,
    clf: AspectClassifier,
    lm: StyleModel,
    profile: ConferenceProfile,
    revision: int = 1,
) -> AbstractDocument:
    """Segment, predict aspect + confidence + perplexity + quality per
    sentence, then build the integrated review."""
    if not text or not text.strip():
        raise ValueError("empty abstract")
    spans = segment_abstract(text)
    if not spans:
        raise ValueError("no sentences found in abstract")

    analyses = []
    for i, span in enumerate(spans):
        prediction = predict_aspect(clf, span.text)
        ppl = sentence_perplexity(lm, span.text)
        analyses.append(
            SentenceAnalysis(
                index=i,
                text=span.text,
                span=(span.start, span.end),
                prediction=prediction,
                perplexity=ppl,
                quality_score=quantize_quality(ppl, profile.quality_boundaries),
            )
        )

    review = build_review(
        sentences=[a.text for a in analyses],
        predicted=[a.prediction.label for a in analyses],
        quality_scores=[a.quality_score for a in analyses],
        profile=profile,
    )
    return AbstractDocument(raw_text=text, sentences=analyses, review=review, revision=revision)
