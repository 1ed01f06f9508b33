"""Integrated writing review: structure suggestions from DTW alignment
against the conference's benchmark patterns, style and length flags, and
the three overall scores."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .aspects import AspectLabel
from .corpus import ConferenceProfile, StructurePattern
from .dtw import dtw_align, label_mismatch_cost
from .templates import render
from .tokenization import tokenize

STYLE_FLAG_THRESHOLD = 2


class ReviewKind(str, enum.Enum):
    STRUCTURE = "structure"
    STYLE = "style"
    LENGTH = "length"


@dataclass(frozen=True)
class ReviewItem:
    kind: ReviewKind
    sentence_index: int
    message: str
    suggested_label: AspectLabel | None = None  # structure items only
    quality_score: int | None = None  # style items only


@dataclass(frozen=True)
class AbstractReview:
    items: tuple[ReviewItem, ...]
    overall_style: float
    overall_structure: float
    overall: float

    def structure_items(self) -> list[ReviewItem]:
        return [it for it in self.items if it.kind is ReviewKind.STRUCTURE]


def closest_pattern(
    predicted: list[AspectLabel], patterns: tuple[StructurePattern, ...]
) -> tuple[StructurePattern, object]:
    """The pattern with minimal DTW distance to the predicted sequence (first wins ties)."""
    if not predicted:
        raise ValueError("empty predicted sequence")
    if not patterns:
        raise ValueError("no patterns")
    best = None
    best_result = None
    for pattern in patterns:
        result = dtw_align(predicted, pattern.sequence, label_mismatch_cost)
        if best_result is None or result.distance < best_result.distance:
            best, best_result = pattern, result
    return best, best_result


def structure_review(
    predicted: list[AspectLabel], patterns: tuple[StructurePattern, ...]
) -> list[ReviewItem]:
    """One item per sentence whose majority-aligned pattern label differs
    from its predicted label."""
    pattern, result = closest_pattern(predicted, patterns)
    aligned: dict[int, list[int]] = {}
    for i, j in result.path:
        aligned.setdefault(i, []).append(j)

    items = []
    for i, label in enumerate(predicted):
        counts: dict[AspectLabel, int] = {}
        first_pos: dict[AspectLabel, int] = {}
        for j in aligned.get(i, []):
            pat_label = pattern.sequence[j]
            counts[pat_label] = counts.get(pat_label, 0) + 1
            first_pos.setdefault(pat_label, j)
        majority = max(counts, key=lambda lb: (counts[lb], -first_pos[lb]))
        if majority != label:
            items.append(
                ReviewItem(
                    kind=ReviewKind.STRUCTURE,
                    sentence_index=i,
                    message=render(
                        "review.structure",
                        index=i + 1,
                        current=label.value,
                        suggested=majority.value,
                    ),
                    suggested_label=majority,
                )
            )
    return items


def style_and_length_review(
    sentences: list[str],
    quality_scores: list[int],
    profile: ConferenceProfile,
    style_threshold: int = STYLE_FLAG_THRESHOLD,
) -> list[ReviewItem]:
    if len(sentences) != len(quality_scores):
        raise ValueError("sentences and quality_scores must have equal length")
    items = []
    low, high = profile.length_stats.p5, profile.length_stats.p95
    for i, (text, score) in enumerate(zip(sentences, quality_scores)):
        if score <= style_threshold:
            items.append(
                ReviewItem(
                    kind=ReviewKind.STYLE,
                    sentence_index=i,
                    message=render(
                        "review.style", index=i + 1, score=score, threshold=style_threshold
                    ),
                    quality_score=score,
                )
            )
        n_tokens = len(tokenize(text))
        if not (low <= n_tokens <= high):
            items.append(
                ReviewItem(
                    kind=ReviewKind.LENGTH,
                    sentence_index=i,
                    message=render(
                        "review.length", index=i + 1, count=n_tokens, low=low, high=high
                    ),
                )
            )
    return items


def overall_scores(
    items: list[ReviewItem], quality_scores: list[int]
) -> tuple[float, float, float]:
    """overall_style, overall_structure = 5 - 0.5 per structure item
    (clamped to [0, 5]), and their mean."""
    if not quality_scores:
        raise ValueError("quality_scores must be non-empty")
    n_structure = sum(1 for it in items if it.kind is ReviewKind.STRUCTURE)
    overall_style = sum(quality_scores) / len(quality_scores)
    overall_structure = min(max(5.0 - 0.5 * n_structure, 0.0), 5.0)
    overall = (overall_style + overall_structure) / 2.0
    return overall_style, overall_structure, overall


def build_review(
    sentences: list[str],
    predicted: list[AspectLabel],
    quality_scores: list[int],
    profile: ConferenceProfile,
) -> AbstractReview:
    items = structure_review(predicted, profile.patterns)
    items += style_and_length_review(sentences, quality_scores, profile)
    items.sort(key=lambda it: (it.sentence_index, it.kind.value))
    overall_style, overall_structure, overall = overall_scores(items, quality_scores)
    return AbstractReview(
        items=tuple(items),
        overall_style=overall_style,
        overall_structure=overall_structure,
        overall=overall,
    )
