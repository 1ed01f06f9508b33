"""The ten explanation generators behind the XAI agent.

Every explainer takes whatever artifacts it needs plus the user's
customization variables and returns an ExplanationPayload: rendered text,
typed attachments for client-side visuals, and mixed-initiative follow-up
suggestions. All explainers are deterministic over immutable artifacts;
only the external generator path is not, and its outputs are marked by
provenance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .aspects import ALL_LABELS, AspectLabel
from .attribution import token_attributions
from .classifier import AspectClassifier, Prediction, SentenceEmbedding, embed_sentence, predict_aspect
from .corpus import ConferenceProfile
from .generator import ExternalGenerator, GeneratorError
from .review import AbstractReview, ReviewItem, ReviewKind, STYLE_FLAG_THRESHOLD
from .templates import render
from .tokenization import tokenize


class Intent(str, enum.Enum):
    DATA_STATS = "data_stats"
    MODEL_DESCRIPTION = "model_description"
    QUALITY_MEANING = "quality_meaning"
    LABEL_DISTRIBUTION = "label_distribution"
    SENTENCE_LENGTH = "sentence_length"
    CONFIDENCE = "confidence"
    EXAMPLE = "example"
    ATTRIBUTION = "attribution"
    COUNTERFACTUAL = "counterfactual"
    SUGGESTION = "suggestion"
    FALLBACK = "fallback"


EXPLANATION_INTENTS = tuple(i for i in Intent if i is not Intent.FALLBACK)

GLOBAL_INTENTS = (
    Intent.DATA_STATS,
    Intent.MODEL_DESCRIPTION,
    Intent.QUALITY_MEANING,
    Intent.LABEL_DISTRIBUTION,
    Intent.SENTENCE_LENGTH,
)


class RankMethod(str, enum.Enum):
    SIMILARITY = "similarity"
    QUALITY = "quality"


MAX_EXAMPLE_COUNT = 10
DEFAULT_EXAMPLE_COUNT = 3
DEFAULT_TOP_K = 5
DEFAULT_IG_STEPS = 64


@dataclass(frozen=True)
class ExplanationVariables:
    target_label: AspectLabel | None = None
    example_count: int | None = None
    rank_method: RankMethod | None = None
    keyword: str | None = None
    top_k: int | None = None
    ig_steps: int = DEFAULT_IG_STEPS

    def merged_with_defaults(self, **defaults) -> "ExplanationVariables":
        """Fill unset fields from context defaults; explicit values win."""
        updates = {k: v for k, v in defaults.items() if getattr(self, k) is None and v is not None}
        return replace(self, **updates) if updates else self


# --- attachments -----------------------------------------------------------

@dataclass(frozen=True)
class ScoreCard:
    title: str
    entries: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class ExampleEntry:
    sentence: str
    label: AspectLabel
    similarity: float
    quality: int


@dataclass(frozen=True)
class ExampleList:
    entries: tuple[ExampleEntry, ...]


@dataclass(frozen=True)
class AttributionMap:
    tokens: tuple[str, ...]
    weights: tuple[float, ...]
    top_k: int
    target_label: AspectLabel


PROVENANCE_RETRIEVAL = "retrieval"
PROVENANCE_GENERATOR = "external_generator"


@dataclass(frozen=True)
class CounterfactualCandidate:
    text: str
    re_predicted_label: AspectLabel
    provenance: str
    achieved_target: bool


@dataclass
class ExplanationPayload:
    intent: Intent
    text: str
    attachments: list = field(default_factory=list)
    followups: list[Intent] = field(default_factory=list)


FOLLOWUPS: dict[Intent, tuple[Intent, ...]] = {
    Intent.DATA_STATS: (Intent.LABEL_DISTRIBUTION, Intent.SENTENCE_LENGTH),
    Intent.MODEL_DESCRIPTION: (Intent.CONFIDENCE, Intent.ATTRIBUTION),
    Intent.QUALITY_MEANING: (Intent.EXAMPLE, Intent.DATA_STATS),
    Intent.LABEL_DISTRIBUTION: (Intent.DATA_STATS, Intent.EXAMPLE),
    Intent.SENTENCE_LENGTH: (Intent.EXAMPLE,),
    Intent.CONFIDENCE: (Intent.COUNTERFACTUAL, Intent.EXAMPLE),
    Intent.EXAMPLE: (Intent.COUNTERFACTUAL, Intent.ATTRIBUTION),
    Intent.ATTRIBUTION: (Intent.COUNTERFACTUAL, Intent.EXAMPLE),
    Intent.COUNTERFACTUAL: (Intent.EXAMPLE, Intent.ATTRIBUTION),
    Intent.FALLBACK: (Intent.SUGGESTION, Intent.CONFIDENCE, Intent.EXAMPLE),
}

# Use-pattern hints attached to suggestion explanations, per review kind.
SUGGESTION_FOLLOWUPS: dict[ReviewKind, tuple[Intent, ...]] = {
    ReviewKind.STRUCTURE: (Intent.COUNTERFACTUAL, Intent.EXAMPLE),
    ReviewKind.STYLE: (Intent.EXAMPLE, Intent.ATTRIBUTION),
    ReviewKind.LENGTH: (Intent.SENTENCE_LENGTH, Intent.EXAMPLE),
}

INTENT_ACTIONS: dict[Intent, str] = {
    Intent.DATA_STATS: "see the training data statistics",
    Intent.MODEL_DESCRIPTION: "read about the underlying models",
    Intent.QUALITY_MEANING: "see what the quality score means",
    Intent.LABEL_DISTRIBUTION: "see the label distribution",
    Intent.SENTENCE_LENGTH: "compare this sentence's length with the conference norm",
    Intent.CONFIDENCE: "check the prediction confidence",
    Intent.EXAMPLE: "look at similar published examples",
    Intent.ATTRIBUTION: "see which words drive the prediction",
    Intent.COUNTERFACTUAL: "ask for a counterfactual rewrite",
    Intent.SUGGESTION: "ask how a review item was generated",
}


class MissingCardError(ValueError):
    pass


def _label_mix(profile: ConferenceProfile) -> str:
    return ", ".join(
        f"{label.value} {100.0 * profile.label_distribution[label]:.1f}%" for label in ALL_LABELS
    )


def _distribution_card(profile: ConferenceProfile) -> ScoreCard:
    return ScoreCard(
        title=f"Label distribution ({profile.conference})",
        entries=tuple(
            (label.value, f"{100.0 * profile.label_distribution[label]:.1f}%")
            for label in ALL_LABELS
        ),
    )


def explain_global(
    kind: Intent, profile: ConferenceProfile, sentence: str | None = None
) -> ExplanationPayload:
    """The five profile-backed explanations (data, model, score meaning,
    label distribution, sentence length)."""
    if kind not in GLOBAL_INTENTS:
        raise ValueError(f"not a global explanation intent: {kind}")
    followups = list(FOLLOWUPS[kind])

    if kind is Intent.DATA_STATS:
        if not profile.data_card.strip():
            raise MissingCardError(f"no data card for {profile.conference}")
        text = render(
            "global.data_stats",
            card=profile.data_card,
            n_abstracts=profile.n_abstracts,
            n_sentences=profile.n_sentences,
            label_mix=_label_mix(profile),
        )
        return ExplanationPayload(kind, text, [_distribution_card(profile)], followups)

    if kind is Intent.MODEL_DESCRIPTION:
        if not profile.model_card.strip():
            raise MissingCardError(f"no model card for {profile.conference}")
        text = render("global.model_description", card=profile.model_card)
        return ExplanationPayload(kind, text, [], followups)

    if kind is Intent.QUALITY_MEANING:
        b1, b2, b3, b4 = (f"{b:.2f}" for b in profile.quality_boundaries)
        text = render("global.quality_meaning", b1=b1, b2=b2, b3=b3, b4=b4)
        card = ScoreCard(
            title=f"Quality level boundaries ({profile.conference})",
            entries=(
                ("score 5", f"perplexity <= {b1}"),
                ("score 4", f"perplexity <= {b2}"),
                ("score 3", f"perplexity <= {b3}"),
                ("score 2", f"perplexity <= {b4}"),
                ("score 1", f"perplexity > {b4}"),
            ),
        )
        return ExplanationPayload(kind, text, [card], followups)

    if kind is Intent.LABEL_DISTRIBUTION:
        text = render(
            "global.label_distribution",
            conference=profile.conference,
            label_mix=_label_mix(profile),
        )
        return ExplanationPayload(kind, text, [_distribution_card(profile)], followups)

    # sentence length
    stats = profile.length_stats
    card = ScoreCard(
        title=f"Sentence length ({profile.conference})",
        entries=(
            ("mean", f"{stats.mean:.1f} tokens"),
            ("5th percentile", f"{stats.p5} tokens"),
            ("95th percentile", f"{stats.p95} tokens"),
        ),
    )
    if sentence is None:
        text = render(
            "global.sentence_length.stats",
            conference=profile.conference,
            mean=f"{stats.mean:.1f}",
            low=stats.p5,
            high=stats.p95,
        )
    else:
        count = len(tokenize(sentence))
        template = (
            "global.sentence_length.in"
            if stats.p5 <= count <= stats.p95
            else "global.sentence_length.out"
        )
        text = render(
            template,
            count=count,
            low=stats.p5,
            high=stats.p95,
            conference=profile.conference,
            mean=f"{stats.mean:.1f}",
        )
    return ExplanationPayload(kind, text, [card], followups)


def explain_confidence(prediction: Prediction, model: str = "structure") -> ExplanationPayload:
    """Softmax confidence of the structure model; explicitly unavailable
    for the style model."""
    followups = list(FOLLOWUPS[Intent.CONFIDENCE])
    if model == "style":
        return ExplanationPayload(
            Intent.CONFIDENCE, render("confidence.style_na"), [], followups
        )
    text = render(
        "confidence.ok", label=prediction.label.value, confidence=f"{prediction.confidence:.2f}"
    )
    card = ScoreCard(
        title="Prediction probabilities",
        entries=tuple(
            (label.value, f"{p:.2f}") for label, p in zip(ALL_LABELS, prediction.probabilities)
        ),
    )
    return ExplanationPayload(Intent.CONFIDENCE, text, [card], followups)


# --- similar examples ------------------------------------------------------

@dataclass(frozen=True)
class IndexEntry:
    text: str
    label: AspectLabel
    quality: int
    embedding: SentenceEmbedding


@dataclass
class ExampleIndex:
    conference: str
    entries: list[IndexEntry] = field(default_factory=list)

    def top_similar(self, query: SentenceEmbedding, label: AspectLabel, count: int) -> list[IndexEntry]:
        candidates = [e for e in self.entries if e.label == label]
        candidates.sort(key=lambda e: -query.dot(e.embedding))
        return candidates[:count]


def explain_examples(
    clf: AspectClassifier,
    query_sentence: str,
    predicted_label: AspectLabel,
    variables: ExplanationVariables,
    index: ExampleIndex,
) -> ExplanationPayload:
    """Retrieve similar published sentences, honoring the four
    customization variables (target-label, example-count, rank-method,
    keyword)."""
    if not index.entries:
        raise ValueError("empty example index")
    target = variables.target_label or predicted_label
    count = min(variables.example_count or DEFAULT_EXAMPLE_COUNT, MAX_EXAMPLE_COUNT)
    rank = variables.rank_method or RankMethod.SIMILARITY
    followups = list(FOLLOWUPS[Intent.EXAMPLE])

    query = embed_sentence(clf, query_sentence)
    candidates = [e for e in index.entries if e.label == target]
    if variables.keyword:
        needle = variables.keyword.lower()
        candidates = [e for e in candidates if needle in e.text.lower()]
    if not candidates:
        keyword_note = f" containing {variables.keyword!r}" if variables.keyword else ""
        text = render(
            "example.none",
            label=target.value,
            keyword_note=keyword_note,
            conference=index.conference,
        )
        return ExplanationPayload(Intent.EXAMPLE, text, [], followups)

    scored = [(query.dot(e.embedding), e) for e in candidates]
    if rank is RankMethod.SIMILARITY:
        scored.sort(key=lambda pair: -pair[0])
    else:
        scored.sort(key=lambda pair: (-pair[1].quality, -pair[0]))
    chosen = scored[:count]

    text = render(
        "example.ok",
        count=len(chosen),
        label=target.value,
        conference=index.conference,
        rank=rank.value,
    )
    attachment = ExampleList(
        entries=tuple(
            ExampleEntry(e.text, e.label, round(sim, 6), e.quality) for sim, e in chosen
        )
    )
    return ExplanationPayload(Intent.EXAMPLE, text, [attachment], followups)


# --- important words -------------------------------------------------------

def explain_attribution(
    clf: AspectClassifier, sentence: str, variables: ExplanationVariables
) -> ExplanationPayload:
    """Integrated-gradients word importance for the (target or predicted)
    label; highlights the top_k tokens by absolute weight."""
    if not sentence.strip():
        raise ValueError("empty sentence")
    target = variables.target_label or predict_aspect(clf, sentence).label
    attributions = token_attributions(clf, sentence, target, steps=variables.ig_steps)
    n_tokens = len(attributions)
    if n_tokens == 0:
        raise ValueError("sentence has no tokens to attribute")

    requested_k = variables.top_k or DEFAULT_TOP_K
    top_k = min(requested_k, n_tokens)
    ranked = sorted(
        range(n_tokens), key=lambda i: (-abs(attributions[i].weight), i)
    )[:top_k]
    words = ", ".join(attributions[i].token for i in ranked)

    text = render("attribution.ok", k=top_k, label=target.value, words=words)
    if requested_k > n_tokens:
        text += render("attribution.clamp_note", count=n_tokens)
    attachment = AttributionMap(
        tokens=tuple(a.token for a in attributions),
        weights=tuple(a.weight for a in attributions),
        top_k=top_k,
        target_label=target,
    )
    return ExplanationPayload(
        Intent.ATTRIBUTION, text, [attachment], list(FOLLOWUPS[Intent.ATTRIBUTION])
    )


# --- counterfactual rewrites -----------------------------------------------

REWRITE_EXAMPLES_PER_LABEL = 5


def build_rewrite_prompt(
    clf: AspectClassifier, index: ExampleIndex, sentence: str, target: AspectLabel
) -> str:
    """In-context prompt: top similar sentences per aspect, then the
    rewrite instruction."""
    query = embed_sentence(clf, sentence)
    lines = []
    for label in ALL_LABELS:
        for entry in index.top_similar(query, label, REWRITE_EXAMPLES_PER_LABEL):
            lines.append(f"{entry.text} is labeled {label.value}")
    lines.append(f"Rewrite {sentence} into label {target.value}")
    return "\n".join(lines)


def explain_counterfactual(
    clf: AspectClassifier,
    sentence: str,
    predicted_label: AspectLabel,
    target: AspectLabel,
    index: ExampleIndex,
    generator: ExternalGenerator | None = None,
) -> ExplanationPayload:
    """A rewrite aimed at the target label: external generator when
    configured, retrieval fallback otherwise. The candidate is re-predicted
    and flagged when it misses the target."""
    followups = list(FOLLOWUPS[Intent.COUNTERFACTUAL])
    if target == predicted_label:
        text = render("counterfactual.same_label", label=predicted_label.value)
        return ExplanationPayload(Intent.COUNTERFACTUAL, text, [], followups)

    candidate_text: str | None = None
    provenance = PROVENANCE_RETRIEVAL
    fallback_note = ""
    if generator is not None:
        prompt = build_rewrite_prompt(clf, index, sentence, target)
        try:
            candidate_text = generator.complete(prompt)
            provenance = PROVENANCE_GENERATOR
        except GeneratorError:
            fallback_note = "(external generator unavailable; showing a retrieved reference) "

    if candidate_text is None:
        query = embed_sentence(clf, sentence)
        matches = index.top_similar(query, target, 1)
        if not matches:
            text = render("counterfactual.no_candidate", target=target.value)
            return ExplanationPayload(Intent.COUNTERFACTUAL, text, [], followups)
        candidate_text = matches[0].text

    re_predicted = predict_aspect(clf, candidate_text).label
    achieved = re_predicted == target
    flag_note = "" if achieved else ", which does not yet match the target label"
    text = fallback_note + render(
        "counterfactual.ok",
        provenance="generated" if provenance == PROVENANCE_GENERATOR else "retrieved",
        target=target.value,
        text=candidate_text,
        re_predicted=re_predicted.value,
        flag_note=flag_note,
    )
    attachment = CounterfactualCandidate(candidate_text, re_predicted, provenance, achieved)
    return ExplanationPayload(Intent.COUNTERFACTUAL, text, [attachment], followups)


# --- suggestion (tutorial) explanations -------------------------------------

def explain_suggestion(
    item: ReviewItem, review: AbstractReview, profile: ConferenceProfile
) -> ExplanationPayload:
    """How a review item was derived, plus an improving message pointing at
    the explanation methods that usually resolve it."""
    if item not in review.items:
        return ExplanationPayload(
            Intent.SUGGESTION,
            render("suggestion.stale"),
            [],
            list(SUGGESTION_FOLLOWUPS[item.kind]),
        )

    if item.kind is ReviewKind.STRUCTURE:
        body = render(
            "suggestion.structure",
            n_patterns=len(profile.patterns),
            conference=profile.conference,
            index=item.sentence_index + 1,
            suggested=item.suggested_label.value,
        )
    elif item.kind is ReviewKind.STYLE:
        body = render(
            "suggestion.style",
            score=item.quality_score,
            threshold=STYLE_FLAG_THRESHOLD,
            conference=profile.conference,
        )
    else:
        body = render(
            "suggestion.length",
            conference=profile.conference,
            low=profile.length_stats.p5,
            high=profile.length_stats.p95,
        )

    followups = list(SUGGESTION_FOLLOWUPS[item.kind])
    options = " or ".join(INTENT_ACTIONS[i] for i in followups)
    text = body + " " + render("suggestion.improve", options=options)
    return ExplanationPayload(Intent.SUGGESTION, text, [], followups)
