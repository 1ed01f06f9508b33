"""The conversational pipeline: intent resolution, context-default merging,
explainer dispatch, template rendering with controllability hints, and the
per-session state tracker.

Turns within a session are strictly serial; the caller (service layer)
guarantees that. Everything here is deterministic given fixed artifacts,
so replaying a session's utterances reproduces its responses.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from .aspects import AspectLabel
from .classifier import AspectClassifier
from .corpus import ConferenceProfile
from .document import AbstractDocument
from .explainers import (
    ExampleIndex,
    ExplanationPayload,
    ExplanationVariables,
    FOLLOWUPS,
    GLOBAL_INTENTS,
    INTENT_ACTIONS,
    Intent,
    explain_attribution,
    explain_confidence,
    explain_counterfactual,
    explain_examples,
    explain_global,
    explain_suggestion,
)
from .generator import ExternalGenerator
from .nlu import canned_utterance, classify_intent, parse_variables
from .review import ReviewKind
from .style_lm import StyleModel
from .templates import MissingTemplateError, render

logger = logging.getLogger(__name__)

# Intents that explain one particular sentence and so need a selection.
SENTENCE_INTENTS = (
    Intent.CONFIDENCE,
    Intent.EXAMPLE,
    Intent.ATTRIBUTION,
    Intent.COUNTERFACTUAL,
    Intent.SUGGESTION,
)

INTENT_TITLES: dict[Intent, str] = {
    Intent.DATA_STATS: "Data statistics",
    Intent.MODEL_DESCRIPTION: "Model description",
    Intent.QUALITY_MEANING: "Quality score meaning",
    Intent.LABEL_DISTRIBUTION: "Label distribution",
    Intent.SENTENCE_LENGTH: "Sentence length",
    Intent.CONFIDENCE: "Prediction confidence",
    Intent.EXAMPLE: "Similar examples",
    Intent.ATTRIBUTION: "Important words",
    Intent.COUNTERFACTUAL: "Counterfactual rewrite",
    Intent.SUGGESTION: "Explain this review",
}


@dataclass
class PendingContext:
    suggested_label: AspectLabel | None = None
    last_intent: Intent | None = None
    last_variables: ExplanationVariables | None = None


@dataclass(frozen=True)
class TurnRecord:
    turn_index: int
    utterance: str
    resolved_intent: Intent
    variables: ExplanationVariables
    timestamp: float


@dataclass
class DialogueState:
    session_id: str
    selected_sentence: int | None = None
    last_review_revision: int | None = None
    history: list[TurnRecord] = field(default_factory=list)
    pending: PendingContext = field(default_factory=PendingContext)

    def clear_context(self) -> None:
        """A resubmission invalidates the old review and selection."""
        self.selected_sentence = None
        self.pending = PendingContext()


@dataclass
class DialogueResponse:
    payload: ExplanationPayload
    state_delta: dict
    quick_replies: list[tuple[str, str]]


@dataclass
class Artifacts:
    """Shared immutable artifacts a session answers from."""

    classifier: AspectClassifier
    style_lm: StyleModel
    profile: ConferenceProfile
    index: ExampleIndex
    generator: ExternalGenerator | None = None


def render_response(template_id: str, **slots) -> str:
    """Render a keyed template; a missing template falls back to the help
    message and leaves a diagnostic in the log."""
    try:
        return render(template_id, **slots)
    except MissingTemplateError:
        logger.warning("missing template %r; using fallback", template_id)
        return render("dialogue.fallback")


def _quick_replies(intents: list[Intent]) -> list[tuple[str, str]]:
    return [(INTENT_TITLES[i], canned_utterance(i)) for i in intents if i in INTENT_TITLES]


def _control_hint(followups: list[Intent]) -> str:
    options = [INTENT_ACTIONS[i] for i in followups[:2] if i in INTENT_ACTIONS]
    if not options:
        return ""
    return render("dialogue.control_hint", options=" or ".join(options))


def _state_delta(state: DialogueState) -> dict:
    return {
        "selected_sentence": state.selected_sentence,
        "suggested_label": state.pending.suggested_label.value
        if state.pending.suggested_label
        else None,
        "last_intent": state.pending.last_intent.value if state.pending.last_intent else None,
    }


def _structure_suggestion_for(document: AbstractDocument, index: int) -> AspectLabel | None:
    for item in document.review.items:
        if item.kind is ReviewKind.STRUCTURE and item.sentence_index == index:
            return item.suggested_label
    return None


def select_sentence(
    state: DialogueState, index: int, document: AbstractDocument, artifacts: Artifacts
) -> DialogueResponse:
    """Point the conversation at one sentence; the response surfaces the
    sentence's review entry (if any) with follow-up buttons."""
    if index < 0 or index >= len(document.sentences):
        raise IndexError(f"sentence index {index} out of range")
    state.selected_sentence = index
    state.last_review_revision = document.revision
    state.pending.suggested_label = _structure_suggestion_for(document, index)

    items = [it for it in document.review.items if it.sentence_index == index]
    sentence = document.sentences[index]
    if items:
        payload = explain_suggestion(items[0], document.review, artifacts.profile)
        payload.text = (
            render_response("dialogue.selected", index=index + 1, text=sentence.text)
            + " "
            + items[0].message
            + " "
            + payload.text
        )
    else:
        payload = ExplanationPayload(
            Intent.SUGGESTION,
            render_response("dialogue.selected", index=index + 1, text=sentence.text)
            + " "
            + render_response("suggestion.none", index=index + 1),
            [],
            [Intent.CONFIDENCE, Intent.EXAMPLE],
        )
    return DialogueResponse(payload, _state_delta(state), _quick_replies(payload.followups))


def _needs_selection_response(state: DialogueState) -> DialogueResponse:
    payload = ExplanationPayload(
        Intent.FALLBACK,
        render_response("dialogue.need_selection"),
        [],
        list(FOLLOWUPS[Intent.FALLBACK]),
    )
    return DialogueResponse(payload, _state_delta(state), _quick_replies(payload.followups))


def respond(
    state: DialogueState,
    utterance: str,
    document: AbstractDocument | None,
    artifacts: Artifacts,
    timestamp: float | None = None,
) -> DialogueResponse:
    """One full turn: NLU, context defaults, explainer, NLG."""
    intent, _confidence = classify_intent(utterance, state.pending.last_intent)
    parsed = parse_variables(utterance, intent)
    variables = parsed.variables

    # Context-aware defaults; parsed (explicit) values always win.
    if intent in (Intent.COUNTERFACTUAL, Intent.ATTRIBUTION):
        variables = variables.merged_with_defaults(target_label=state.pending.suggested_label)

    turn = TurnRecord(
        turn_index=len(state.history),
        utterance=utterance,
        resolved_intent=intent,
        variables=variables,
        timestamp=time.time() if timestamp is None else timestamp,
    )
    state.history.append(turn)

    payload = _dispatch(intent, variables, state, document, artifacts)

    state.pending.last_intent = intent
    state.pending.last_variables = variables

    text = payload.text
    if parsed.notices:
        text += " " + " ".join(f"({n})" for n in parsed.notices)
    text += _control_hint(payload.followups)
    payload.text = text

    quick = _quick_replies(payload.followups)
    if not quick:  # mixed initiative: never leave the user without a next step
        quick = _quick_replies(list(FOLLOWUPS[Intent.FALLBACK]))
    return DialogueResponse(payload, _state_delta(state), quick)


def _dispatch(
    intent: Intent,
    variables: ExplanationVariables,
    state: DialogueState,
    document: AbstractDocument | None,
    artifacts: Artifacts,
) -> ExplanationPayload:
    if document is None:
        return ExplanationPayload(
            intent,
            render_response("dialogue.need_submission"),
            [],
            [Intent.DATA_STATS, Intent.MODEL_DESCRIPTION],
        )

    if intent is Intent.FALLBACK:
        return ExplanationPayload(
            intent,
            render_response("dialogue.fallback"),
            [],
            list(FOLLOWUPS[Intent.FALLBACK]),
        )

    if intent in GLOBAL_INTENTS:
        sentence = None
        if intent is Intent.SENTENCE_LENGTH and state.selected_sentence is not None:
            sentence = document.sentences[state.selected_sentence].text
        return explain_global(intent, artifacts.profile, sentence=sentence)

    # Everything below explains one sentence.
    if state.selected_sentence is None:
        return ExplanationPayload(
            intent,
            render_response("dialogue.need_selection"),
            [],
            list(FOLLOWUPS[Intent.FALLBACK]),
        )
    sentence = document.sentences[state.selected_sentence]

    if intent is Intent.CONFIDENCE:
        model = "style" if "style" in utterance_tokens(state) else "structure"
        return explain_confidence(sentence.prediction, model=model)

    if intent is Intent.EXAMPLE:
        return explain_examples(
            artifacts.classifier,
            sentence.text,
            sentence.prediction.label,
            variables,
            artifacts.index,
        )

    if intent is Intent.ATTRIBUTION:
        return explain_attribution(artifacts.classifier, sentence.text, variables)

    if intent is Intent.COUNTERFACTUAL:
        target = variables.target_label
        if target is None:
            return ExplanationPayload(
                intent,
                render_response("counterfactual.need_target"),
                [],
                [Intent.EXAMPLE, Intent.LABEL_DISTRIBUTION],
            )
        return explain_counterfactual(
            artifacts.classifier,
            sentence.text,
            sentence.prediction.label,
            target,
            artifacts.index,
            artifacts.generator,
        )

    # Suggestion: explain the selected sentence's review entry.
    items = [it for it in document.review.items if it.sentence_index == state.selected_sentence]
    if not items:
        return ExplanationPayload(
            Intent.SUGGESTION,
            render_response("suggestion.none", index=state.selected_sentence + 1),
            [],
            [Intent.CONFIDENCE, Intent.EXAMPLE],
        )
    payload = explain_suggestion(items[0], document.review, artifacts.profile)
    if payload.intent is Intent.SUGGESTION and items[0].kind is ReviewKind.STRUCTURE:
        state.pending.suggested_label = items[0].suggested_label
    return payload


def utterance_tokens(state: DialogueState) -> set[str]:
    if not state.history:
        return set()
    return set(state.history[-1].utterance.lower().split())


@dataclass(frozen=True)
class UsageStats:
    intents: dict[Intent, int]
    fallback: int

    def as_dict(self) -> dict:
        return {
            "intents": {intent.value: count for intent, count in self.intents.items()},
            "fallback": self.fallback,
        }


def export_usage_stats(history: list[TurnRecord]) -> UsageStats:
    """Per-intent request counts across turns; Fallback reported separately."""
    counts = {intent: 0 for intent in Intent if intent is not Intent.FALLBACK}
    fallback = 0
    for turn in history:
        if turn.resolved_intent is Intent.FALLBACK:
            fallback += 1
        else:
            counts[turn.resolved_intent] += 1
    return UsageStats(counts, fallback)
