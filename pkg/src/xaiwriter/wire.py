"""Wire-format serialization for the service.

All payloads are plain JSON objects documented in schemas/wire.json.
Structured attachments are carried verbatim (typed by a "type" field) so
any client can render them; the service never pre-renders visuals.
Unknown fields are ignored on input and never emitted on output.
"""

from __future__ import annotations

from .aspects import ALL_LABELS
from .dialogue import DialogueResponse, UsageStats
from .document import AbstractDocument
from .explainers import (
    AttributionMap,
    CounterfactualCandidate,
    ExampleList,
    ExplanationPayload,
    ScoreCard,
)

WIRE_FORMAT_VERSION = 1


def _round(value: float, digits: int) -> float:
    return round(float(value), digits)


def attachment_to_wire(attachment) -> dict:
    if isinstance(attachment, ScoreCard):
        return {
            "type": "score_card",
            "title": attachment.title,
            "entries": [[name, value] for name, value in attachment.entries],
        }
    if isinstance(attachment, ExampleList):
        return {
            "type": "example_list",
            "examples": [
                {
                    "sentence": e.sentence,
                    "label": e.label.value,
                    "similarity": _round(e.similarity, 6),
                    "quality": e.quality,
                }
                for e in attachment.entries
            ],
        }
    if isinstance(attachment, AttributionMap):
        return {
            "type": "attribution_map",
            "tokens": list(attachment.tokens),
            "weights": [_round(w, 6) for w in attachment.weights],
            "top_k": attachment.top_k,
            "target_label": attachment.target_label.value,
        }
    if isinstance(attachment, CounterfactualCandidate):
        return {
            "type": "counterfactual",
            "text": attachment.text,
            "re_predicted_label": attachment.re_predicted_label.value,
            "provenance": attachment.provenance,
            "achieved_target": attachment.achieved_target,
        }
    raise TypeError(f"unknown attachment type: {type(attachment).__name__}")


def payload_to_wire(payload: ExplanationPayload) -> dict:
    return {
        "intent": payload.intent.value,
        "text": payload.text,
        "attachments": [attachment_to_wire(a) for a in payload.attachments],
        "followups": [f.value for f in payload.followups],
    }


def dialogue_response_to_wire(response: DialogueResponse) -> dict:
    return {
        "payload": payload_to_wire(response.payload),
        "state_delta": response.state_delta,
        "quick_replies": [
            {"label": label, "utterance": utterance}
            for label, utterance in response.quick_replies
        ],
    }


def document_to_wire(document: AbstractDocument, conference: str) -> dict:
    return {
        "conference": conference,
        "revision": document.revision,
        "sentences": [
            {
                "index": s.index,
                "text": s.text,
                "span": [s.span[0], s.span[1]],
                "label": s.prediction.label.value,
                "confidence": _round(s.prediction.confidence, 4),
                "probabilities": {
                    label.value: _round(p, 4)
                    for label, p in zip(ALL_LABELS, s.prediction.probabilities)
                },
                "perplexity": _round(s.perplexity, 4),
                "quality_score": s.quality_score,
            }
            for s in document.sentences
        ],
        "review": {
            "items": [
                {
                    "kind": item.kind.value,
                    "sentence_index": item.sentence_index,
                    "message": item.message,
                    "suggested_label": item.suggested_label.value if item.suggested_label else None,
                    "quality_score": item.quality_score,
                }
                for item in document.review.items
            ],
            "overall_style": _round(document.review.overall_style, 4),
            "overall_structure": _round(document.review.overall_structure, 4),
            "overall": _round(document.review.overall, 4),
        },
    }


def usage_stats_to_wire(stats: UsageStats) -> dict:
    return stats.as_dict()
