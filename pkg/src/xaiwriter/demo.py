"""The scripted demo fixture: a deterministic synthetic conference, its
trained artifacts, and the canonical walkthrough transcript (submit,
review, select a flagged sentence, then drill down through confidence,
counterfactual, and example questions).

The walkthrough is the golden-file oracle for end-to-end determinism:
everything here must be a pure function of the seeds.
"""

from __future__ import annotations

import json
from pathlib import Path

from .artifacts import TrainSettings, train_artifacts
from .classifier import TrainConfig
from .dialogue import Artifacts
from .synthetic import synthetic_corpus

DEMO_CONFERENCE = "synthconf"

# Unigram style LM: demo quality scores should track word choice rather
# than the (randomised) word order of the synthetic training sentences.
DEMO_SETTINGS = TrainSettings(
    classifier=TrainConfig(epochs=12, learning_rate=0.3, feature_dim=4096, seed=0),
    lm_order=1,
    lm_alpha=0.1,
    pattern_k=5,
    pattern_length=12,
    seed=0,
)

# First sentence reads as purpose where every benchmark pattern opens with
# background, so the review flags it and suggests "background". Wording
# stays inside the synthetic vocabulary to keep style scores meaningful.
DEMO_ABSTRACT = (
    "We propose to investigate a new objective for this study. "
    "We aim to address this question and explore the design of our approach. "
    "We apply the approach and train the pipeline on this architecture. "
    "The results show significant gains and strong accuracy on this benchmark."
)

WALKTHROUGH_UTTERANCES = [
    "how confident does the model make this prediction?",
    "rewrite it",
    "show me similar examples",
    "2 + background",
]


def build_demo_artifacts() -> dict[str, Artifacts]:
    corpus = synthetic_corpus(conference=DEMO_CONFERENCE, n_abstracts=60, seed=7)
    return train_artifacts(corpus, DEMO_SETTINGS)


def run_walkthrough(artifacts: dict[str, Artifacts], logs_dir: Path) -> list[dict]:
    """Drive the scripted session through the real HTTP surface and return
    the transcript (session token excluded; it is random by design)."""
    from fastapi.testclient import TestClient

    from .service import create_app

    app = create_app(artifacts, logs_dir)
    steps: list[dict] = []
    with TestClient(app) as client:
        session_id = client.post(
            "/sessions", json={"conference": DEMO_CONFERENCE}
        ).json()["session_id"]
        response = client.post(f"/sessions/{session_id}/abstract", json={"text": DEMO_ABSTRACT})
        steps.append({"step": "submit_abstract", "response": response.json()})
        response = client.post(f"/sessions/{session_id}/select", json={"sentence_index": 0})
        steps.append({"step": "select_sentence", "sentence_index": 0, "response": response.json()})
        for utterance in WALKTHROUGH_UTTERANCES:
            response = client.post(f"/sessions/{session_id}/chat", json={"utterance": utterance})
            steps.append({"step": "chat", "utterance": utterance, "response": response.json()})
    return steps


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
