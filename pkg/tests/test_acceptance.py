"""Acceptance suite: one test per release criterion, each printing a
pass/fail line. Run with `pytest -s tests/test_acceptance.py` to see the
lines; every tolerance is pinned here, not configurable.
"""

from __future__ import annotations

import json
import time
from pathlib import Path

import numpy as np

from xaiwriter.aspects import ALL_LABELS, LABEL_INDEX, AspectLabel
from xaiwriter.attribution import token_attributions
from xaiwriter.classifier import (
    AspectClassifier,
    FeaturizerConfig,
    TrainConfig,
    featurize,
    hash_feature,
    predict_aspect,
    train_classifier,
)
from xaiwriter.corpus import Corpus, CorpusRecord, LabeledSentence, quality_boundaries_from
from xaiwriter.demo import (
    DEMO_ABSTRACT,
    DEMO_CONFERENCE,
    build_demo_artifacts,
    canonical_json,
    run_walkthrough,
)
from xaiwriter.dtw import dtw_align
from xaiwriter.eventlog import read_events
from xaiwriter.nlu import classify_intent, parse_variables
from xaiwriter.explainers import Intent
from xaiwriter.review import overall_scores, structure_review
from xaiwriter.service import replay_session
from xaiwriter.style_lm import quantize_quality, sentence_perplexity, train_style_lm
from xaiwriter.synthetic import LABEL_POOLS, synthetic_sentence
from conftest import B, F, M, P

GOLDEN_PATH = Path(__file__).parent / "golden" / "walkthrough.json"
SUITE_PATH = Path(__file__).parent / "data" / "intent_suite.json"


def _report(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[ACCEPTANCE] {name}: {status}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def _thousand_sentence_corpus(seed: int) -> Corpus:
    rng = np.random.default_rng(seed)
    records = []
    for i in range(200):
        sentences = tuple(
            LabeledSentence(synthetic_sentence(label, rng), label) for label in ALL_LABELS
        )
        records.append(CorpusRecord("accept", 2022, f"acc-{i:04d}", sentences))
    return Corpus(records=records)


def test_score_formulas_exact():
    t0 = time.monotonic()
    from xaiwriter.corpus import make_pattern

    no_items = overall_scores([], [5, 5])
    two = structure_review([P, B, M, F], (make_pattern([B, P, M, F], 4),))
    assert len(two) == 2
    two_items = overall_scores(two, [5, 5])
    elapsed = time.monotonic() - t0
    ok = no_items[1] == 5.0 and two_items[1] == 4.0 and elapsed < 1.0
    _report(
        "score formulas exact (0 items -> 5.0, 2 items -> 4.0)",
        ok,
        f"got {no_items[1]}, {two_items[1]} in {elapsed:.3f}s",
    )


def test_quality_quantization_buckets_of_200():
    t0 = time.monotonic()
    corpus = _thousand_sentence_corpus(seed=101)
    sentences = [s.text for rec in corpus.records for s in rec.sentences]
    assert len(sentences) == 1000
    lm = train_style_lm(corpus, n=2, alpha=0.1)
    perplexities = [sentence_perplexity(lm, s) for s in sentences]
    boundaries = quality_boundaries_from(perplexities)
    counts = {level: 0 for level in (1, 2, 3, 4, 5)}
    for ppl in perplexities:
        counts[quantize_quality(ppl, boundaries)] += 1
    elapsed = time.monotonic() - t0
    ok = all(abs(c - 200) <= 1 for c in counts.values()) and elapsed < 5.0
    _report(
        "quality quantization: five buckets of 200 +/- 1",
        ok,
        f"buckets {sorted(counts.items())} in {elapsed:.2f}s",
    )


def test_integrated_gradients_completeness():
    rng = np.random.default_rng(2024)
    words = sorted({w for pool in LABEL_POOLS.values() for w in pool})
    worst = 0.0
    for _ in range(100):
        dim = 512
        clf = AspectClassifier(
            weights=rng.normal(size=(5, dim)),
            bias=rng.normal(size=5),
            featurizer=FeaturizerConfig(feature_dim=dim, hash_seed=13),
            idf=np.ones(dim),
        )
        sentence = " ".join(
            words[int(rng.integers(len(words)))] for _ in range(int(rng.integers(1, 12)))
        )
        label = ALL_LABELS[int(rng.integers(5))]
        attrs = token_attributions(clf, sentence, label, steps=64)
        features = featurize(sentence, clf.featurizer)
        logit_x = float(clf.logits(features)[LABEL_INDEX[label]])
        logit_baseline = float(clf.logits({})[LABEL_INDEX[label]])
        gap = abs(sum(a.weight for a in attrs) - (logit_x - logit_baseline))
        worst = max(worst, gap)

    # a token whose features carry zero weight attributes exactly zero
    dim = 1024
    clf = AspectClassifier(
        weights=np.zeros((5, dim)),
        bias=np.zeros(5),
        featurizer=FeaturizerConfig(feature_dim=dim, hash_seed=13),
        idf=np.ones(dim),
    )
    clf.weights[0, hash_feature("u:alpha", 13, dim)] = 1.5
    zero_token_weight = {
        a.token: a.weight for a in token_attributions(clf, "alpha omega", ALL_LABELS[0])
    }["omega"]

    ok = worst <= 1e-6 and zero_token_weight == 0.0
    _report(
        "integrated gradients completeness <= 1e-6 over 100 fixtures; zero-feature token = 0",
        ok,
        f"worst gap {worst:.2e}, zero-token weight {zero_token_weight!r}",
    )


def test_dtw_matches_exhaustive_enumeration():
    from test_dtw import enumerate_paths_min_cost

    rng = np.random.default_rng(7)
    labels = list(ALL_LABELS)
    mismatches = 0
    for _ in range(200):
        a = [labels[int(rng.integers(5))] for _ in range(int(rng.integers(1, 6)))]
        b = [labels[int(rng.integers(5))] for _ in range(int(rng.integers(1, 6)))]
        if dtw_align(a, b).distance != enumerate_paths_min_cost(tuple(a), tuple(b)):
            mismatches += 1
    _report(
        "dtw equals exhaustive path enumeration on 200 random pairs",
        mismatches == 0,
        f"{mismatches} mismatches",
    )


def test_intent_suite_accuracy():
    cases = json.loads(SUITE_PATH.read_text())["cases"]
    assert len(cases) >= 50
    correct = sum(
        1 for case in cases if classify_intent(case["utterance"])[0].value == case["intent"]
    )
    accuracy = correct / len(cases)

    parsed = parse_variables("2 + background", Intent.EXAMPLE).variables
    parse_ok = parsed.example_count == 2 and parsed.target_label is AspectLabel.BACKGROUND

    ok = accuracy >= 0.95 and parse_ok
    _report(
        "intent suite >= 95% and '2 + background' parses",
        ok,
        f"accuracy {accuracy:.3f} on {len(cases)} utterances, parse {parsed}",
    )


def test_golden_walkthrough_byte_for_byte(tmp_path):
    artifacts = build_demo_artifacts()
    steps = run_walkthrough(artifacts, tmp_path / "logs")
    produced = canonical_json(steps)
    golden = GOLDEN_PATH.read_text(encoding="utf-8")

    # sanity on the scripted content before comparing bytes
    chat = [s for s in steps if s["step"] == "chat"]
    assert chat[0]["response"]["payload"]["intent"] == "confidence"
    cf = chat[1]["response"]["payload"]
    assert cf["intent"] == "counterfactual"
    assert cf["attachments"][0]["re_predicted_label"] == "background"  # context default
    final = chat[3]["response"]["payload"]["attachments"][0]["examples"]
    assert len(final) == 2 and all(e["label"] == "background" for e in final)

    _report(
        "golden walkthrough matches byte-for-byte",
        produced == golden,
        f"{len(produced)} bytes vs {len(golden)} bytes",
    )


def test_iteration_loop_resolves_structure_item(tmp_path):
    from fastapi.testclient import TestClient
    from xaiwriter.service import create_app

    artifacts = build_demo_artifacts()
    app = create_app(artifacts, tmp_path / "logs")
    with TestClient(app) as client:
        sid = client.post("/sessions", json={"conference": DEMO_CONFERENCE}).json()["session_id"]
        doc = client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT}).json()
        flagged = [
            item
            for item in doc["review"]["items"]
            if item["kind"] == "structure" and item["sentence_index"] == 0
        ]
        assert flagged and flagged[0]["suggested_label"] == "background"

        client.post(f"/sessions/{sid}/select", json={"sentence_index": 0})
        rewrite = client.post(f"/sessions/{sid}/chat", json={"utterance": "rewrite it"}).json()
        candidate = rewrite["payload"]["attachments"][0]
        assert candidate["provenance"] == "retrieval"

        first_end = doc["sentences"][0]["span"][1]
        revised = candidate["text"] + DEMO_ABSTRACT[first_end:]
        doc2 = client.post(f"/sessions/{sid}/abstract", json={"text": revised}).json()
        still_flagged = [
            item
            for item in doc2["review"]["items"]
            if item["kind"] == "structure" and item["sentence_index"] == 0
        ]
    _report(
        "iteration loop: retrieval counterfactual resolves the structure item",
        not still_flagged,
        f"items after resubmission: {doc2['review']['items']}",
    )


def test_desk_classifier_accuracy_substitute():
    corpus = _thousand_sentence_corpus(seed=303)
    sentences = [(s.text, s.label) for rec in corpus.records for s in rec.sentences]
    assert len(sentences) == 1000
    train_pairs, held_out = sentences[:800], sentences[800:]
    train_records = [
        CorpusRecord("accept", 2022, f"tr-{i}", (LabeledSentence(t, l),))
        for i, (t, l) in enumerate(train_pairs)
    ]
    t0 = time.monotonic()
    clf = train_classifier(Corpus(records=train_records), TrainConfig(epochs=10, seed=0))
    train_seconds = time.monotonic() - t0
    correct = sum(1 for text, label in held_out if predict_aspect(clf, text).label is label)
    accuracy = correct / len(held_out)
    ok = accuracy >= 0.90 and train_seconds < 60.0
    _report(
        "desk classifier substitute: >= 0.90 held-out accuracy, trained < 60 s",
        ok,
        f"accuracy {accuracy:.3f}, training {train_seconds:.1f}s "
        "(large-model accuracy figures are out of desk-scale scope)",
    )


def test_replay_determinism(tmp_path):
    from fastapi.testclient import TestClient
    from xaiwriter.dialogue import export_usage_stats
    from xaiwriter.service import create_app

    artifacts = build_demo_artifacts()
    logs_dir = tmp_path / "logs"
    app = create_app(artifacts, logs_dir)
    with TestClient(app) as client:
        sid = client.post("/sessions", json={"conference": DEMO_CONFERENCE}).json()["session_id"]
        live = [
            client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT}).json(),
            client.post(f"/sessions/{sid}/select", json={"sentence_index": 0}).json(),
        ]
        for utterance in [
            "how confident does the model make this prediction?",
            "rewrite it",
            "show me similar examples",
            "2 + background",
            "what does the quality score mean",
            "garble garble",
        ]:
            live.append(
                client.post(f"/sessions/{sid}/chat", json={"utterance": utterance}).json()
            )
        live_stats = client.get("/stats", params={"scope": "session", "session_id": sid}).json()

    events = read_events(logs_dir / f"{sid}.jsonl")
    engine, replayed = replay_session(events, artifacts)
    replay_stats = export_usage_stats(engine.state.history).as_dict()

    identical = json.dumps(live, sort_keys=True) == json.dumps(replayed, sort_keys=True)
    _report(
        "replay determinism: responses identical and stats match",
        identical and live_stats == replay_stats,
        f"{len(replayed)} responses, stats {replay_stats}",
    )
