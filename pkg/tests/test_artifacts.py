from __future__ import annotations

import json

import numpy as np
import pytest

from xaiwriter.artifacts import (
    ArtifactVersionError,
    load_artifacts,
    load_classifier,
    load_index,
    load_profile,
    load_style_lm,
    save_artifacts,
    save_classifier,
    save_index,
    save_profile,
    save_style_lm,
)
from xaiwriter.style_lm import sentence_perplexity


def test_classifier_roundtrip(tmp_path, demo_artifacts):
    path = tmp_path / "clf.json"
    save_classifier(demo_artifacts.classifier, path)
    loaded = load_classifier(path)
    assert np.array_equal(loaded.weights, demo_artifacts.classifier.weights)
    assert np.array_equal(loaded.idf, demo_artifacts.classifier.idf)
    assert loaded.featurizer == demo_artifacts.classifier.featurizer


def test_style_lm_roundtrip(tmp_path, demo_artifacts):
    path = tmp_path / "lm.json"
    save_style_lm(demo_artifacts.style_lm, path)
    loaded = load_style_lm(path)
    sentence = "we propose a new method"
    assert sentence_perplexity(loaded, sentence) == sentence_perplexity(
        demo_artifacts.style_lm, sentence
    )


def test_profile_roundtrip(tmp_path, demo_artifacts):
    path = tmp_path / "profile.json"
    save_profile(demo_artifacts.profile, path)
    loaded = load_profile(path)
    assert loaded == demo_artifacts.profile


def test_index_roundtrip(tmp_path, demo_artifacts):
    path = tmp_path / "index.json"
    save_index(demo_artifacts.index, path)
    loaded = load_index(path)
    assert loaded.conference == demo_artifacts.index.conference
    assert loaded.entries == demo_artifacts.index.entries


def test_version_mismatch_is_hard_error(tmp_path, demo_artifacts):
    path = tmp_path / "clf.json"
    save_classifier(demo_artifacts.classifier, path)
    obj = json.loads(path.read_text())
    obj["format_version"] = 999
    path.write_text(json.dumps(obj))
    with pytest.raises(ArtifactVersionError):
        load_classifier(path)


def test_bundle_roundtrip(tmp_path, demo_artifacts):
    root = tmp_path / "artifacts"
    save_artifacts({"synthconf": demo_artifacts}, root)
    loaded = load_artifacts(root)
    assert set(loaded) == {"synthconf"}
    assert loaded["synthconf"].profile == demo_artifacts.profile
    assert loaded["synthconf"].generator is None
