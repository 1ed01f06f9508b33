from __future__ import annotations

from itertools import combinations

import pytest

from xaiwriter.corpus import Corpus, extract_patterns, resample_labels
from xaiwriter.dtw import dtw_align
from conftest import B, F, M, P, record


def _corpus_from_sequences(sequences, conference="conf"):
    recs = []
    for i, seq in enumerate(sequences):
        recs.append(
            record(conference, f"a{i:03d}", [(f"sentence {i} {j} filler.", lbl) for j, lbl in enumerate(seq)])
        )
    return Corpus(records=recs)


def exhaustive_two_medoids(sequences, length=12):
    """Oracle: try every medoid pair, pick the total-cost minimiser."""
    resampled = [resample_labels(list(s), length) for s in sequences]
    n = len(resampled)
    dist = [[dtw_align(resampled[i], resampled[j]).distance if i != j else 0.0 for j in range(n)] for i in range(n)]
    best_pair, best_cost = None, float("inf")
    for pair in combinations(range(n), 2):
        cost = sum(min(dist[i][m] for m in pair) for i in range(n))
        if cost < best_cost:
            best_pair, best_cost = pair, cost
    return {resampled[m] for m in best_pair}


def test_k1_unanimous_medoid():
    sequences = [[B, P, M, F]] * 4
    corpus = _corpus_from_sequences(sequences)
    patterns = extract_patterns(corpus, "conf", k=1, length=12)
    assert len(patterns) == 1
    assert patterns[0].sequence == resample_labels([B, P, M, F], 12)


def test_k2_disjoint_groups_match_exhaustive_oracle():
    group1 = [[B, P, M, F]] * 3
    group2 = [[M, M, F, F]] * 3
    sequences = group1 + group2
    corpus = _corpus_from_sequences(sequences)
    patterns = extract_patterns(corpus, "conf", k=2, length=12, seed=0)
    got = {p.sequence for p in patterns}
    assert got == exhaustive_two_medoids(sequences)


def test_k2_oracle_with_noise_members():
    sequences = [
        [B, P, M, F],
        [B, P, M, F],
        [B, B, P, M, F],
        [F, F, M, M],
        [F, F, M, M],
        [F, F, B, M, M],
    ]
    corpus = _corpus_from_sequences(sequences)
    patterns = extract_patterns(corpus, "conf", k=2, length=12, seed=3)
    assert {p.sequence for p in patterns} == exhaustive_two_medoids(sequences)


def test_default_k_is_five(demo_corpus):
    patterns = extract_patterns(demo_corpus, "synthconf")
    assert len(patterns) == 5


def test_deterministic_given_seed(demo_corpus):
    a = extract_patterns(demo_corpus, "synthconf", k=3, seed=42)
    b = extract_patterns(demo_corpus, "synthconf", k=3, seed=42)
    assert [p.sequence for p in a] == [p.sequence for p in b]


def test_invariant_to_record_order(demo_corpus):
    shuffled = Corpus(records=list(reversed(demo_corpus.records)))
    a = extract_patterns(demo_corpus, "synthconf", k=4, seed=9)
    b = extract_patterns(shuffled, "synthconf", k=4, seed=9)
    assert [p.sequence for p in a] == [p.sequence for p in b]


def test_fewer_abstracts_than_k():
    corpus = _corpus_from_sequences([[B, P], [P, M]])
    with pytest.raises(ValueError, match="need >= 3"):
        extract_patterns(corpus, "conf", k=3)
