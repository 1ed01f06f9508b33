"""Labeled abstract corpora and per-conference profiles.

A corpus file is line-delimited JSON, one abstract per line:

    {"conference": "acl", "year": 2021, "abstract_id": "a1",
     "sentences": [{"text": "...", "label": "background"}, ...]}

Profiles bundle everything the explainers need about one conference:
perplexity percentile boundaries, label distribution, sentence length
statistics, benchmark structure patterns, and the data/model cards.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

from .aspects import AspectLabel, UnknownLabelError, parse_label
from .tokenization import tokenize


class CorpusFormatError(ValueError):
    pass


class DegenerateDistributionError(ValueError):
    """Raised when percentile boundaries are not strictly ascending."""


@dataclass(frozen=True)
class LabeledSentence:
    text: str
    label: AspectLabel


@dataclass(frozen=True)
class CorpusRecord:
    conference: str
    year: int
    abstract_id: str
    sentences: tuple[LabeledSentence, ...]


@dataclass
class Corpus:
    records: list[CorpusRecord] = field(default_factory=list)
    issues: list[str] = field(default_factory=list)

    def conferences(self) -> list[str]:
        seen: dict[str, None] = {}
        for rec in self.records:
            seen.setdefault(rec.conference, None)
        return list(seen)

    def for_conference(self, conference: str) -> list[CorpusRecord]:
        return [rec for rec in self.records if rec.conference == conference]

    def sentences_for(self, conference: str) -> list[LabeledSentence]:
        out: list[LabeledSentence] = []
        for rec in self.for_conference(conference):
            out.extend(rec.sentences)
        return out


def _parse_record(obj: dict) -> CorpusRecord:
    try:
        conference = str(obj["conference"])
        year = int(obj["year"])
        abstract_id = str(obj["abstract_id"])
        raw_sentences = obj["sentences"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusFormatError(f"missing or malformed field: {exc}") from exc
    if not isinstance(raw_sentences, list) or not raw_sentences:
        raise CorpusFormatError("sentences must be a non-empty array")
    sentences = []
    for i, s in enumerate(raw_sentences):
        try:
            text = str(s["text"]).strip()
            label = parse_label(str(s["label"]))
        except UnknownLabelError:
            raise
        except (KeyError, TypeError) as exc:
            raise CorpusFormatError(f"sentence {i}: missing text or label") from exc
        if not text:
            raise CorpusFormatError(f"sentence {i}: empty text")
        sentences.append(LabeledSentence(text, label))
    return CorpusRecord(conference, year, abstract_id, tuple(sentences))


def ingest_corpus(path, strict: bool = False) -> Corpus:
    """Read a line-delimited corpus file.

    Invalid lines are skipped and reported with their line number unless
    ``strict`` is set, in which case the first bad line is fatal.
    """
    corpus = Corpus()
    seen_keys: set[tuple[str, str]] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                if not isinstance(obj, dict):
                    raise CorpusFormatError("record must be an object")
                record = _parse_record(obj)
                key = (record.conference, record.abstract_id)
                if key in seen_keys:
                    raise CorpusFormatError(f"duplicate abstract_id {key[1]!r} for {key[0]!r}")
                seen_keys.add(key)
            except (json.JSONDecodeError, CorpusFormatError, UnknownLabelError) as exc:
                if strict:
                    raise CorpusFormatError(f"line {lineno}: {exc}") from exc
                corpus.issues.append(f"line {lineno}: {exc}")
                continue
            corpus.records.append(record)
    if not corpus.records:
        warnings.warn(f"corpus file {path} produced no valid records", stacklevel=2)
    return corpus


def nearest_rank(sorted_values: list[float], q: float) -> float:
    """Nearest-rank percentile: the value at rank ceil(q * N), 1-indexed."""
    n = len(sorted_values)
    if n == 0:
        raise ValueError("no values")
    rank = math.ceil(q * n)
    rank = min(max(rank, 1), n)
    return sorted_values[rank - 1]


QUALITY_QUANTILES = (0.20, 0.40, 0.60, 0.80)


def quality_boundaries_from(perplexities: list[float]) -> tuple[float, float, float, float]:
    for p in perplexities:
        if not math.isfinite(p):
            raise ValueError(f"non-finite perplexity: {p}")
    ordered = sorted(perplexities)
    bounds = tuple(nearest_rank(ordered, q) for q in QUALITY_QUANTILES)
    if not (bounds[0] < bounds[1] < bounds[2] < bounds[3]):
        raise DegenerateDistributionError(
            f"quality boundaries not strictly ascending: {bounds}; "
            "the perplexity distribution is too concentrated to support five levels"
        )
    return bounds


@dataclass(frozen=True)
class LengthStats:
    mean: float
    p5: int
    p95: int


@dataclass(frozen=True)
class StructurePattern:
    """A benchmark label sequence, resampled to a fixed length.

    display_form is the run-length percentage view, e.g.
    [(background, 33.3), (purpose, 16.7), ...]; percentages sum to 100.0.
    """

    sequence: tuple[AspectLabel, ...]
    display_form: tuple[tuple[AspectLabel, float], ...]


@dataclass(frozen=True)
class ConferenceProfile:
    conference: str
    quality_boundaries: tuple[float, float, float, float]
    label_distribution: dict[AspectLabel, float]
    length_stats: LengthStats
    patterns: tuple[StructurePattern, ...]
    data_card: str
    model_card: str
    n_abstracts: int
    n_sentences: int


def resample_labels(sequence: list[AspectLabel], length: int) -> tuple[AspectLabel, ...]:
    """Nearest-index resampling to a fixed length (half-ranks round up)."""
    if not sequence:
        raise ValueError("empty label sequence")
    n = len(sequence)
    if length < 1:
        raise ValueError("length must be >= 1")
    if length == 1:
        return (sequence[0],)
    out = []
    for i in range(length):
        # floor(i * (n-1) / (length-1) + 1/2) in integer arithmetic
        idx = (2 * i * (n - 1) + (length - 1)) // (2 * (length - 1))
        out.append(sequence[idx])
    return tuple(out)


def run_length_percentages(
    sequence: tuple[AspectLabel, ...],
) -> tuple[tuple[AspectLabel, float], ...]:
    """Collapse a sequence into (label, percent) runs summing to exactly 100.0.

    Percentages are rounded to one decimal with largest-remainder correction
    so the rounded values always add up to 100.0.
    """
    runs: list[tuple[AspectLabel, int]] = []
    for label in sequence:
        if runs and runs[-1][0] == label:
            runs[-1] = (label, runs[-1][1] + 1)
        else:
            runs.append((label, 1))
    total = len(sequence)
    raw = [1000.0 * count / total for _, count in runs]  # tenths of a percent
    floors = [math.floor(x) for x in raw]
    shortfall = 1000 - sum(floors)
    by_remainder = sorted(range(len(raw)), key=lambda i: (-(raw[i] - floors[i]), i))
    for i in by_remainder[:shortfall]:
        floors[i] += 1
    return tuple((label, floors[i] / 10.0) for i, (label, _) in enumerate(runs))


def make_pattern(sequence: list[AspectLabel], length: int = 12) -> StructurePattern:
    resampled = resample_labels(sequence, length)
    return StructurePattern(resampled, run_length_percentages(resampled))


def extract_patterns(
    corpus: Corpus,
    conference: str,
    k: int = 5,
    length: int = 12,
    seed: int = 0,
) -> list[StructurePattern]:
    """Cluster the conference's (resampled) label sequences into k groups
    with k-medoids under DTW distance and return the medoid patterns.

    Records are processed in (abstract_id) order so the result does not
    depend on file order. The seed picks the first medoid; the rest of the
    initialisation is farthest-first, then standard medoid iteration.
    """
    from .dtw import dtw_align, label_mismatch_cost  # local import: avoid cycle at module load

    if k < 1:
        raise ValueError("k must be >= 1")
    records = sorted(corpus.for_conference(conference), key=lambda r: r.abstract_id)
    if len(records) < k:
        raise ValueError(f"conference {conference!r} has {len(records)} abstracts, need >= {k}")
    seqs = [resample_labels([s.label for s in rec.sentences], length) for rec in records]
    n = len(seqs)

    dist = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = dtw_align(seqs[i], seqs[j], label_mismatch_cost).distance
            dist[i][j] = d
            dist[j][i] = d

    import numpy as np

    rng = np.random.default_rng(seed)
    medoids = [int(rng.integers(n))]
    while len(medoids) < k:
        # farthest-first: maximise distance to the nearest chosen medoid
        best_idx, best_d = -1, -1.0
        for i in range(n):
            if i in medoids:
                continue
            d = min(dist[i][m] for m in medoids)
            if d > best_d:
                best_idx, best_d = i, d
        medoids.append(best_idx)

    for _ in range(100):
        clusters: list[list[int]] = [[] for _ in range(k)]
        for i in range(n):
            nearest = min(range(k), key=lambda c: (dist[i][medoids[c]], c))
            clusters[nearest].append(i)
        new_medoids = []
        for c in range(k):
            members = clusters[c]
            if not members:
                new_medoids.append(medoids[c])
                continue
            best = min(members, key=lambda m: (sum(dist[m][j] for j in members), m))
            new_medoids.append(best)
        if new_medoids == medoids:
            break
        medoids = new_medoids

    medoids = sorted(medoids)
    return [StructurePattern(seqs[m], run_length_percentages(seqs[m])) for m in medoids]


def _default_data_card(conference: str, records: list[CorpusRecord], n_sentences: int) -> str:
    years = sorted({rec.year for rec in records})
    span = f"{years[0]}-{years[-1]}" if len(years) > 1 else str(years[0])
    return (
        f"Corpus card for {conference}: {len(records)} labeled abstracts "
        f"({n_sentences} sentences) published {span}. Every sentence carries one "
        "of five research-aspect labels (background, purpose, method, finding, other). "
        "The corpus feeds the aspect classifier, the style language model, and the "
        "per-conference statistics used in reviews."
    )


def _default_model_card(conference: str) -> str:
    return (
        f"Model card for {conference}: the writing structure model is a softmax "
        "regression over hashed unigram+bigram counts predicting the five research "
        "aspects; the writing style model is an additively smoothed n-gram language "
        "model whose sentence perplexity is mapped onto a 1-5 quality scale via the "
        "conference's 20/40/60/80th percentile boundaries."
    )


def build_profile(
    corpus: Corpus,
    conference: str,
    perplexity_fn,
    k: int = 5,
    pattern_length: int = 12,
    seed: int = 0,
    data_card: str | None = None,
    model_card: str | None = None,
) -> ConferenceProfile:
    """Compute the immutable statistics bundle for one conference."""
    records = corpus.for_conference(conference)
    sentences = corpus.sentences_for(conference)
    if len(sentences) < 5:
        raise ValueError(f"conference {conference!r} has {len(sentences)} sentences, need >= 5")

    perplexities = [float(perplexity_fn(s.text)) for s in sentences]
    boundaries = quality_boundaries_from(perplexities)

    counts = {label: 0 for label in AspectLabel}
    for s in sentences:
        counts[s.label] += 1
    total = len(sentences)
    distribution = {label: counts[label] / total for label in AspectLabel}

    lengths = sorted(len(tokenize(s.text)) for s in sentences)
    length_stats = LengthStats(
        mean=sum(lengths) / len(lengths),
        p5=int(nearest_rank(lengths, 0.05)),
        p95=int(nearest_rank(lengths, 0.95)),
    )

    patterns = extract_patterns(corpus, conference, k=min(k, len(records)), length=pattern_length, seed=seed)

    return ConferenceProfile(
        conference=conference,
        quality_boundaries=boundaries,
        label_distribution=distribution,
        length_stats=length_stats,
        patterns=tuple(patterns),
        data_card=data_card or _default_data_card(conference, records, total),
        model_card=model_card or _default_model_card(conference),
        n_abstracts=len(records),
        n_sentences=total,
    )
