"""Rule-plus-similarity natural language understanding for XAI questions.

Stage 1 scores weighted intent keywords against utterance tokens with
typo-tolerant matching (edit distance 1 for 4-5 letter tokens, 2 from 6
letters up). Stage 2 falls back to character-trigram cosine against the
canonical phrasing inventory (data/phrasings.json). Utterances that carry
only customization variables inherit the previous customizable intent, so
refinements like "2 + background" stay in context.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import sqrt

from .aspects import AspectLabel, LABEL_ALIASES
from .explainers import (
    ExplanationVariables,
    Intent,
    MAX_EXAMPLE_COUNT,
    RankMethod,
)

PHRASINGS_FORMAT_VERSION = 1
SIMILARITY_THRESHOLD = 0.55
KEYWORD_SCORE_THRESHOLD = 2

# Intents whose variables make sense as a bare refinement of the last turn.
VARIABLE_INTENTS = (Intent.EXAMPLE, Intent.COUNTERFACTUAL, Intent.ATTRIBUTION)

_WORD_RE = re.compile(r"[a-z0-9]+")


@lru_cache(maxsize=1)
def load_phrasings() -> dict[Intent, dict]:
    raw = resources.files("xaiwriter.data").joinpath("phrasings.json").read_text("utf-8")
    obj = json.loads(raw)
    if obj.get("format_version") != PHRASINGS_FORMAT_VERSION:
        raise ValueError(f"unsupported phrasings file version: {obj.get('format_version')}")
    table = {}
    for name, spec in obj["intents"].items():
        table[Intent(name)] = {
            "keywords": {k: int(w) for k, w in spec["keywords"].items()},
            "phrasings": list(spec["phrasings"]),
        }
    return table


def canned_utterance(intent: Intent) -> str:
    """The first canonical phrasing; used verbatim by quick-reply buttons."""
    table = load_phrasings()
    if intent in table:
        return table[intent]["phrasings"][0]
    return "help"


def edit_distance(a: str, b: str, limit: int) -> int:
    """Levenshtein distance, capped at limit+1 for early exit."""
    if abs(len(a) - len(b)) > limit:
        return limit + 1
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        best = i
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            val = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            cur.append(val)
            best = min(best, val)
        if best > limit:
            return limit + 1
        prev = cur
    return prev[-1]


def _typo_limit(token: str) -> int:
    n = len(token)
    if n <= 3:
        return 0
    if n <= 5:
        return 1
    return 2


def token_matches_keyword(token: str, keyword: str) -> bool:
    if token == keyword:
        return True
    limit = _typo_limit(token)
    if limit == 0:
        return False
    return edit_distance(token, keyword, limit) <= limit


def _trigram_vector(text: str) -> Counter:
    padded = " " + " ".join(_WORD_RE.findall(text.lower())) + " "
    return Counter(padded[i : i + 3] for i in range(max(len(padded) - 2, 1)))


def _cosine(a: Counter, b: Counter) -> float:
    if not a or not b:
        return 0.0
    dot = sum(v * b.get(k, 0) for k, v in a.items())
    na = sqrt(sum(v * v for v in a.values()))
    nb = sqrt(sum(v * v for v in b.values()))
    return dot / (na * nb) if na and nb else 0.0


def keyword_scores(utterance: str) -> dict[Intent, int]:
    tokens = _WORD_RE.findall(utterance.lower())
    scores: dict[Intent, int] = {}
    for intent, spec in load_phrasings().items():
        score = 0
        for tok in tokens:
            # each token contributes its single best keyword match, so
            # singular/plural keyword pairs do not double count
            best = max(
                (w for kw, w in spec["keywords"].items() if token_matches_keyword(tok, kw)),
                default=0,
            )
            score += best
        if score:
            scores[intent] = score
    return scores


def phrase_similarity(utterance: str) -> tuple[Intent | None, float]:
    vec = _trigram_vector(utterance)
    best_intent, best_sim = None, 0.0
    for intent, spec in load_phrasings().items():
        for phrase in spec["phrasings"]:
            sim = _cosine(vec, _trigram_vector(phrase))
            if sim > best_sim:
                best_intent, best_sim = intent, sim
    return best_intent, best_sim


@dataclass(frozen=True)
class ParsedVariables:
    variables: ExplanationVariables
    notices: tuple[str, ...] = ()


_COUNT_PLUS_LABEL = re.compile(r"\b(\d+)\s*\+\s*([a-z/_]+)")
_TOP_K = re.compile(r"\btop\s*[- ]?\s*(\d+)\b")
_BARE_INT = re.compile(r"\b(\d+)\b")
_QUOTED = re.compile(r"[\"']([^\"']+)[\"']")


def _fuzzy_label(word: str) -> AspectLabel | None:
    word = word.lower().strip()
    if word in LABEL_ALIASES:
        return LABEL_ALIASES[word]
    limit = _typo_limit(word)
    if limit == 0:
        return None
    for alias, label in LABEL_ALIASES.items():
        if edit_distance(word, alias, limit) <= limit:
            return label
    return None


def parse_variables(utterance: str, intent: Intent) -> ParsedVariables:
    """Extract customization variables with a small tolerant grammar.

    Recognized forms: "<int> + <label>", bare integers (example count),
    "top <int>", quoted keyword strings, bare label names, and the rank
    words "similar"/"quality". Anything else is left to the intent text.
    """
    text = utterance.lower()
    notices: list[str] = []
    target_label: AspectLabel | None = None
    example_count: int | None = None
    rank_method: RankMethod | None = None
    keyword: str | None = None
    top_k: int | None = None

    consumed_spans: list[tuple[int, int]] = []

    m = _QUOTED.search(text)
    if m:
        keyword = m.group(1).strip()
        consumed_spans.append(m.span())

    m = _TOP_K.search(text)
    if m:
        top_k = int(m.group(1))
        consumed_spans.append(m.span())

    m = _COUNT_PLUS_LABEL.search(text)
    if m and not _inside(consumed_spans, m.start()):
        example_count = int(m.group(1))
        label = _fuzzy_label(m.group(2))
        if label is not None:
            target_label = label
        else:
            notices.append(f"unknown label {m.group(2)!r}")
        consumed_spans.append(m.span())

    if example_count is None:
        for m in _BARE_INT.finditer(text):
            if not _inside(consumed_spans, m.start()):
                example_count = int(m.group(1))
                consumed_spans.append(m.span())
                break

    if target_label is None:
        for m in _WORD_RE.finditer(text):
            if _inside(consumed_spans, m.start()):
                continue
            label = _fuzzy_label(m.group())
            if label is not None:
                target_label = label
                break

    for word in _WORD_RE.findall(text):
        if rank_method is None and word in ("similar", "similarity"):
            rank_method = RankMethod.SIMILARITY
        elif rank_method is None and word == "quality" and intent is Intent.EXAMPLE:
            rank_method = RankMethod.QUALITY

    if example_count is not None and example_count > MAX_EXAMPLE_COUNT:
        notices.append(f"example count capped at {MAX_EXAMPLE_COUNT}")
        example_count = MAX_EXAMPLE_COUNT
    if example_count is not None and example_count < 1:
        notices.append("example count must be positive; ignored")
        example_count = None
    if top_k is not None and top_k < 1:
        notices.append("top value must be positive; ignored")
        top_k = None

    return ParsedVariables(
        ExplanationVariables(
            target_label=target_label,
            example_count=example_count,
            rank_method=rank_method,
            keyword=keyword,
            top_k=top_k,
        ),
        tuple(notices),
    )


def _inside(spans: list[tuple[int, int]], pos: int) -> bool:
    return any(start <= pos < end for start, end in spans)


def classify_intent(utterance: str, last_intent: Intent | None = None) -> tuple[Intent, float]:
    """Resolve an utterance to exactly one intent; everything falls back."""
    if not utterance or not utterance.strip():
        return Intent.FALLBACK, 0.0

    scores = keyword_scores(utterance)
    if scores:
        ranked = sorted(scores.items(), key=lambda kv: -kv[1])
        top_intent, top_score = ranked[0]
        unique = len(ranked) == 1 or ranked[1][1] < top_score
        if top_score >= KEYWORD_SCORE_THRESHOLD and unique:
            return top_intent, min(1.0, 0.5 + 0.1 * top_score)

    intent, sim = phrase_similarity(utterance)
    if intent is not None and sim >= SIMILARITY_THRESHOLD:
        return intent, sim

    if last_intent in VARIABLE_INTENTS:
        parsed = parse_variables(utterance, last_intent)
        v = parsed.variables
        if any(x is not None for x in (v.target_label, v.example_count, v.rank_method, v.keyword, v.top_k)):
            return last_intent, 0.6

    return Intent.FALLBACK, 0.0
