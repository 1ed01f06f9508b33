"""Sentence segmentation for abstracts.

Splits on terminal punctuation (. ! ?) followed by whitespace and an
uppercase letter or digit. A fixed abbreviation list suppresses splits so
"e.g. This" or "Fig. 3" stay inside one sentence. Spans cover every
non-whitespace character of the input, in order, without overlap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# Lowercased, without the trailing period. "et al." is handled via its last
# token "al". Single capital letters cover initials like "J. Smith".
_ABBREVIATIONS = {
    "e.g", "i.e", "etc", "cf", "al", "fig", "figs", "eq", "eqs", "sec",
    "vs", "no", "dr", "mr", "ms", "prof", "resp", "approx", "ca",
}

_BOUNDARY = re.compile(r"[.!?]+(?=\s+[A-Z0-9])")


@dataclass(frozen=True)
class SentenceSpan:
    start: int
    end: int  # exclusive
    text: str


def _word_before(text: str, idx: int) -> str:
    """The token immediately preceding position idx, lowercased, periods kept."""
    j = idx
    while j > 0 and not text[j - 1].isspace():
        j -= 1
    return text[j:idx].lower()


def _is_abbreviation(word: str) -> bool:
    word = word.rstrip(".")
    return word in _ABBREVIATIONS


def segment_abstract(text: str) -> list[SentenceSpan]:
    if not text or not text.strip():
        return []
    cut_points = []
    for m in _BOUNDARY.finditer(text):
        if _is_abbreviation(_word_before(text, m.start())):
            continue
        cut_points.append(m.end())

    spans: list[SentenceSpan] = []
    prev = 0
    for cut in cut_points + [len(text)]:
        chunk = text[prev:cut]
        stripped = chunk.strip()
        if stripped:
            start = prev + (len(chunk) - len(chunk.lstrip()))
            spans.append(SentenceSpan(start, start + len(stripped), stripped))
        prev = cut
    return spans
