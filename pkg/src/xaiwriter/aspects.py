"""Research-aspect labels for abstract sentences and the alias table used at ingestion."""

from __future__ import annotations

from enum import Enum


class AspectLabel(str, Enum):
    BACKGROUND = "background"
    PURPOSE = "purpose"
    METHOD = "method"
    FINDING = "finding"
    OTHER = "other"


# Accepted spellings in corpus files, lowercased. Slashes and underscores in
# combined forms are tolerated because annotation exports disagree on them.
LABEL_ALIASES: dict[str, AspectLabel] = {
    "background": AspectLabel.BACKGROUND,
    "purpose": AspectLabel.PURPOSE,
    "objective": AspectLabel.PURPOSE,
    "method": AspectLabel.METHOD,
    "methods": AspectLabel.METHOD,
    "finding": AspectLabel.FINDING,
    "findings": AspectLabel.FINDING,
    "contribution": AspectLabel.FINDING,
    "finding/contribution": AspectLabel.FINDING,
    "finding_contribution": AspectLabel.FINDING,
    "other": AspectLabel.OTHER,
    "others": AspectLabel.OTHER,
}


class UnknownLabelError(ValueError):
    pass


def parse_label(raw: str) -> AspectLabel:
    key = raw.strip().lower()
    try:
        return LABEL_ALIASES[key]
    except KeyError:
        raise UnknownLabelError(f"unknown aspect label: {raw!r}") from None


ALL_LABELS: tuple[AspectLabel, ...] = tuple(AspectLabel)

LABEL_INDEX: dict[AspectLabel, int] = {label: i for i, label in enumerate(ALL_LABELS)}
