from __future__ import annotations

import pytest

from xaiwriter.aspects import AspectLabel
from xaiwriter.corpus import CorpusRecord, LabeledSentence
from xaiwriter.demo import DEMO_ABSTRACT, DEMO_CONFERENCE, build_demo_artifacts
from xaiwriter.synthetic import synthetic_corpus

B, P, M, F, O = (
    AspectLabel.BACKGROUND,
    AspectLabel.PURPOSE,
    AspectLabel.METHOD,
    AspectLabel.FINDING,
    AspectLabel.OTHER,
)

__all__ = ["B", "P", "M", "F", "O", "DEMO_ABSTRACT", "DEMO_CONFERENCE", "record"]


def record(
    conference: str, abstract_id: str, pairs: list[tuple[str, AspectLabel]], year: int = 2022
) -> CorpusRecord:
    return CorpusRecord(
        conference=conference,
        year=year,
        abstract_id=abstract_id,
        sentences=tuple(LabeledSentence(text, label) for text, label in pairs),
    )


@pytest.fixture(scope="session")
def demo_corpus():
    # same corpus build_demo_artifacts trains on
    return synthetic_corpus(conference=DEMO_CONFERENCE, n_abstracts=60, seed=7)


@pytest.fixture(scope="session")
def demo_artifacts():
    return build_demo_artifacts()[DEMO_CONFERENCE]
