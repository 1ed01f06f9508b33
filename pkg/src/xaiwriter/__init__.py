"""Conversational explainable-AI writing support for scientific abstracts."""

from .aspects import AspectLabel
from .classifier import (
    AspectClassifier,
    Prediction,
    SentenceEmbedding,
    TrainConfig,
    embed_sentence,
    predict_aspect,
    train_classifier,
)
from .corpus import (
    ConferenceProfile,
    Corpus,
    CorpusRecord,
    StructurePattern,
    build_profile,
    extract_patterns,
    ingest_corpus,
)
from .dialogue import (
    Artifacts,
    DialogueResponse,
    DialogueState,
    TurnRecord,
    export_usage_stats,
    respond,
    select_sentence,
)
from .document import AbstractDocument, analyze_abstract
from .dtw import DtwResult, dtw_align
from .explainers import (
    ExplanationPayload,
    ExplanationVariables,
    Intent,
    RankMethod,
    explain_attribution,
    explain_confidence,
    explain_counterfactual,
    explain_examples,
    explain_global,
    explain_suggestion,
)
from .nlu import classify_intent, parse_variables
from .review import (
    AbstractReview,
    ReviewItem,
    ReviewKind,
    build_review,
    overall_scores,
    structure_review,
    style_and_length_review,
)
from .segmenter import segment_abstract
from .style_lm import StyleModel, quantize_quality, sentence_perplexity, train_style_lm

__version__ = "0.1.0"
