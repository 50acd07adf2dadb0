"""Multilingual keyword extraction engine and evaluation harness."""

from .corpus import CorpusStats, Document, compute_stats, load_jsonl, save_jsonl
from .errors import (
    CorpusError,
    EngineError,
    PlanError,
    PredictionError,
    ProviderError,
)
from .evaluate import MetricsReport, evaluate_run, present_gold, score_at_k
from .extract import EXTRACTORS, ScoredKeyword
from .normalize import Normalizer, Token, tokenize
from .xling import (
    AffinityMatrix,
    ExperimentManifest,
    LanguageSet,
    agglomerative_cluster,
    build_manifest,
    enumerate_tuples,
    heatmap_matrix,
    language_count_curve,
)

__version__ = "0.1.0"

__all__ = [
    "AffinityMatrix",
    "CorpusError",
    "CorpusStats",
    "Document",
    "EngineError",
    "EXTRACTORS",
    "ExperimentManifest",
    "LanguageSet",
    "MetricsReport",
    "Normalizer",
    "PlanError",
    "PredictionError",
    "ProviderError",
    "ScoredKeyword",
    "Token",
    "agglomerative_cluster",
    "build_manifest",
    "compute_stats",
    "enumerate_tuples",
    "evaluate_run",
    "heatmap_matrix",
    "language_count_curve",
    "load_jsonl",
    "present_gold",
    "save_jsonl",
    "score_at_k",
    "tokenize",
]
