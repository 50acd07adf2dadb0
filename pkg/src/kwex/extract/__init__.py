"""Keyword extractors sharing one output contract.

Every extractor maps (document, normalizer, k, options) to a best-first
list of ScoredKeyword, at most k long. Ties always break on earlier first
occurrence in the document, then on the lexicographic normalized form.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ScoredKeyword:
    phrase: str
    score: float
    better: str  # "lower" or "higher": which score direction wins


def rank_candidates(
    scored: list[tuple[float, int, str, str]],
    better: str,
    k: int,
) -> list[ScoredKeyword]:
    """Sort (score, first_tok_idx, norm, surface) rows best-first, cut at k."""
    sign = 1.0 if better == "lower" else -1.0
    scored.sort(key=lambda row: (sign * row[0], row[1], row[2]))
    return [ScoredKeyword(phrase=surface, score=score, better=better)
            for score, _, _, surface in scored[:k]]


from .statistical import kpminer, yake  # noqa: E402
from .graphrank import multipartite_rank, rakun, textrank  # noqa: E402
from .embedding import keybert_rank  # noqa: E402

EXTRACTORS = {
    "yake": yake,
    "kpminer": kpminer,
    "textrank": textrank,
    "multipartite": multipartite_rank,
    "rakun": rakun,
    "keybert": keybert_rank,
}
