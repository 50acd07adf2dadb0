"""Statistical extractors: a YAKE-style term-feature scorer and KP-Miner.

The YAKE term score combines casing, position, frequency, relatedness to
context and sentence dispersion into a single number where lower is
better; candidate n-grams aggregate member-term scores. KP-Miner keeps
frequent early-occurring phrases and weights them with a document-level
boost favouring multi-word candidates.
"""

from __future__ import annotations

import logging
import math
import statistics
from dataclasses import dataclass

from ..candidates import generate
from ..corpus import Document
from ..graphkit import levenshtein_similarity
from ..normalize import Normalizer, Token
from . import ScoredKeyword, rank_candidates

log = logging.getLogger(__name__)

# near-duplicate filter: drop a candidate whose normalized form is at least
# this similar (normalized Levenshtein) to an already-kept one
DUPLICATE_SIMILARITY = 0.8

# KP-Miner boost constants from the original method; the seed configuration
# only pins lasf and cutoff
KPMINER_ALPHA = 2.3
KPMINER_SIGMA = 3.0


@dataclass(frozen=True)
class TermFeatures:
    tf: int
    tf_norm: float
    casing: float
    position: float
    relatedness: float
    dispersion: float


def term_score(f: TermFeatures) -> float:
    """Combined term score; lower means more keyword-like."""
    return (f.relatedness * f.position) / (
        f.casing + f.tf_norm / f.relatedness + f.dispersion / f.relatedness
    )


def compute_term_features(tokens: list[Token]) -> dict[str, TermFeatures]:
    """Per-term features over a tokenized document.

    Computed for every non-stopword alphanumeric term; frequency
    statistics (mean, stddev, max) also range over those terms only. When
    the document carries no casing information at all (pre-lowercased
    corpora), the casing feature is fixed to a neutral 1.0.
    """
    stream = [t for t in tokens if t.is_alphanumeric]
    terms: dict[str, list[Token]] = {}
    positions: dict[str, list[int]] = {}
    for pos, tok in enumerate(stream):
        terms.setdefault(tok.norm, []).append(tok)
        positions.setdefault(tok.norm, []).append(pos)
    content = {norm: occs for norm, occs in terms.items()
               if not occs[0].is_stopword}
    if not content:
        return {}
    tfs = [len(occs) for occs in content.values()]
    tf_denom = statistics.mean(tfs) + statistics.pstdev(tfs)
    max_tf = max(tfs)
    n_sentences = max(t.sent_idx for t in tokens) + 1 if tokens else 1
    has_case = any(ch.isupper() for t in tokens for ch in t.surface)
    if not has_case:
        log.debug("no casing information in document; casing feature neutral")

    features: dict[str, TermFeatures] = {}
    for norm, occs in content.items():
        tf = len(occs)
        if has_case:
            upper_initial = sum(1 for t in occs if t.surface[:1].isupper())
            acronyms = sum(1 for t in occs
                           if len(t.surface) > 1 and t.surface.isupper())
            casing = max(upper_initial, acronyms) / (1.0 + math.log(tf))
        else:
            casing = 1.0
        median_sent = statistics.median(sorted(t.sent_idx for t in occs))
        position = math.log(math.log(3.0 + median_sent))
        left, right = set(), set()
        n_left = n_right = 0
        for pos in positions[norm]:
            if pos > 0:
                left.add(stream[pos - 1].norm)
                n_left += 1
            if pos + 1 < len(stream):
                right.add(stream[pos + 1].norm)
                n_right += 1
        wl = len(left) / n_left if n_left else 0.0
        wr = len(right) / n_right if n_right else 0.0
        relatedness = 1.0 + (wl + wr) * (tf / max_tf)
        dispersion = len({t.sent_idx for t in occs}) / n_sentences
        features[norm] = TermFeatures(
            tf=tf,
            tf_norm=tf / tf_denom,
            casing=casing,
            position=position,
            relatedness=relatedness,
            dispersion=dispersion,
        )
    return features


def yake(doc: Document, normalizer: Normalizer, k: int = 10) -> list[ScoredKeyword]:
    """Rank 1-3 gram candidates by the combined term-feature score."""
    tokens = normalizer.tokenize(doc.text)
    cands = generate(tokens, max_n=3, allow_inner_stopword=False)
    if not cands:
        return []
    features = compute_term_features(tokens)
    rows = []
    for cand in cands:
        members = cand.norm.split(" ")
        if len(set(members)) != len(members):
            continue  # windows repeating a term ("a a") are noise, not phrases
        if any(t not in features for t in members):
            continue  # norm collides with a stopword-only term
        scores = [term_score(features[t]) for t in members]
        product = math.prod(scores)
        score = product / (cand.tf * (1.0 + sum(scores)))
        rows.append((score, cand.first_tok_idx, cand.norm, cand.surface))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    kept: list[tuple[float, int, str, str]] = []
    for row in rows:
        if any(levenshtein_similarity(row[2], other[2]) >= DUPLICATE_SIMILARITY
               for other in kept):
            continue
        kept.append(row)
    return rank_candidates(kept, better="lower", k=k)


@dataclass
class _Run:
    surface: str
    norm: str
    n: int
    occurrences: list[tuple[int, int]]

    @property
    def tf(self) -> int:
        return len(self.occurrences)

    @property
    def first_tok_idx(self) -> int:
        return self.occurrences[0][1]


def phrase_runs(tokens: list[Token]) -> list[_Run]:
    """Maximal in-sentence token runs unbroken by punctuation, stopwords
    or purely numeric tokens, merged on normalized form."""
    by_norm: dict[str, _Run] = {}
    order: list[str] = []
    current: list[Token] = []

    def flush() -> None:
        if not current:
            return
        norm = " ".join(t.norm for t in current)
        run = by_norm.get(norm)
        occurrence = (current[0].sent_idx, current[0].tok_idx)
        if run is None:
            by_norm[norm] = _Run(
                surface=" ".join(t.surface for t in current),
                norm=norm,
                n=len(current),
                occurrences=[occurrence],
            )
            order.append(norm)
        else:
            run.occurrences.append(occurrence)
        current.clear()

    prev_sent = None
    for tok in tokens:
        breaks = (
            not tok.is_alphanumeric
            or tok.is_stopword
            or all(ch.isdigit() for ch in tok.surface)
            or (prev_sent is not None and tok.sent_idx != prev_sent and current)
        )
        if breaks:
            flush()
            if tok.is_alphanumeric and not tok.is_stopword \
                    and not all(ch.isdigit() for ch in tok.surface):
                current.append(tok)
        else:
            current.append(tok)
        prev_sent = tok.sent_idx
    flush()
    return [by_norm[k] for k in order]


def kpminer(doc: Document, normalizer: Normalizer, k: int = 10,
            lasf: int = 3, cutoff: int = 400) -> list[ScoredKeyword]:
    """Frequency-and-position phrase scorer.

    Candidates are stopword/punctuation-delimited runs; only those seen at
    least `lasf` times and first occurring before token `cutoff` survive.
    Scores are tf times a document-level boost (clamped at sigma), with an
    extra early-position factor for multi-word phrases.
    """
    tokens = normalizer.tokenize(doc.text)
    runs = phrase_runs(tokens)
    kept = [r for r in runs if r.tf >= lasf and r.first_tok_idx < cutoff]
    if not kept:
        return []
    total_occurrences = sum(r.tf for r in kept)
    multiword_occurrences = sum(r.tf for r in kept if r.n > 1)
    if multiword_occurrences:
        boost = min(total_occurrences / (multiword_occurrences * KPMINER_ALPHA),
                    KPMINER_SIGMA)
    else:
        boost = KPMINER_SIGMA
    rows = []
    for run in kept:
        score = run.tf * boost
        if run.n > 1:
            score *= cutoff / (cutoff + run.first_tok_idx)
        rows.append((score, run.first_tok_idx, run.norm, run.surface))
    return rank_candidates(rows, better="higher", k=k)
