"""Word-level binary labeling and phrase decoding.

Keyword tagging is a per-word binary task: 1 for words covered by an
occurrence of a present gold keyphrase, 0 otherwise. Decoding inverts the
encoding: maximal runs of adjacent 1-labeled words become keyphrases, a
run of two or more words always forming one multi-word keyword.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from kwex.corpus import Document
from kwex.normalize import Normalizer, Token, find_subsequence_spans


@dataclass
class TaggedSequence:
    tokens: list[str]          # word surfaces
    labels: list[int]          # 1 keyword, 0 not
    probs: list[float]         # positive-class probability per word
    positions: list[int] = field(default_factory=list)  # tok_idx per word

    def __post_init__(self) -> None:
        if not (len(self.tokens) == len(self.labels) == len(self.probs)):
            raise ValueError("tokens, labels and probs must have equal length")


def document_words(doc: Document, normalizer: Normalizer) -> list[Token]:
    """The word positions the tagger operates on: alphanumeric tokens."""
    return [t for t in normalizer.tokenize(doc.text) if t.is_alphanumeric]


def label_document(doc: Document, normalizer: Normalizer) -> TaggedSequence:
    """Mark every word covered by an occurrence of a present gold keyphrase.

    Matching runs on normalized forms; overlapping gold spans union. A
    document without present keywords comes back all-zero (callers exclude
    those from training).
    """
    words = document_words(doc, normalizer)
    norms = [w.norm for w in words]
    labels = [0] * len(words)
    for keyword in doc.keywords:
        needle = normalizer.norm_tokens(keyword)
        if not needle:
            continue
        for start, end in find_subsequence_spans(norms, needle):
            for i in range(start, end):
                labels[i] = 1
    return TaggedSequence(
        tokens=[w.surface for w in words],
        labels=labels,
        probs=[float(v) for v in labels],
        positions=[w.tok_idx for w in words],
    )


def decode_phrases(
    tokens: list[str],
    labels: list[int],
    probs: list[float],
    positions: list[int] | None = None,
) -> list[tuple[str, float, int]]:
    """Maximal runs of 1-labeled words, as (phrase, mean prob, first position).

    When original token positions are given, a run additionally breaks
    where words were not adjacent in the source text (punctuation between
    them); without positions, adjacency in the list is assumed.
    """
    if positions is None:
        positions = list(range(len(tokens)))
    phrases = []
    run: list[int] = []

    def flush() -> None:
        if not run:
            return
        phrase = " ".join(tokens[i] for i in run)
        score = sum(probs[i] for i in run) / len(run)
        phrases.append((phrase, score, positions[run[0]]))
        run.clear()

    for i, label in enumerate(labels):
        if label != 1:
            flush()
            continue
        if run and positions[i] != positions[run[-1]] + 1:
            flush()
        run.append(i)
    flush()
    return phrases
