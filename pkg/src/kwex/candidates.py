"""N-gram keyphrase-candidate generation shared by the extractors.

Candidates are sliding-window n-grams (n between 1 and 3) that stay inside
one sentence, contain no punctuation and no purely numeric token, and do
not start or end with a stopword. Windows with identical normalized forms
merge into a single candidate whose occurrences are pooled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EngineError
from .normalize import Token

MAX_NGRAM = 3


@dataclass
class Candidate:
    surface: str
    norm: str
    n: int
    occurrences: list[tuple[int, int]]  # (sent_idx, tok_idx of first token)

    @property
    def tf(self) -> int:
        return len(self.occurrences)

    @property
    def first_tok_idx(self) -> int:
        return self.occurrences[0][1]


def _is_numeric(token: Token) -> bool:
    return all(ch.isdigit() for ch in token.surface)


def _window_ok(window: list[Token], allow_inner_stopword: bool) -> bool:
    if any(not t.is_alphanumeric or _is_numeric(t) for t in window):
        return False
    if window[0].is_stopword or window[-1].is_stopword:
        return False
    if not allow_inner_stopword and any(t.is_stopword for t in window[1:-1]):
        return False
    return True


def generate(tokens: list[Token], max_n: int = MAX_NGRAM,
             allow_inner_stopword: bool = False) -> list[Candidate]:
    """Enumerate candidates in first-occurrence order.

    Raises EngineError when max_n is outside 1..3.
    """
    if not 1 <= max_n <= MAX_NGRAM:
        raise EngineError(f"max_n must be in 1..{MAX_NGRAM}, got {max_n}")
    by_norm: dict[str, Candidate] = {}
    order: list[str] = []
    total = len(tokens)
    for start in range(total):
        first = tokens[start]
        for n in range(1, max_n + 1):
            end = start + n
            if end > total:
                break
            window = tokens[start:end]
            if window[-1].sent_idx != first.sent_idx:
                break  # windows never cross sentence boundaries
            if not _window_ok(window, allow_inner_stopword):
                continue
            norm = " ".join(t.norm for t in window)
            occurrence = (first.sent_idx, first.tok_idx)
            found = by_norm.get(norm)
            if found is None:
                by_norm[norm] = Candidate(
                    surface=" ".join(t.surface for t in window),
                    norm=norm,
                    n=n,
                    occurrences=[occurrence],
                )
                order.append(norm)
            else:
                found.occurrences.append(occurrence)
    return [by_norm[k] for k in order]
