"""Tokenization and stem/lemma normalization.

One Normalizer instance covers a single language and is used everywhere a
surface form has to be reduced to a canonical key: candidate generation,
present-keyword detection and metric matching.

Normalized forms are produced by iterating the underlying stemmer to a
fixed point, so normalizing an already-normalized token never changes it
(single-pass Porter is not idempotent: abuse -> abus -> abu).
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from . import latvian, porter
from .errors import EngineError

log = logging.getLogger(__name__)

MODES = ("porter_stem", "latvian_stem", "lemma_table", "identity")

KNOWN_LANGS = ("en", "sl", "hr", "lv", "et", "ru")

_TOKEN_RE = re.compile(r"\w+|[^\w\s]", re.UNICODE)

_SENTENCE_ENDERS = {".", "!", "?"}

_FIXPOINT_CAP = 8


@dataclass(frozen=True)
class Token:
    surface: str
    norm: str
    sent_idx: int
    tok_idx: int
    is_stopword: bool
    is_alphanumeric: bool


def tokenize(text: str) -> list[Token]:
    """Split text into word and punctuation tokens with sentence indices.

    Sentence boundaries fall after '.', '!' and '?' and at newlines; a
    period following a single-letter token is treated as an abbreviation
    dot, not a boundary ("e.g." stays inside its sentence). Token `norm`
    here is just the lowercased surface; stem/lemma mapping happens in
    Normalizer.tokenize.
    """
    tokens: list[Token] = []
    sent_idx = 0
    pending_break = False
    sentence_has_tokens = False
    prev_surface = ""
    last_end = 0
    for match in _TOKEN_RE.finditer(text):
        gap = text[last_end: match.start()]
        if "\n" in gap:
            pending_break = True
        last_end = match.end()
        surface = match.group()
        if pending_break and sentence_has_tokens:
            sent_idx += 1
            sentence_has_tokens = False
        pending_break = False
        is_alnum = any(ch.isalnum() for ch in surface)
        tokens.append(
            Token(
                surface=surface,
                norm=surface.lower(),
                sent_idx=sent_idx,
                tok_idx=len(tokens),
                is_stopword=False,
                is_alphanumeric=is_alnum,
            )
        )
        sentence_has_tokens = True
        if surface in _SENTENCE_ENDERS:
            abbreviation = surface == "." and len(prev_surface) == 1 and prev_surface.isalpha()
            if not abbreviation:
                pending_break = True
        prev_surface = surface
    return tokens


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a one-word-per-line stopword file (lowercased on load)."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.strip().lower()
        if word:
            words.add(word)
    return frozenset(words)


def load_lemma_table(path: str | Path) -> dict[str, str]:
    """Read a TSV lemma table: `surface<TAB>lemma` per line.

    Surface keys are lowercased so lookups are case-insensitive; lemma
    values are kept as stored.
    """
    table: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise EngineError(f"malformed lemma table line {lineno} in {path}: {line!r}")
        table[parts[0].lower()] = parts[1]
    return table


def bundled_stopwords(lang: str) -> frozenset[str]:
    """Stopword list shipped with the package, empty set if none."""
    try:
        text = resources.files("kwex.data").joinpath(f"stopwords.{lang}.txt").read_text("utf-8")
    except FileNotFoundError:
        return frozenset()
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def lemmatize(word: str, table: Mapping[str, str]) -> str:
    """Exact lemma lookup; unknown words pass through unchanged."""
    return table.get(word.lower(), word)


@dataclass(frozen=True)
class Normalizer:
    lang: str
    mode: str
    lemma_table: Optional[Mapping[str, str]] = None
    stopwords: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise EngineError(f"unknown normalizer mode {self.mode!r}")
        if self.mode == "lemma_table" and self.lemma_table is None:
            raise EngineError("mode 'lemma_table' requires a loaded lemma table")

    @classmethod
    def for_language(
        cls,
        lang: str,
        stopwords_path: str | Path | None = None,
        lemmas_path: str | Path | None = None,
    ) -> "Normalizer":
        """Build the default normalizer for a language code.

        English stems with Porter, Latvian with the Latvian suffix
        stripper; the lemmatized languages need a lemma table file and
        fall back to identity (with a warning) without one. Unknown
        languages get identity mode and an empty stopword list.
        """
        stopwords = (
            load_stopwords(stopwords_path) if stopwords_path else bundled_stopwords(lang)
        )
        if lang == "en":
            return cls(lang, "porter_stem", stopwords=stopwords)
        if lang == "lv":
            return cls(lang, "latvian_stem", stopwords=stopwords)
        if lang in KNOWN_LANGS:
            if lemmas_path is not None:
                return cls(lang, "lemma_table", lemma_table=load_lemma_table(lemmas_path),
                           stopwords=stopwords)
            log.warning("no lemma table for %r; falling back to identity normalization", lang)
            return cls(lang, "identity", stopwords=stopwords)
        log.warning("unknown language %r; identity normalization, empty stopword list", lang)
        return cls(lang, "identity", stopwords=stopwords)

    def _apply_mode(self, word: str) -> str:
        if self.mode == "porter_stem":
            return porter.stem(word)
        if self.mode == "latvian_stem":
            return latvian.stem(word)
        if self.mode == "lemma_table":
            assert self.lemma_table is not None
            return lemmatize(word, self.lemma_table).lower()
        return word

    def normalize_word(self, word: str) -> str:
        """Lowercase and stem/lemmatize to a fixed point."""
        word = word.lower()
        for _ in range(_FIXPOINT_CAP):
            reduced = self._apply_mode(word)
            if reduced == word:
                return word
            word = reduced
        return word

    def is_stopword(self, surface: str) -> bool:
        return surface.lower() in self.stopwords

    def tokenize(self, text: str) -> list[Token]:
        """Tokenize and attach normalized forms and stopword flags."""
        out = []
        for tok in tokenize(text):
            norm = self.normalize_word(tok.norm) if tok.is_alphanumeric else tok.norm
            out.append(
                Token(
                    surface=tok.surface,
                    norm=norm,
                    sent_idx=tok.sent_idx,
                    tok_idx=tok.tok_idx,
                    is_stopword=tok.norm in self.stopwords,
                    is_alphanumeric=tok.is_alphanumeric,
                )
            )
        return out

    def norm_tokens(self, text: str) -> list[str]:
        """Normalized forms of the alphanumeric tokens, in order."""
        return [t.norm for t in self.tokenize(text) if t.is_alphanumeric]

    def phrase_norm(self, phrase: str) -> str:
        """Canonical matching key of a phrase: normalized tokens joined by spaces."""
        return " ".join(self.norm_tokens(phrase))


def identity_normalizer(lang: str = "xx", stopwords: Iterable[str] = ()) -> Normalizer:
    return Normalizer(lang, "identity", stopwords=frozenset(w.lower() for w in stopwords))


def contains_subsequence(haystack: Sequence[str], needle: Sequence[str]) -> bool:
    """True when needle occurs as a contiguous run inside haystack."""
    n, m = len(haystack), len(needle)
    if m == 0 or m > n:
        return False
    first = needle[0]
    for i in range(n - m + 1):
        if haystack[i] == first and list(haystack[i: i + m]) == list(needle):
            return True
    return False


def find_subsequence_spans(haystack: Sequence[str], needle: Sequence[str]) -> list[tuple[int, int]]:
    """All [start, end) spans where needle occurs contiguously in haystack."""
    spans = []
    n, m = len(haystack), len(needle)
    if m == 0 or m > n:
        return spans
    for i in range(n - m + 1):
        if list(haystack[i: i + m]) == list(needle):
            spans.append((i, i + m))
    return spans
