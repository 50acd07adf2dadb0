"""Document model, JSONL ingestion and corpus statistics.

Corpus interchange format is JSONL, one document per line:

    {"id": str, "title": str?, "text": str, "keywords": [str, ...]}

A title, when present, is prepended to the text with a newline so the
whole article is a single body. Files follow the naming convention
`<lang>.<split>.jsonl`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CorpusError
from .normalize import Normalizer, contains_subsequence

SPLITS = ("train", "valid", "test")


@dataclass(frozen=True)
class Document:
    id: str
    lang: str
    text: str
    keywords: tuple[str, ...] = ()
    split: str = "test"


@dataclass(frozen=True)
class CorpusStats:
    size: int
    kw_per_doc: float
    kw_present: float


def load_jsonl(path: str | Path, lang: str, split: str = "test") -> list[Document]:
    """Load documents from a JSONL file, in file order.

    No lowercasing or other normalization happens here. Raises CorpusError
    for malformed JSON, missing fields or duplicate ids, always naming the
    offending line or id.
    """
    if split not in SPLITS:
        raise CorpusError(f"unknown split {split!r}, expected one of {SPLITS}")
    path = Path(path)
    docs: list[Document] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"malformed JSON at line {lineno} of {path}: {exc.msg}") from exc
            for fieldname in ("id", "text", "keywords"):
                if fieldname not in record:
                    raise CorpusError(f"missing field {fieldname!r} at line {lineno} of {path}")
            doc_id = str(record["id"])
            if doc_id in seen:
                raise CorpusError(f"duplicate document id {doc_id!r} at line {lineno} of {path}")
            seen.add(doc_id)
            text = record["text"]
            title = record.get("title")
            if title:
                text = f"{title}\n{text}"
            docs.append(
                Document(
                    id=doc_id,
                    lang=lang,
                    text=text,
                    keywords=tuple(str(k) for k in record["keywords"]),
                    split=split,
                )
            )
    return docs


def save_jsonl(docs: Iterable[Document], path: str | Path) -> int:
    """Write documents back out as JSONL; returns the number written."""
    path = Path(path)
    count = 0
    with path.open("w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps(
                {"id": doc.id, "text": doc.text, "keywords": list(doc.keywords)},
                ensure_ascii=False,
            ))
            fh.write("\n")
            count += 1
    return count


def keyword_is_present(keyword: str, doc_norm_tokens: Sequence[str], normalizer: Normalizer) -> bool:
    """A keyword is present when its normalized token sequence occurs
    contiguously in the document's normalized token sequence."""
    needle = normalizer.norm_tokens(keyword)
    if not needle:
        return False
    return contains_subsequence(doc_norm_tokens, needle)


def compute_stats(docs: Sequence[Document], normalizer: Normalizer) -> CorpusStats:
    """Split-level statistics: document count, mean keywords per document
    and the fraction of keyword instances present in their document.

    The present ratio is computed over all gold keyword instances in the
    split (not averaged per document); documents without keywords simply
    contribute nothing to either side of the ratio.
    """
    if not docs:
        raise CorpusError("compute_stats needs a nonempty document list")
    total_keywords = 0
    present_keywords = 0
    for doc in docs:
        if not doc.keywords:
            continue
        doc_tokens = normalizer.norm_tokens(doc.text)
        for keyword in doc.keywords:
            total_keywords += 1
            if keyword_is_present(keyword, doc_tokens, normalizer):
                present_keywords += 1
    size = len(docs)
    kw_per_doc = total_keywords / size
    kw_present = present_keywords / total_keywords if total_keywords else 0.0
    return CorpusStats(size=size, kw_per_doc=kw_per_doc, kw_present=kw_present)
