"""Manifest-driven dataset assembly and subword encoding.

Training data comes exclusively from the files listed in an
ExperimentManifest; test files are never touched here. Long documents are
split into overlapping word windows so any encoder context size works.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from kwex.corpus import Document, load_jsonl
from kwex.errors import EngineError
from kwex.normalize import Normalizer
from kwex.xling import ExperimentManifest

from .labeling import label_document

WINDOW_OVERLAP = 64


@dataclass(frozen=True)
class Example:
    doc_id: str
    words: tuple[str, ...]
    labels: tuple[int, ...]


def window_spans(n_words: int, max_words: int, overlap: int = WINDOW_OVERLAP
                 ) -> list[tuple[int, int]]:
    """[start, end) word windows covering 0..n_words with the given overlap."""
    if n_words <= max_words:
        return [(0, n_words)] if n_words else []
    if overlap >= max_words:
        overlap = max_words // 2
    stride = max_words - overlap
    spans = []
    start = 0
    while True:
        end = min(start + max_words, n_words)
        spans.append((start, end))
        if end == n_words:
            return spans
        start += stride


def manifest_normalizers(langs: Sequence[str]) -> dict[str, Normalizer]:
    return {lang: Normalizer.for_language(lang) for lang in set(langs)}


def load_labeled_examples(
    files: Sequence[str],
    langs: Sequence[str],
    split: str,
    max_words: int,
) -> list[Example]:
    """Labeled word windows for every document with at least one positive.

    Documents whose gold keywords are absent from their text carry no
    signal for a tagger and are dropped.
    """
    normalizers = manifest_normalizers(langs)
    examples: list[Example] = []
    for lang, path in zip(langs, files):
        normalizer = normalizers[lang]
        for doc in load_jsonl(path, lang, split):
            tagged = label_document(doc, normalizer)
            if not any(tagged.labels):
                continue
            for start, end in window_spans(len(tagged.tokens), max_words):
                window_labels = tagged.labels[start:end]
                if not any(window_labels):
                    continue
                examples.append(Example(
                    doc_id=doc.id,
                    words=tuple(tagged.tokens[start:end]),
                    labels=tuple(window_labels),
                ))
    return examples


def examples_from_manifest(manifest: ExperimentManifest, split: str,
                           max_words: int) -> list[Example]:
    if split == "train":
        files, langs = manifest.train_files, manifest.train_langs
    elif split == "valid":
        files, langs = manifest.valid_files, manifest.train_langs
    else:
        raise EngineError(f"manifest training only reads train/valid, not {split!r}")
    return load_labeled_examples(files, langs, split, max_words)


def encode_batch(tokenizer, batch: Sequence[Example], max_length: int):
    """Tokenize word lists and project word labels onto first subtokens.

    Non-first subtokens and special positions get label -100 so the loss
    ignores them.
    """
    import torch

    encoding = tokenizer(
        [list(ex.words) for ex in batch],
        is_split_into_words=True,
        truncation=True,
        max_length=max_length,
        padding=True,
        return_tensors="pt",
    )
    labels = torch.full(encoding["input_ids"].shape, -100, dtype=torch.long)
    for row, ex in enumerate(batch):
        seen = set()
        for pos, word_idx in enumerate(encoding.word_ids(row)):
            if word_idx is None or word_idx in seen:
                continue
            seen.add(word_idx)
            labels[row, pos] = ex.labels[word_idx]
    encoding["labels"] = labels
    return encoding


def iter_batches(examples: Sequence[Example], batch_size: int) -> Iterator[list[Example]]:
    for i in range(0, len(examples), batch_size):
        yield list(examples[i: i + batch_size])
