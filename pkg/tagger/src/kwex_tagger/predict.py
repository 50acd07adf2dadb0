"""Inference: word probabilities, run decoding, predictions JSONL export.

Word labels come from the first subtoken of each word; documents longer
than the encoder window are covered by overlapping word windows whose
probabilities are averaged. Output follows the engine's predictions
contract and is written atomically.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from kwex.corpus import Document, load_jsonl
from kwex.normalize import Normalizer

from .dataset import window_spans
from .labeling import decode_phrases, document_words
from .train import window_size_for

POSITIVE_THRESHOLD = 0.5


def _load_checkpoint(checkpoint_dir: str | Path):
    from transformers import AutoModelForTokenClassification, AutoTokenizer

    model = AutoModelForTokenClassification.from_pretrained(checkpoint_dir)
    tokenizer = AutoTokenizer.from_pretrained(checkpoint_dir)
    model.eval()
    return model, tokenizer


def score_document(doc: Document, normalizer: Normalizer, model, tokenizer,
                   max_words: int) -> list[dict]:
    """Ranked keyword dicts for one document."""
    import torch

    words = document_words(doc, normalizer)
    if not words:
        return []
    sums = [0.0] * len(words)
    counts = [0] * len(words)
    max_length = model.config.max_position_embeddings
    with torch.no_grad():
        for start, end in window_spans(len(words), max_words):
            surfaces = [w.surface for w in words[start:end]]
            encoding = tokenizer([surfaces], is_split_into_words=True,
                                 truncation=True, max_length=max_length,
                                 return_tensors="pt")
            logits = model(**encoding).logits[0]
            probs = torch.softmax(logits, dim=-1)[:, 1]
            seen = set()
            for pos, word_idx in enumerate(encoding.word_ids(0)):
                if word_idx is None or word_idx in seen:
                    continue
                seen.add(word_idx)
                sums[start + word_idx] += float(probs[pos])
                counts[start + word_idx] += 1
    word_probs = [s / c if c else 0.0 for s, c in zip(sums, counts)]
    labels = [1 if p >= POSITIVE_THRESHOLD else 0 for p in word_probs]
    phrases = decode_phrases([w.surface for w in words], labels, word_probs,
                             positions=[w.tok_idx for w in words])
    return rank_phrases(phrases, normalizer)


def rank_phrases(phrases: list[tuple[str, float, int]],
                 normalizer: Normalizer) -> list[dict]:
    """Deduplicate decoded runs on normalized form (max score wins) and
    sort best-first, ties to the earlier occurrence."""
    best: dict[str, tuple[float, int, str]] = {}
    for phrase, score, first_pos in phrases:
        norm = normalizer.phrase_norm(phrase)
        if not norm:
            continue
        held = best.get(norm)
        if held is None:
            best[norm] = (score, first_pos, phrase)
        elif score > held[0]:
            best[norm] = (score, min(held[1], first_pos), phrase)
        else:
            best[norm] = (held[0], min(held[1], first_pos), held[2])
    ranked = sorted(
        ((score, first, norm, phrase) for norm, (score, first, phrase) in best.items()),
        key=lambda row: (-row[0], row[1], row[2]),
    )
    return [{"phrase": phrase, "score": score} for score, _, _, phrase in ranked]


def predict(
    checkpoint_dir: str | Path,
    corpus_path: str | Path,
    lang: str,
    out_path: str | Path,
    k: int = 10,
    split: str = "test",
    lemmas_path: str | Path | None = None,
) -> Path:
    """Tag a corpus file and write engine-format predictions JSONL."""
    model, tokenizer = _load_checkpoint(checkpoint_dir)
    max_words = window_size_for(model)
    normalizer = Normalizer.for_language(lang, lemmas_path=lemmas_path)
    docs = load_jsonl(corpus_path, lang, split)
    out_path = Path(out_path)
    tmp_path = out_path.with_suffix(out_path.suffix + ".tmp")
    with tmp_path.open("w", encoding="utf-8") as fh:
        for doc in docs:
            keywords = score_document(doc, normalizer, model, tokenizer, max_words)[:k]
            fh.write(json.dumps({"id": doc.id, "keywords": keywords},
                                ensure_ascii=False))
            fh.write("\n")
    os.replace(tmp_path, out_path)
    return out_path
