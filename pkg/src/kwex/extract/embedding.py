"""Embedding-similarity ranker with pluggable vector providers.

The engine never computes embeddings itself: vectors come from a
file-backed lookup table or an HTTP service. A document's unigram
candidates are ranked by cosine similarity between the candidate vector
and the whole-document vector, with no diversification.

Provider contracts
------------------
File table (TSV, UTF-8): each line is `<key>\\t<floats separated by spaces>`
where key is either the literal text or its sha256 hex digest (use digests
for texts containing tabs or newlines). All vectors must share one
dimension.

HTTP service: POST {"texts": [str, ...]} returning {"vectors": [[float,
...], ...]}, one vector per input text, in order.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path
from typing import Protocol, Sequence

import requests

from ..candidates import generate
from ..corpus import Document
from ..errors import EngineError, ProviderError
from ..normalize import Normalizer
from . import ScoredKeyword, rank_candidates

Vector = tuple[float, ...]


def cosine(a: Sequence[float], b: Sequence[float]) -> float:
    """Cosine similarity of two equal-dimension nonzero vectors."""
    if len(a) != len(b):
        raise EngineError(f"cosine dimension mismatch: {len(a)} vs {len(b)}")
    dot = sum(x * y for x, y in zip(a, b))
    norm_a = math.sqrt(sum(x * x for x in a))
    norm_b = math.sqrt(sum(y * y for y in b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise EngineError("cosine undefined for a zero vector")
    return dot / (norm_a * norm_b)


class EmbeddingProvider(Protocol):
    dim: int

    def embed(self, texts: Sequence[str]) -> list[Vector]: ...


def _text_key(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class FileProvider:
    """Exact-match lookup over a TSV table of precomputed vectors."""

    kind = "file_backed"

    def __init__(self, table: dict[str, Vector], dim: int):
        self._table = table
        self.dim = dim

    @classmethod
    def load(cls, path: str | Path) -> "FileProvider":
        table: dict[str, Vector] = {}
        dim: int | None = None
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            key, sep, rest = line.partition("\t")
            if not sep:
                raise ProviderError(f"malformed embedding line {lineno} in {path}: no tab")
            try:
                vector = tuple(float(v) for v in rest.split())
            except ValueError as exc:
                raise ProviderError(
                    f"malformed embedding line {lineno} in {path}: {exc}") from exc
            if not vector:
                raise ProviderError(f"empty vector at line {lineno} in {path}")
            if dim is None:
                dim = len(vector)
            elif len(vector) != dim:
                raise ProviderError(
                    f"inconsistent dimension at line {lineno} in {path}: "
                    f"{len(vector)} != {dim}")
            table[key] = vector
        if dim is None:
            raise ProviderError(f"embedding file {path} is empty")
        return cls(table, dim)

    def embed(self, texts: Sequence[str]) -> list[Vector]:
        out = []
        for text in texts:
            vec = self._table.get(text)
            if vec is None:
                vec = self._table.get(_text_key(text))
            if vec is None:
                raise ProviderError(f"missing embedding for key {text[:80]!r}")
            out.append(vec)
        return out


class HttpProvider:
    """Single-endpoint embedding service client."""

    kind = "http_service"

    def __init__(self, url: str, timeout: float = 30.0):
        self.url = url
        self.timeout = timeout
        self.dim = 0  # learned from the first response

    def embed(self, texts: Sequence[str]) -> list[Vector]:
        try:
            resp = requests.post(self.url, json={"texts": list(texts)},
                                 timeout=self.timeout)
            resp.raise_for_status()
            payload = resp.json()
        except (requests.RequestException, json.JSONDecodeError) as exc:
            raise ProviderError(f"embedding service failure at {self.url}: {exc}") from exc
        vectors = payload.get("vectors")
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise ProviderError(
                f"embedding service returned {len(vectors) if isinstance(vectors, list) else 'no'}"
                f" vectors for {len(texts)} texts")
        out = [tuple(float(v) for v in vec) for vec in vectors]
        if out:
            if self.dim == 0:
                self.dim = len(out[0])
            for vec in out:
                if len(vec) != self.dim:
                    raise ProviderError("embedding service returned ragged dimensions")
        return out


def keybert_rank(doc: Document, normalizer: Normalizer,
                 provider: EmbeddingProvider, k: int = 10,
                 max_n: int = 1) -> list[ScoredKeyword]:
    """Rank candidates by cosine similarity to the whole-document vector.

    Default candidates are unigrams (the stronger configuration); set
    max_n for the 1..3-gram ablation. All candidate texts and the document
    go to the provider in a single batch.
    """
    tokens = normalizer.tokenize(doc.text)
    cands = generate(tokens, max_n=max_n)
    if not cands:
        return []
    vectors = provider.embed([doc.text] + [c.surface for c in cands])
    doc_vec = vectors[0]
    rows = []
    for cand, vec in zip(cands, vectors[1:]):
        rows.append((cosine(vec, doc_vec), cand.first_tok_idx, cand.norm, cand.surface))
    return rank_candidates(rows, better="higher", k=k)
