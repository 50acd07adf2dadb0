"""Precision/recall/F1 at k with normalized phrase matching.

Gold and predicted phrases are matched on their normalized forms (single
spaces between normalized tokens, exact equality, no partial credit).
Documents with no gold keywords, or none present in their own text, are
omitted from scoring. Aggregates are macro means over the scored
documents; because the per-10 denominator convention is ambiguous in the
literature, the report carries both precision variants: the headline one
divides by the number of predictions actually considered, the fixed one
always divides by k.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import Document
from .errors import PredictionError
from .normalize import Normalizer, contains_subsequence


@dataclass(frozen=True)
class DocScore:
    doc_id: str
    precision: float
    recall: float
    f1: float
    n_gold_present: int
    n_predicted: int


@dataclass(frozen=True)
class MetricsReport:
    k: int
    per_doc: tuple[DocScore, ...]
    precision: float
    recall: float
    f1: float
    precision_fixed_k: float
    omitted: int
    averaging: str = "macro"

    def to_dict(self) -> dict:
        data = asdict(self)
        data["per_doc"] = [asdict(d) for d in self.per_doc]
        return data

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def from_dict(cls, data: Mapping) -> "MetricsReport":
        per_doc = tuple(DocScore(**d) for d in data["per_doc"])
        return cls(
            k=data["k"], per_doc=per_doc, precision=data["precision"],
            recall=data["recall"], f1=data["f1"],
            precision_fixed_k=data["precision_fixed_k"],
            omitted=data["omitted"], averaging=data.get("averaging", "macro"),
        )

    @classmethod
    def load(cls, path: str | Path) -> "MetricsReport":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def present_gold(doc: Document, normalizer: Normalizer) -> set[str]:
    """Normalized gold keyphrases that occur contiguously in the document."""
    doc_tokens = normalizer.norm_tokens(doc.text)
    present = set()
    for keyword in doc.keywords:
        needle = normalizer.norm_tokens(keyword)
        if needle and contains_subsequence(doc_tokens, needle):
            present.add(" ".join(needle))
    return present


def _considered(predicted: Sequence[str], normalizer: Normalizer, k: int) -> list[str]:
    """Top-k predictions, normalized, deduplicated preserving rank."""
    seen = set()
    out = []
    for phrase in predicted[:k]:
        norm = normalizer.phrase_norm(phrase)
        if norm and norm not in seen:
            seen.add(norm)
            out.append(norm)
    return out


def score_at_k(predicted: Sequence[str], gold_present: set[str],
               normalizer: Normalizer, k: int = 10) -> tuple[float, float, float]:
    """(precision, recall, f1) for one ranked prediction list.

    Precision divides by the number of considered predictions (the
    headline convention); see score_detail for the fixed-k variant.
    """
    precision, _, recall, f1 = score_detail(predicted, gold_present, normalizer, k)
    return precision, recall, f1


def score_detail(predicted: Sequence[str], gold_present: set[str],
                 normalizer: Normalizer, k: int = 10
                 ) -> tuple[float, float, float, float]:
    """(precision_considered, precision_fixed_k, recall, f1)."""
    considered = _considered(predicted, normalizer, k)
    if not considered:
        return 0.0, 0.0, 0.0, 0.0
    matches = sum(1 for norm in considered if norm in gold_present)
    precision = matches / len(considered)
    precision_fixed = matches / k
    recall = matches / len(gold_present) if gold_present else 0.0
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return precision, precision_fixed, recall, f1


def read_predictions(path: str | Path) -> dict[str, list[str]]:
    """Read a predictions JSONL file into {doc id: ranked phrases}.

    Lines look like {"id": str, "keywords": [{"phrase": str, "score":
    float}, ...]} with keywords already sorted best-first.
    """
    path = Path(path)
    predictions: dict[str, list[str]] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise PredictionError(
                    f"malformed JSON at line {lineno} of {path}: {exc.msg}") from exc
            if "id" not in record or "keywords" not in record:
                raise PredictionError(f"missing id/keywords at line {lineno} of {path}")
            doc_id = str(record["id"])
            if doc_id in predictions:
                raise PredictionError(f"duplicate prediction for id {doc_id!r} at line {lineno}")
            phrases = []
            for kw in record["keywords"]:
                if "phrase" not in kw:
                    raise PredictionError(
                        f"keyword entry without phrase for id {doc_id!r} at line {lineno}")
                phrases.append(str(kw["phrase"]))
            predictions[doc_id] = phrases
    return predictions


def evaluate_run(predictions_path: str | Path, corpus: Sequence[Document],
                 normalizer: Normalizer, k: int = 10) -> MetricsReport:
    """Score a predictions file against a corpus.

    Every prediction id must exist in the corpus. Documents with no
    present gold keywords are omitted; a scored document with no
    prediction line counts as an empty prediction list.
    """
    predictions = read_predictions(predictions_path)
    known = {doc.id for doc in corpus}
    for doc_id in predictions:
        if doc_id not in known:
            raise PredictionError(f"prediction id {doc_id!r} not found in corpus")
    per_doc = []
    sums = [0.0, 0.0, 0.0, 0.0]
    omitted = 0
    for doc in corpus:
        gold = present_gold(doc, normalizer)
        if not doc.keywords or not gold:
            omitted += 1
            continue
        predicted = predictions.get(doc.id, [])
        precision, precision_fixed, recall, f1 = score_detail(predicted, gold, normalizer, k)
        per_doc.append(DocScore(
            doc_id=doc.id, precision=precision, recall=recall, f1=f1,
            n_gold_present=len(gold), n_predicted=len(predicted),
        ))
        for i, v in enumerate((precision, precision_fixed, recall, f1)):
            sums[i] += v
    n = len(per_doc)
    return MetricsReport(
        k=k,
        per_doc=tuple(per_doc),
        precision=sums[0] / n if n else 0.0,
        recall=sums[2] / n if n else 0.0,
        f1=sums[3] / n if n else 0.0,
        precision_fixed_k=sums[1] / n if n else 0.0,
        omitted=omitted,
    )
