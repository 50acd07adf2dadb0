"""Cross-lingual experiment planning and analysis.

Covers the combinatorial side of multi-language training studies: k-subset
enumeration of the language set, MON/LOO/MUL manifest construction, the
languages-vs-score curve, the train-by-test affinity matrix and its
agglomerative clustering into a dendrogram. Training itself is delegated;
manifests pin down data composition so each regime is reproducible.
"""

from __future__ import annotations

import json
import statistics
from dataclasses import dataclass
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

from .cluster import agglomerate
from .errors import PlanError
from .evaluate import MetricsReport

DEFAULT_LANGS = ("en", "sl", "hr", "lv", "et", "ru")

REGIMES = ("MON", "LOO", "MUL", "CUSTOM")


@dataclass(frozen=True)
class LanguageSet:
    langs: tuple[str, ...] = DEFAULT_LANGS

    def __post_init__(self) -> None:
        if len(set(self.langs)) != len(self.langs):
            raise PlanError(f"duplicate language codes in {self.langs}")
        if not self.langs:
            raise PlanError("language set must be nonempty")

    def __len__(self) -> int:
        return len(self.langs)

    def __iter__(self):
        return iter(self.langs)

    def __contains__(self, lang: str) -> bool:
        return lang in self.langs


def enumerate_tuples(langs: LanguageSet, k: int) -> list[tuple[str, ...]]:
    """All k-subsets of the language set, in its fixed order.

    The count is always comb(len(langs), k).
    """
    if not 1 <= k <= len(langs):
        raise PlanError(f"k must be in 1..{len(langs)}, got {k}")
    tuples = list(combinations(langs.langs, k))
    assert len(tuples) == comb(len(langs), k)
    return tuples


def split_path(data_root: str | Path, lang: str, split: str) -> Path:
    return Path(data_root) / f"{lang}.{split}.jsonl"


@dataclass(frozen=True)
class ExperimentManifest:
    name: str
    regime: str
    train_langs: tuple[str, ...]
    test_lang: str
    train_files: tuple[str, ...]
    valid_files: tuple[str, ...]
    test_files: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "regime": self.regime,
            "train_langs": list(self.train_langs),
            "test_lang": self.test_lang,
            "train_files": list(self.train_files),
            "valid_files": list(self.valid_files),
            "test_files": list(self.test_files),
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")

    @classmethod
    def from_dict(cls, data: Mapping) -> "ExperimentManifest":
        return cls(
            name=data["name"],
            regime=data["regime"],
            train_langs=tuple(data["train_langs"]),
            test_lang=data["test_lang"],
            train_files=tuple(data["train_files"]),
            valid_files=tuple(data["valid_files"]),
            test_files=tuple(data["test_files"]),
        )

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentManifest":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def build_manifest(
    regime: str,
    langs: LanguageSet,
    test_lang: str,
    data_root: str | Path,
    train_langs: Optional[Sequence[str]] = None,
) -> ExperimentManifest:
    """Pin down the train/valid/test file composition for one regime.

    MON trains on the test language only, LOO on every other language,
    MUL on all of them; CUSTOM takes an explicit train tuple. Missing
    split files raise PlanError naming the file.
    """
    if regime not in REGIMES:
        raise PlanError(f"unknown regime {regime!r}, expected one of {REGIMES}")
    if test_lang not in langs:
        raise PlanError(f"test language {test_lang!r} not in language set {langs.langs}")
    if regime == "MON":
        train = (test_lang,)
    elif regime == "LOO":
        train = tuple(lang for lang in langs if lang != test_lang)
    elif regime == "MUL":
        train = tuple(langs.langs)
    else:
        if not train_langs:
            raise PlanError("CUSTOM regime requires explicit train languages")
        unknown = [lang for lang in train_langs if lang not in langs]
        if unknown:
            raise PlanError(f"train languages {unknown} not in language set")
        if len(set(train_langs)) != len(train_langs):
            raise PlanError(f"duplicate train languages in {train_langs}")
        train = tuple(train_langs)

    train_files = tuple(str(split_path(data_root, lang, "train")) for lang in train)
    valid_files = tuple(str(split_path(data_root, lang, "valid")) for lang in train)
    test_files = (str(split_path(data_root, test_lang, "test")),)
    for path in train_files + valid_files + test_files:
        if not Path(path).exists():
            raise PlanError(f"missing split file {path}")

    if regime == "CUSTOM":
        name = f"CUSTOM-train={'+'.join(train)}-test={test_lang}"
    else:
        name = f"{regime}-test={test_lang}"
    return ExperimentManifest(
        name=name, regime=regime, train_langs=train, test_lang=test_lang,
        train_files=train_files, valid_files=valid_files, test_files=test_files,
    )


def language_count_curve(
    results: Sequence[tuple[Sequence[str], float]],
    test_lang: str,
) -> list[dict]:
    """Group (train tuple, score) results by tuple size for plotting.

    Every train tuple must exclude the test language. Output is one entry
    per size k with best/min/max/median plus the raw per-tuple points.
    """
    groups: dict[int, list[tuple[str, float]]] = {}
    for train, score in results:
        train = tuple(train)
        if test_lang in train:
            raise PlanError(f"train tuple {train} contains the test language {test_lang!r}")
        groups.setdefault(len(train), []).append(("+".join(train), float(score)))
    curve = []
    for k in sorted(groups):
        values = [score for _, score in groups[k]]
        curve.append({
            "k": k,
            "best": max(values),
            "min": min(values),
            "max": max(values),
            "median": statistics.median(values),
            "points": [{"train_langs": name, "f1": score} for name, score in groups[k]],
        })
    return curve


@dataclass(frozen=True)
class AffinityMatrix:
    """Square train-language by test-language score grid."""

    labels: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.values) != n or any(len(row) != n for row in self.values):
            raise PlanError("affinity matrix must be square with one row per label")
        for row in self.values:
            for v in row:
                if not 0.0 <= v <= 1.0:
                    raise PlanError(f"affinity entry {v} outside [0, 1]")

    def to_csv(self) -> str:
        lines = ["train\\test," + ",".join(self.labels)]
        for label, row in zip(self.labels, self.values):
            lines.append(label + "," + ",".join(f"{v:.6f}" for v in row))
        return "\n".join(lines) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8")

    @classmethod
    def from_csv(cls, text: str) -> "AffinityMatrix":
        lines = [line for line in text.strip().splitlines() if line.strip()]
        header = lines[0].split(",")
        labels = tuple(header[1:])
        values = []
        for line in lines[1:]:
            cells = line.split(",")
            values.append(tuple(float(v) for v in cells[1:]))
        return cls(labels=labels, values=tuple(values))

    @classmethod
    def load(cls, path: str | Path) -> "AffinityMatrix":
        return cls.from_csv(Path(path).read_text(encoding="utf-8"))


def heatmap_matrix(
    reports: Mapping[tuple[str, str], Union[MetricsReport, float]],
    langs: LanguageSet,
) -> AffinityMatrix:
    """Assemble the full train-by-test F1 grid; every pair must be present."""
    values = []
    for train in langs:
        row = []
        for test in langs:
            entry = reports.get((train, test))
            if entry is None:
                raise PlanError(f"missing report for pair (train={train}, test={test})")
            row.append(entry.f1 if isinstance(entry, MetricsReport) else float(entry))
        values.append(tuple(row))
    return AffinityMatrix(labels=tuple(langs.langs), values=tuple(values))


def affinity_distances(matrix: AffinityMatrix) -> list[list[float]]:
    """Symmetrize and normalize affinities into pairwise distances.

    d(i, j) = 1 - (m[i][j] + m[j][i]) / (2 * max entry); an all-zero
    matrix degenerates to distance 1 everywhere.
    """
    n = len(matrix.labels)
    peak = max(v for row in matrix.values for v in row)
    dist = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if peak == 0.0:
                dist[i][j] = 1.0
            else:
                dist[i][j] = 1.0 - (matrix.values[i][j] + matrix.values[j][i]) / (2.0 * peak)
    return dist


def agglomerative_cluster(matrix: AffinityMatrix, linkage: str = "average") -> list[dict]:
    """Cluster languages by cross-score affinity; returns ordered merges.

    Each merge is {"left": name, "right": name, "height": distance} where
    a cluster's name joins its member labels with '+' in label order.
    """
    if len(matrix.labels) < 2:
        raise PlanError("clustering needs at least two labels")
    merges, _ = agglomerate(affinity_distances(matrix), linkage=linkage)

    def name(members: tuple[int, ...]) -> str:
        return "+".join(matrix.labels[i] for i in members)

    return [
        {"left": name(m.left), "right": name(m.right), "height": m.height}
        for m in merges
    ]
