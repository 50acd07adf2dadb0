"""Agglomerative hierarchical clustering over a precomputed distance matrix.

Used both for topic grouping of keyphrase candidates and for the
language-affinity dendrogram. Cluster distances are maintained with the
Lance-Williams recurrences; for average linkage that is exactly the mean
over all member pairs (UPGMA).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import EngineError

LINKAGES = ("average", "single", "complete")


@dataclass(frozen=True)
class Merge:
    left: tuple[int, ...]   # leaf indices of the older cluster
    right: tuple[int, ...]
    height: float


def _validate(dist: Sequence[Sequence[float]]) -> int:
    n = len(dist)
    for row in dist:
        if len(row) != n:
            raise EngineError("distance matrix must be square")
    return n


def agglomerate(
    dist: Sequence[Sequence[float]],
    linkage: str = "average",
    stop_distance: Optional[float] = None,
) -> tuple[list[Merge], list[tuple[int, ...]]]:
    """Merge clusters bottom-up; returns (merge list, final clusters).

    With stop_distance set, merging halts once the closest pair is
    strictly farther than that value (the cut used for topic clustering);
    otherwise merging continues down to a single cluster. Ties on distance
    break deterministically toward the oldest cluster pair.
    """
    if linkage not in LINKAGES:
        raise EngineError(f"unknown linkage {linkage!r}, expected one of {LINKAGES}")
    n = _validate(dist)
    if n == 0:
        return [], []
    members: dict[int, tuple[int, ...]] = {i: (i,) for i in range(n)}
    pair_dist: dict[tuple[int, int], float] = {}
    for i in range(n):
        for j in range(i + 1, n):
            pair_dist[(i, j)] = float(dist[i][j])
    next_id = n
    merges: list[Merge] = []
    while len(members) > 1:
        best = min(pair_dist.items(), key=lambda kv: (kv[1], kv[0]))
        (ci, cj), height = best
        if stop_distance is not None and height > stop_distance:
            break
        size_i, size_j = len(members[ci]), len(members[cj])
        new_id = next_id
        next_id += 1
        merges.append(Merge(left=members[ci], right=members[cj], height=height))
        for ck in list(members):
            if ck in (ci, cj):
                continue
            d_ik = pair_dist.pop((min(ci, ck), max(ci, ck)))
            d_jk = pair_dist.pop((min(cj, ck), max(cj, ck)))
            if linkage == "single":
                d_new = min(d_ik, d_jk)
            elif linkage == "complete":
                d_new = max(d_ik, d_jk)
            else:
                d_new = (size_i * d_ik + size_j * d_jk) / (size_i + size_j)
            pair_dist[(ck, new_id)] = d_new
        del pair_dist[(ci, cj)]
        merged = tuple(sorted(members.pop(ci) + members.pop(cj)))
        members[new_id] = merged
    clusters = [members[k] for k in sorted(members)]
    return merges, clusters
