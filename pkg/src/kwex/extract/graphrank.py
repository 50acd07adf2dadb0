"""Graph-based extractors: TextRank, a multipartite candidate ranker and a
meta-vertex load-centrality ranker.

All three build document-scale word graphs and rank nodes with the kernels
from graphkit; they differ in what a node is (single words, candidate
phrases, merged near-duplicate words) and in how edges are weighted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from ..cluster import agglomerate
from ..corpus import Document
from ..graphkit import WordGraph, levenshtein, load_centrality, pagerank
from ..normalize import Normalizer, Token
from . import ScoredKeyword, rank_candidates
from .statistical import phrase_runs

# POS tags treated as adjective/noun material when a sidecar is supplied
# (covers both the universal and Penn-style tagsets)
ADJ_NOUN_TAGS = frozenset(
    {"ADJ", "NOUN", "PROPN", "JJ", "JJR", "JJS", "NN", "NNS", "NNP", "NNPS"}
)


def _is_numeric(tok: Token) -> bool:
    return all(ch.isdigit() for ch in tok.surface)


def _is_word(tok: Token) -> bool:
    return tok.is_alphanumeric and not tok.is_stopword and not _is_numeric(tok)


def textrank(doc: Document, normalizer: Normalizer, k: int = 10,
             window: int = 2, keep_ratio: float = 0.33) -> list[ScoredKeyword]:
    """Co-occurrence PageRank over single words, merged into phrases.

    Words co-occur when fewer than `window` token positions apart. The top
    keep_ratio share of ranked words survives; adjacent survivors in the
    original text merge into multi-word phrases scored by the sum of their
    member scores.
    """
    tokens = normalizer.tokenize(doc.text)
    graph = WordGraph(directed=False)
    first_seen: dict[str, int] = {}
    for tok in tokens:
        if _is_word(tok):
            graph.add_node(tok.norm)
            first_seen.setdefault(tok.norm, tok.tok_idx)
    if len(graph) == 0:
        return []
    for i, tok in enumerate(tokens):
        if not _is_word(tok):
            continue
        for j in range(i + 1, min(i + window, len(tokens))):
            other = tokens[j]
            if _is_word(other) and other.norm != tok.norm:
                graph.add_edge(tok.norm, other.norm)
    scores = pagerank(graph)
    n_keep = math.ceil(keep_ratio * len(graph))
    ranked = sorted(scores, key=lambda w: (-scores[w], first_seen[w], w))
    kept = set(ranked[:n_keep])

    # merge adjacent kept words into phrases
    rows: list[tuple[float, int, str, str]] = []
    seen_norms: set[str] = set()
    run: list[Token] = []

    def flush() -> None:
        if not run:
            return
        norm = " ".join(t.norm for t in run)
        if norm not in seen_norms:
            seen_norms.add(norm)
            score = sum(scores[t.norm] for t in run)
            surface = " ".join(t.surface for t in run)
            rows.append((score, run[0].tok_idx, norm, surface))
        run.clear()

    prev: Optional[Token] = None
    for tok in tokens:
        chains = (
            _is_word(tok)
            and tok.norm in kept
            and run
            and prev is not None
            and tok.tok_idx == prev.tok_idx + 1
            and tok.sent_idx == prev.sent_idx
        )
        if _is_word(tok) and tok.norm in kept:
            if not chains:
                flush()
            run.append(tok)
        else:
            flush()
        prev = tok
    flush()
    return rank_candidates(rows, better="higher", k=k)


def _jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def multipartite_rank(
    doc: Document,
    normalizer: Normalizer,
    k: int = 10,
    sim_threshold: float = 0.74,
    alpha: float = 1.1,
    pos_tags: Optional[Sequence[str]] = None,
) -> list[ScoredKeyword]:
    """Topic-partitioned candidate graph ranked with PageRank.

    Candidates are adjective/noun runs when per-token POS tags are given,
    otherwise stopword/punctuation-delimited chunks. Topics come from
    average-linkage clustering of candidate stem-set overlap, cut at
    sim_threshold; edges connect only candidates of different topics,
    weighted by summed inverse occurrence distance. The earliest candidate
    of each multi-candidate topic gets its incoming weights boosted by
    alpha * e^(1/p), p being its first token offset counted from one.
    """
    tokens = normalizer.tokenize(doc.text)
    if pos_tags is not None:
        candidates = _pos_runs(tokens, pos_tags)
    else:
        candidates = phrase_runs(tokens)
    if not candidates:
        return []
    topics = cluster_topics(candidates, sim_threshold)
    graph = build_topic_graph(candidates, topics, alpha)
    scores = pagerank(graph)
    rows = [(scores[c.norm], c.first_tok_idx, c.norm, c.surface)
            for c in candidates]
    return rank_candidates(rows, better="higher", k=k)


def cluster_topics(candidates, sim_threshold: float) -> list[tuple[int, ...]]:
    """Partition candidates into topics by stem-set overlap.

    Average-linkage agglomerative clustering over Jaccard distance of the
    candidates' normalized token sets, merged while similarity stays at or
    above sim_threshold.
    """
    stem_sets = [frozenset(c.norm.split(" ")) for c in candidates]
    n = len(candidates)
    dist = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = 1.0 - _jaccard(stem_sets[i], stem_sets[j])
            dist[i][j] = dist[j][i] = d
    _, topics = agglomerate(dist, linkage="average",
                            stop_distance=1.0 - sim_threshold)
    return topics


def build_topic_graph(candidates, topics, alpha: float) -> WordGraph:
    """Directed graph joining only candidates of different topics.

    Edge weight sums inverse distances between occurrence offsets; the
    earliest candidate of each multi-candidate topic has its incoming
    weights multiplied by alpha * e^(1/p), p its first offset from one.
    """
    topic_of = {}
    for topic_idx, members in enumerate(topics):
        for m in members:
            topic_of[m] = topic_idx
    n = len(candidates)
    graph = WordGraph(directed=True)
    for cand in candidates:
        graph.add_node(cand.norm)
    boost: dict[int, float] = {}
    for members in topics:
        if len(members) < 2:
            continue
        first = min(members, key=lambda m: candidates[m].first_tok_idx)
        p = candidates[first].first_tok_idx + 1
        boost[first] = alpha * math.exp(1.0 / p)
    for i in range(n):
        for j in range(n):
            if i == j or topic_of[i] == topic_of[j]:
                continue
            w = 0.0
            for _, pi in candidates[i].occurrences:
                for _, pj in candidates[j].occurrences:
                    gap = abs(pi - pj)
                    if gap:
                        w += 1.0 / gap
            if w > 0:
                factor = boost.get(j)
                graph.add_edge(candidates[i].norm, candidates[j].norm,
                               w * factor if factor else w)
    return graph


def _pos_runs(tokens: list[Token], pos_tags: Sequence[str]):
    """Longest adjective/noun runs according to a POS sidecar aligned to
    the token stream."""
    from .statistical import _Run

    if len(pos_tags) != len(tokens):
        from ..errors import EngineError

        raise EngineError(
            f"POS sidecar length {len(pos_tags)} does not match token count {len(tokens)}"
        )
    by_norm: dict[str, _Run] = {}
    order: list[str] = []
    current: list[Token] = []

    def flush() -> None:
        if not current:
            return
        norm = " ".join(t.norm for t in current)
        occurrence = (current[0].sent_idx, current[0].tok_idx)
        run = by_norm.get(norm)
        if run is None:
            by_norm[norm] = _Run(
                surface=" ".join(t.surface for t in current),
                norm=norm, n=len(current), occurrences=[occurrence],
            )
            order.append(norm)
        else:
            run.occurrences.append(occurrence)
        current.clear()

    for tok, tag in zip(tokens, pos_tags):
        keep = (tag in ADJ_NOUN_TAGS and tok.is_alphanumeric
                and not _is_numeric(tok))
        if keep and (not current or tok.sent_idx == current[-1].sent_idx):
            current.append(tok)
        else:
            flush()
            if keep:
                current.append(tok)
    flush()
    return [by_norm[key] for key in order]


@dataclass(frozen=True)
class RakunConfig:
    """Every reconstruction constant of the meta-vertex ranker in one place."""

    distance_threshold: int = 2     # max edit distance for merging tokens
    bigram_count_threshold: int = 2  # min adjacency count to emit a bigram
    merge_min_length: int = 5       # tokens shorter than this never merge
    node_pool: Optional[int] = None  # nodes eligible for emission; None -> k


def meta_vertex_groups(norms: Sequence[str], first_seen: dict[str, int],
                       config: RakunConfig) -> dict[str, str]:
    """Group near-duplicate tokens into meta-vertices.

    Two tokens merge when both reach merge_min_length and their edit
    distance is within the threshold; groups are the connected components
    of that relation. The earliest-occurring member represents its group.
    """
    parent = {w: w for w in norms}

    def find(w: str) -> str:
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    def union(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if first_seen[rb] < first_seen[ra]:
            ra, rb = rb, ra
        parent[rb] = ra

    mergeable = [w for w in norms if len(w) >= config.merge_min_length]
    for i in range(len(mergeable)):
        for j in range(i + 1, len(mergeable)):
            a, b = mergeable[i], mergeable[j]
            if abs(len(a) - len(b)) <= config.distance_threshold \
                    and levenshtein(a, b) <= config.distance_threshold:
                union(a, b)
    return {w: find(w) for w in norms}


def rakun(doc: Document, normalizer: Normalizer, k: int = 10,
          config: RakunConfig = RakunConfig()) -> list[ScoredKeyword]:
    """Load-centrality ranking over a token graph with meta-vertices.

    Near-duplicate tokens (edit distance within the threshold, both long
    enough) merge into one vertex that pools their adjacency edges. Top
    nodes become unigram keywords; bigrams of adjacent top nodes are kept
    when seen at least bigram_count_threshold times.
    """
    tokens = normalizer.tokenize(doc.text)
    stream = [t for t in tokens if _is_word(t)]
    if not stream:
        return []

    norms: list[str] = []
    first_seen: dict[str, int] = {}
    surfaces: dict[str, str] = {}
    for tok in stream:
        if tok.norm not in first_seen:
            first_seen[tok.norm] = tok.tok_idx
            surfaces[tok.norm] = tok.surface
            norms.append(tok.norm)
    rep = meta_vertex_groups(norms, first_seen, config)

    graph = WordGraph(directed=False)
    for w in norms:
        graph.add_node(rep[w])
    adjacency_counts: dict[tuple[str, str], int] = {}
    bigram_surface: dict[tuple[str, str], tuple[int, str]] = {}
    for a, b in zip(stream, stream[1:]):
        if a.sent_idx != b.sent_idx or b.tok_idx != a.tok_idx + 1:
            continue
        ra, rb = rep[a.norm], rep[b.norm]
        if ra == rb:
            continue
        graph.add_edge(ra, rb)
        key = (ra, rb)
        adjacency_counts[key] = adjacency_counts.get(key, 0) + 1
        if key not in bigram_surface:
            bigram_surface[key] = (a.tok_idx, f"{a.surface} {b.surface}")

    centrality = load_centrality(graph)
    rep_first = {r: first_seen[r] for r in set(rep.values())}
    ranked_nodes = sorted(centrality,
                          key=lambda w: (-centrality[w], rep_first[w], w))
    top_nodes = ranked_nodes[: config.node_pool or k]
    pool = set(top_nodes)

    rows: list[tuple[float, int, str, str]] = []
    for node in top_nodes:
        rows.append((centrality[node], rep_first[node], node, surfaces[node]))
    for (ra, rb), count in adjacency_counts.items():
        if count < config.bigram_count_threshold:
            continue
        if ra not in pool or rb not in pool:
            continue
        score = (centrality[ra] + centrality[rb]) / 2.0
        tok_idx, surface = bigram_surface[(ra, rb)]
        rows.append((score, tok_idx, f"{ra} {rb}", surface))
    return rank_candidates(rows, better="higher", k=k)
