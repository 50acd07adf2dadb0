"""Small graph kernels: weighted PageRank, load centrality, edit distance.

Everything here is exact and deterministic; graphs at document scale are
tiny, so no sampling or sparse tricks are needed.
"""

from __future__ import annotations

from collections import deque

from .errors import EngineError


class WordGraph:
    """Adjacency-map graph over string-labelled nodes.

    Undirected graphs store each edge in both directions. Edge weights
    accumulate on repeated add_edge calls; self-loops are ignored.
    """

    def __init__(self, directed: bool = False):
        self.directed = directed
        self.nodes: list[str] = []
        self._index: dict[str, int] = {}
        self.adj: list[dict[int, float]] = []

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def add_node(self, label: str) -> int:
        idx = self._index.get(label)
        if idx is None:
            idx = len(self.nodes)
            self._index[label] = idx
            self.nodes.append(label)
            self.adj.append({})
        return idx

    def add_edge(self, a: str, b: str, weight: float = 1.0) -> None:
        if weight < 0:
            raise EngineError("edge weights must be nonnegative")
        if a == b:
            return
        ia, ib = self.add_node(a), self.add_node(b)
        self.adj[ia][ib] = self.adj[ia].get(ib, 0.0) + weight
        if not self.directed:
            self.adj[ib][ia] = self.adj[ib].get(ia, 0.0) + weight

    def index(self, label: str) -> int:
        return self._index[label]


def pagerank(graph: WordGraph, damping: float = 0.85, tol: float = 1e-6,
             max_iter: int = 200) -> dict[str, float]:
    """Weighted PageRank with uniform teleport.

    Dangling mass is redistributed uniformly, so the scores always sum
    to one. Iteration stops when the L1 change drops below tol.
    """
    n = len(graph)
    if n == 0:
        raise EngineError("pagerank needs a nonempty graph")
    out_weight = [sum(nbrs.values()) for nbrs in graph.adj]
    incoming: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for u in range(n):
        for v, w in graph.adj[u].items():
            if w > 0:
                incoming[v].append((u, w))
    scores = [1.0 / n] * n
    teleport = (1.0 - damping) / n
    for _ in range(max_iter):
        dangling = sum(scores[u] for u in range(n) if out_weight[u] == 0)
        nxt = [0.0] * n
        for v in range(n):
            rank = 0.0
            for u, w in incoming[v]:
                rank += scores[u] * w / out_weight[u]
            nxt[v] = teleport + damping * (rank + dangling / n)
        delta = sum(abs(nxt[i] - scores[i]) for i in range(n))
        scores = nxt
        if delta < tol:
            break
    return {graph.nodes[i]: scores[i] for i in range(n)}


def load_centrality(graph: WordGraph) -> dict[str, float]:
    """Fraction of all-pairs shortest paths passing through each node.

    Brandes' accumulation over unweighted shortest paths; for every
    endpoint pair the per-pair fraction sigma_st(v)/sigma_st is summed and
    the total is normalized by the number of pairs excluding v, so values
    lie in [0, 1]. Graphs with fewer than three nodes score all zeros.
    """
    n = len(graph)
    centrality = [0.0] * n
    for s in range(n):
        # single-source shortest paths with path counting
        sigma = [0] * n
        dist = [-1] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        stack = []
        while queue:
            u = queue.popleft()
            stack.append(u)
            for v in graph.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
                if dist[v] == dist[u] + 1:
                    sigma[v] += sigma[u]
                    preds[v].append(u)
        # dependency accumulation
        delta = [0.0] * n
        while stack:
            v = stack.pop()
            for u in preds[v]:
                delta[u] += sigma[u] / sigma[v] * (1.0 + delta[v])
            if v != s:
                centrality[v] += delta[v]
        # delta[v] counts ordered (s, t) pairs; undirected graphs see each
        # unordered pair twice, so halve at the end
    result = {}
    for i in range(n):
        value = centrality[i]
        if not graph.directed:
            value /= 2.0
            denom = (n - 1) * (n - 2) / 2.0
        else:
            denom = float((n - 1) * (n - 2))
        result[graph.nodes[i]] = value / denom if denom > 0 else 0.0
    return result


def levenshtein(a: str, b: str) -> int:
    """Unit-cost insert/delete/substitute edit distance."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        curr = [i]
        for j, cb in enumerate(b, 1):
            cost = 0 if ca == cb else 1
            curr.append(min(prev[j] + 1, curr[j - 1] + 1, prev[j - 1] + cost))
        prev = curr
    return prev[-1]


def levenshtein_similarity(a: str, b: str) -> float:
    """1 - dist/max(len); 1.0 for two empty strings."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest
