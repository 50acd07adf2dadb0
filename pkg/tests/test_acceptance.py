"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with `pytest tests/test_acceptance.py -v -s`).

Each check pins its tolerance inline; the oracles here are deliberately
independent re-implementations (dense power iteration, explicit
shortest-path enumeration, from-scratch cluster-distance recomputation,
set-intersection scoring) of the production kernels they exercise.
"""

import itertools
import json
import os
import random
from pathlib import Path

import pytest

from kwex import porter
from kwex.cli import main
from kwex.cluster import agglomerate
from kwex.corpus import Document, compute_stats, load_jsonl
from kwex.evaluate import score_at_k
from kwex.extract.graphrank import build_topic_graph, cluster_topics
from kwex.extract.statistical import kpminer, phrase_runs
from kwex.graphkit import WordGraph, load_centrality, pagerank
from kwex.normalize import Normalizer, find_subsequence_spans
from kwex.xling import LanguageSet, build_manifest, enumerate_tuples

from conftest import VOCAB, make_corpus, write_corpus_jsonl
from test_cluster import brute_agglomerate, random_distance_matrix
from test_graphkit import brute_load_centrality, dense_pagerank_oracle

PLAIN = Normalizer("xx", "identity")
STOPS = Normalizer("xx", "identity",
                   stopwords=frozenset({"the", "of", "and", "a", "in"}))


def ok(name: str) -> None:
    print(f"\nACCEPTANCE {name}: PASS")


def random_word_doc(rng, n_words=None, vocab=VOCAB):
    words = []
    n_words = n_words or rng.randint(20, 120)
    for _ in range(n_words):
        if rng.random() < 0.25:
            words.append(rng.choice(["the", "of", "and", "a", "in"]))
        else:
            words.append(rng.choice(vocab))
        if rng.random() < 0.1:
            words[-1] += "."
    return Document(id="r", lang="xx", text=" ".join(words))


def test_combinatorics():
    langs = LanguageSet()
    counts = [len(enumerate_tuples(langs, k)) for k in range(1, 7)]
    assert counts == [6, 15, 20, 15, 6, 1]
    assert sum(counts) == 63
    import tempfile

    with tempfile.TemporaryDirectory() as root:
        for lang in langs:
            for split in ("train", "valid", "test"):
                (Path(root) / f"{lang}.{split}.jsonl").write_text("")
        for test_lang in langs:
            manifest = build_manifest("LOO", langs, test_lang, root)
            assert test_lang not in manifest.train_langs
            assert set(manifest.train_langs) == set(langs.langs) - {test_lang}
    ok("combinatorics")


def test_metric_oracle():
    rng = random.Random(20240601)
    universe = [f"w{i}" for i in range(40)]
    for _ in range(10_000):
        gold = set(rng.sample(universe, rng.randint(1, 20)))
        predicted = rng.sample(universe, rng.randint(0, 20))
        k = rng.randint(1, 15)
        p, r, f1 = score_at_k(predicted, gold, PLAIN, k=k)
        considered = list(dict.fromkeys(predicted[:k]))
        matches = len(set(considered) & gold)
        exp_p = matches / len(considered) if considered else 0.0
        exp_r = matches / len(gold) if considered else 0.0
        exp_f1 = 0.0 if exp_p + exp_r == 0 else 2 * exp_p * exp_r / (exp_p + exp_r)
        assert p == exp_p and r == exp_r and f1 == exp_f1
        recalls = [score_at_k(predicted, gold, PLAIN, k=kk)[1] for kk in (1, 5, 10, 20)]
        assert recalls == sorted(recalls)
    ok("metric-oracle")


def test_worked_metric_fixture():
    gold = {"a", "b", "c"}
    predicted = ["a", "b", "x", "y", "z", "u", "v", "w", "q", "r"]
    p, r, f1 = score_at_k(predicted, gold, PLAIN, k=10)
    assert p == pytest.approx(0.2000, abs=1e-4)
    assert r == pytest.approx(0.6667, abs=1e-4)
    assert f1 == pytest.approx(0.3077, abs=1e-4)
    ok("worked-metric-fixture")


def _random_graph(rng, max_nodes, directed=False, edge_prob=0.3):
    n = rng.randint(1, max_nodes)
    g = WordGraph(directed=directed)
    for i in range(n):
        g.add_node(f"n{i}")
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < edge_prob:
                g.add_edge(f"n{i}", f"n{j}", rng.choice([0.5, 1.0, 2.0, 3.0]))
    return g


def test_pagerank_invariants_and_oracle():
    rng = random.Random(11)
    for _ in range(1000):
        g = _random_graph(rng, max_nodes=50, directed=rng.random() < 0.5)
        scores = pagerank(g)
        assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)
        assert all(v >= 0 for v in scores.values())
    # vertex-transitive graphs are uniform
    for n in (3, 5, 8):
        cycle = WordGraph(directed=True)
        complete = WordGraph()
        for i in range(n):
            cycle.add_edge(f"c{i}", f"c{(i + 1) % n}")
            for j in range(n):
                if i < j:
                    complete.add_edge(f"k{i}", f"k{j}")
        for g in (cycle, complete):
            for v in pagerank(g, tol=1e-13).values():
                assert v == pytest.approx(1.0 / n, abs=1e-9)
    # dense oracle agreement on small graphs
    for _ in range(150):
        g = _random_graph(rng, max_nodes=10, directed=rng.random() < 0.5)
        scores = pagerank(g, tol=1e-14)
        oracle = dense_pagerank_oracle(g)
        for i, label in enumerate(g.nodes):
            assert scores[label] == pytest.approx(oracle[i], abs=1e-8)
    ok("pagerank")


def _connected(g: WordGraph) -> bool:
    if len(g) == 0:
        return False
    seen = {0}
    frontier = [0]
    while frontier:
        u = frontier.pop()
        for v in g.adj[u]:
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return len(seen) == len(g)


def test_load_centrality_oracle():
    # exhaustive sweep over all undirected graphs on up to 5 nodes
    checked = 0
    for n in range(2, 6):
        edges = list(itertools.combinations(range(n), 2))
        for mask in range(2 ** len(edges)):
            g = WordGraph()
            for i in range(n):
                g.add_node(f"n{i}")
            for bit, (i, j) in enumerate(edges):
                if mask >> bit & 1:
                    g.add_edge(f"n{i}", f"n{j}")
            if not _connected(g):
                continue
            fast = load_centrality(g)
            slow = brute_load_centrality(g)
            for label in g.nodes:
                assert fast[label] == pytest.approx(slow[label], abs=1e-12)
            checked += 1
    assert checked > 700
    # plus random graphs at 6-7 nodes
    rng = random.Random(13)
    done = 0
    while done < 500:
        g = _random_graph(rng, max_nodes=7, edge_prob=0.4)
        if len(g) < 3 or not _connected(g):
            continue
        fast = load_centrality(g)
        slow = brute_load_centrality(g)
        for label in g.nodes:
            assert fast[label] == pytest.approx(slow[label], abs=1e-12)
        done += 1
    ok("load-centrality")


def test_multipartite_structural_invariant():
    rng = random.Random(77)
    for _ in range(200):
        doc = random_word_doc(rng)
        candidates = phrase_runs(STOPS.tokenize(doc.text))
        if not candidates:
            continue
        topics = cluster_topics(candidates, 0.74)
        graph = build_topic_graph(candidates, topics, alpha=1.1)
        topic_of = {}
        for t_idx, members in enumerate(topics):
            for m in members:
                topic_of[candidates[m].norm] = t_idx
        for u in range(len(graph)):
            for v in graph.adj[u]:
                assert topic_of[graph.nodes[u]] != topic_of[graph.nodes[v]], \
                    "edge joins two candidates of the same topic"
    ok("multipartite-invariant")


def test_kpminer_filters():
    rng = random.Random(99)
    lasf, cutoff = 3, 400
    returned = 0
    for _ in range(150):
        doc = random_word_doc(rng, n_words=rng.randint(50, 700))
        tokens = STOPS.tokenize(doc.text)
        norm_stream = [t.norm for t in tokens]
        for kw in kpminer(doc, STOPS, k=10, lasf=lasf, cutoff=cutoff):
            phrase_tokens = STOPS.norm_tokens(kw.phrase)
            spans = find_subsequence_spans(norm_stream, phrase_tokens)
            assert len(spans) >= lasf, kw.phrase
            assert spans[0][0] < cutoff, kw.phrase
            returned += 1
    assert returned > 100
    ok("kpminer-filters")


def test_porter_reference_vocabulary():
    pairs_file = Path(__file__).parent / "data" / "porter_pairs.tsv"
    lines = pairs_file.read_text(encoding="utf-8").splitlines()
    assert len(lines) > 20_000
    mismatches = []
    for line in lines:
        word, expected = line.split("\t")
        if porter.stem(word) != expected:
            mismatches.append(word)
    rate = 1.0 - len(mismatches) / len(lines)
    assert rate >= 0.999, f"agreement {rate:.5f}, mismatches: {mismatches[:10]}"
    ok(f"porter-vocabulary (agreement {rate:.4%}, {len(mismatches)} mismatches)")


def test_agglomerative_oracle():
    rng = random.Random(2468)
    for _ in range(200):
        n = rng.randint(4, 6)
        dist = random_distance_matrix(rng, n)
        for linkage in ("average", "single", "complete"):
            merges, _ = agglomerate(dist, linkage=linkage)
            oracle = brute_agglomerate(dist, linkage)
            assert len(merges) == len(oracle) == n - 1
            for got, (left, right, height) in zip(merges, oracle):
                assert got.left == left and got.right == right
                assert got.height == pytest.approx(height, abs=1e-12)
            if linkage in ("average", "complete"):
                heights = [m.height for m in merges]
                assert heights == sorted(heights)
    ok("agglomerative-oracle")


def test_end_to_end_determinism(tmp_path):
    docs = make_corpus(50, seed=50_2024)
    corpus_path = write_corpus_jsonl(docs, tmp_path / "en.test.jsonl")
    outputs = []
    for run, jobs in (("a", 1), ("b", 1), ("c", 4)):
        pred = tmp_path / f"pred-{run}.jsonl"
        report = tmp_path / f"report-{run}.json"
        assert main(["extract", "--method", "yake", "--lang", "en",
                     "--in", str(corpus_path), "--out", str(pred),
                     "--k", "10", "--jobs", str(jobs)]) == 0
        assert main(["eval", "--pred", str(pred), "--corpus", str(corpus_path),
                     "--lang", "en", "--out", str(report)]) == 0
        outputs.append((pred.read_bytes(), report.read_bytes()))
    assert outputs[0] == outputs[1] == outputs[2]
    ok("end-to-end-determinism")


def test_corpus_stats_contract(tmp_path):
    en = Normalizer.for_language("en")
    rows = [
        {"id": "s1", "text": "red cars drive fast", "keywords": ["red car", "bus"]},
        {"id": "s2", "text": "markets rallied today", "keywords": ["market"]},
        {"id": "s3", "text": "no keywords here", "keywords": []},
        {"id": "s4", "text": "solar panels shine", "keywords": ["solar panel", "wind", "sun"]},
    ]
    path = tmp_path / "synthetic.jsonl"
    with path.open("w") as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")
    docs = load_jsonl(path, "en", "test")
    stats = compute_stats(docs, en)
    # by hand: 6 keyword instances, present = {red car, market, solar panel}
    assert stats.size == 4
    assert stats.kw_per_doc == 6 / 4
    assert stats.kw_present == 3 / 6
    ok("corpus-stats-contract")


@pytest.mark.skipif(
    "KWEX_LV_TRAIN_JSONL" not in os.environ,
    reason="original Latvian corpus not available (set KWEX_LV_TRAIN_JSONL)",
)
def test_corpus_stats_latvian_reference():
    # external-data check against the published split statistics
    lv = Normalizer.for_language("lv")
    docs = load_jsonl(os.environ["KWEX_LV_TRAIN_JSONL"], "lv", "train")
    stats = compute_stats(docs, lv)
    assert stats.size == 10506
    assert stats.kw_per_doc == pytest.approx(3.2204, abs=0.005)
    assert stats.kw_present == pytest.approx(0.8691, abs=0.005)
    ok("corpus-stats-latvian-reference")
