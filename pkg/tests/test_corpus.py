import json
import random

import pytest

from kwex.corpus import Document, compute_stats, load_jsonl, save_jsonl
from kwex.errors import CorpusError

from conftest import make_corpus, write_corpus_jsonl


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class TestLoadJsonl:
    def test_two_valid_lines_in_order(self, tmp_path):
        path = write_lines(tmp_path / "c.jsonl", [
            json.dumps({"id": "a", "text": "first", "keywords": ["x"]}),
            json.dumps({"id": "b", "text": "second", "keywords": []}),
        ])
        docs = load_jsonl(path, "en", "test")
        assert [d.id for d in docs] == ["a", "b"]
        assert docs[0].lang == "en"
        assert docs[0].split == "test"
        assert docs[1].keywords == ()

    def test_missing_text_field(self, tmp_path):
        path = write_lines(tmp_path / "c.jsonl", [
            json.dumps({"id": "ok", "text": "fine", "keywords": []}),
            json.dumps({"id": "a"}),
        ])
        with pytest.raises(CorpusError, match=r"missing field 'text' at line 2"):
            load_jsonl(path, "en")

    def test_duplicate_id(self, tmp_path):
        path = write_lines(tmp_path / "c.jsonl", [
            json.dumps({"id": "x", "text": "one", "keywords": []}),
            json.dumps({"id": "x", "text": "two", "keywords": []}),
        ])
        with pytest.raises(CorpusError, match="'x'"):
            load_jsonl(path, "en")

    def test_malformed_json_names_line(self, tmp_path):
        path = write_lines(tmp_path / "c.jsonl", ['{"id": "a", "text":'])
        with pytest.raises(CorpusError, match="line 1"):
            load_jsonl(path, "en")

    def test_title_prepended_with_newline(self, tmp_path):
        path = write_lines(tmp_path / "c.jsonl", [
            json.dumps({"id": "a", "title": "Big News", "text": "Body.", "keywords": []}),
        ])
        docs = load_jsonl(path, "en")
        assert docs[0].text == "Big News\nBody."

    def test_bad_split_rejected(self, tmp_path):
        path = write_lines(tmp_path / "c.jsonl", [])
        with pytest.raises(CorpusError):
            load_jsonl(path, "en", "dev")

    def test_round_trip(self, tmp_path):
        docs = make_corpus(20, seed=7)
        src = write_corpus_jsonl(docs, tmp_path / "src.jsonl")
        loaded = load_jsonl(src, "en", "test")
        save_jsonl(loaded, tmp_path / "again.jsonl")
        reloaded = load_jsonl(tmp_path / "again.jsonl", "en", "test")
        assert reloaded == loaded


class TestComputeStats:
    def test_hand_traced_fixture(self, en_normalizer):
        doc = Document(id="d", lang="en", text="red cars drive",
                       keywords=("red car", "bus"))
        stats = compute_stats([doc], en_normalizer)
        assert stats.size == 1
        assert stats.kw_per_doc == 2.0
        assert stats.kw_present == 0.5

    def test_zero_keyword_document(self, plain_normalizer):
        doc = Document(id="d", lang="xx", text="whatever")
        stats = compute_stats([doc], plain_normalizer)
        assert stats.kw_per_doc == 0.0
        assert stats.kw_present == 0.0

    def test_empty_list_rejected(self, plain_normalizer):
        with pytest.raises(CorpusError):
            compute_stats([], plain_normalizer)

    def test_permutation_invariant(self, en_normalizer):
        docs = make_corpus(15, seed=3)
        shuffled = docs[:]
        random.Random(0).shuffle(shuffled)
        assert compute_stats(docs, en_normalizer) == compute_stats(shuffled, en_normalizer)

    def test_identity_normalizer_equals_lowercase_token_match(self, plain_normalizer):
        docs = make_corpus(15, seed=5)
        stats = compute_stats(docs, plain_normalizer)
        total = 0
        present = 0
        for doc in docs:
            doc_tokens = [t.lower() for t in doc.text.replace(".", " ").split()]
            joined = " ".join(doc_tokens)
            for kw in doc.keywords:
                total += 1
                kw_tokens = kw.lower().split()
                if kw_tokens and f" {' '.join(kw_tokens)} " in f" {joined} ":
                    present += 1
        assert stats.kw_present == pytest.approx(present / total)

    def test_present_requires_contiguity(self, plain_normalizer):
        doc = Document(id="d", lang="xx", text="moon landing near base",
                       keywords=("moon base",))
        stats = compute_stats([doc], plain_normalizer)
        assert stats.kw_present == 0.0
