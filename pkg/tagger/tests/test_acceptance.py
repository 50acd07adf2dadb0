"""Tagger acceptance suite (run with `pytest tests/test_acceptance.py -v -s`).

Three criteria: the label-decode property needs no model; the smoke train
and the LOO isolation audit run a tiny encoder on CPU in seconds.
"""

import builtins
import itertools
import random
from pathlib import Path

from kwex.evaluate import evaluate_run
from kwex.corpus import load_jsonl
from kwex.normalize import Normalizer

from kwex_tagger.labeling import decode_phrases
from kwex_tagger.predict import predict
from kwex_tagger.train import train


def ok(name: str) -> None:
    print(f"\nACCEPTANCE {name}: PASS")


def test_decode_property():
    rng = random.Random(1234)
    for _ in range(1000):
        n = rng.randint(0, 40)
        tokens = [f"w{i}" for i in range(n)]
        labels = [rng.randint(0, 1) for _ in range(n)]
        probs = [rng.random() for _ in range(n)]
        got = [(p, i) for p, _, i in decode_phrases(tokens, labels, probs)]
        want = []
        idx = 0
        for key, group in itertools.groupby(labels):
            size = len(list(group))
            if key == 1:
                want.append((" ".join(tokens[idx: idx + size]), idx))
            idx += size
        assert got == want
    ok("decode-property")


def test_smoke_train_and_score(mon_manifest, tiny_model_dir, tmp_path, data_root):
    checkpoint = tmp_path / "ck"
    result = train(mon_manifest, checkpoint, model_name_or_path=tiny_model_dir,
                   lr=5e-4, batch_size=2, max_epochs=1, seed=11)
    assert result.epochs_run == 1
    assert (checkpoint / "training_log.json").exists()
    assert result.step_losses[-1] < result.step_losses[0], "loss did not decrease"
    preds = tmp_path / "preds.jsonl"
    predict(checkpoint, data_root / "en.test.jsonl", "en", preds, k=10)
    corpus = load_jsonl(data_root / "en.test.jsonl", "en", "test")
    report = evaluate_run(preds, corpus, Normalizer.for_language("en"), k=10)
    assert 0.0 <= report.f1 <= 1.0
    ok("smoke-train")


def test_loo_isolation(loo_manifest, tiny_model_dir, tmp_path, monkeypatch, data_root):
    opened = []
    real_open = builtins.open

    def auditing_open(file, *args, **kwargs):
        opened.append(str(file))
        return real_open(file, *args, **kwargs)

    import kwex_tagger.dataset as dataset_module

    real_load = dataset_module.load_jsonl

    def auditing_load(path, *args, **kwargs):
        opened.append(str(path))
        return real_load(path, *args, **kwargs)

    monkeypatch.setattr(builtins, "open", auditing_open)
    monkeypatch.setattr(dataset_module, "load_jsonl", auditing_load)
    train(loo_manifest, tmp_path / "ck", model_name_or_path=tiny_model_dir,
          lr=5e-4, batch_size=4, max_epochs=1)
    corpus_reads = [p for p in opened if str(data_root) in p]
    assert corpus_reads
    assert [p for p in corpus_reads if Path(p).name.startswith("en.")] == []
    ok("loo-isolation")
