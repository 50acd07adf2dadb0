import json
import random
from pathlib import Path

import pytest

from kwex.xling import LanguageSet, build_manifest

WORDS = (
    "market budget council election policy harbor window signal trade "
    "union energy climate summit border railway airport doctor school "
    "hospital minister report protest storm forest river bridge tunnel"
).split()

LANGS = LanguageSet(("en", "sl"))


def make_doc(doc_id, rng):
    words = [rng.choice(WORDS) for _ in range(rng.randint(12, 30))]
    text = " ".join(words)
    keywords = []
    for _ in range(rng.randint(1, 3)):
        start = rng.randrange(len(words))
        length = rng.randint(1, 2)
        keywords.append(" ".join(words[start: start + length]))
    return {"id": doc_id, "text": text, "keywords": keywords}


def write_split(path: Path, n_docs: int, seed: int):
    rng = random.Random(seed)
    with path.open("w", encoding="utf-8") as fh:
        for i in range(n_docs):
            fh.write(json.dumps(make_doc(f"{path.stem}-{i:03d}", rng)) + "\n")
    return path


@pytest.fixture(scope="session")
def data_root(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    seed = 100
    for lang in LANGS:
        for split, n in (("train", 20), ("valid", 6), ("test", 8)):
            write_split(root / f"{lang}.{split}.jsonl", n, seed)
            seed += 1
    return root


@pytest.fixture(scope="session")
def mon_manifest(data_root):
    return build_manifest("MON", LANGS, "en", data_root)


@pytest.fixture(scope="session")
def loo_manifest(data_root):
    return build_manifest("LOO", LANGS, "en", data_root)


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    """A tiny randomly initialized encoder + WordPiece tokenizer, built
    offline from the synthetic vocabulary."""
    from transformers import BertConfig, BertForTokenClassification, BertTokenizerFast

    model_dir = tmp_path_factory.mktemp("tiny-model")
    vocab = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"] + sorted(set(WORDS))
    vocab_file = model_dir / "vocab.txt"
    vocab_file.write_text("\n".join(vocab) + "\n", encoding="utf-8")
    tokenizer = BertTokenizerFast(vocab_file=str(vocab_file), do_lower_case=True)
    config = BertConfig(
        vocab_size=len(vocab),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=64,
        num_labels=2,
    )
    import torch

    torch.manual_seed(7)
    model = BertForTokenClassification(config)
    model.save_pretrained(model_dir)
    tokenizer.save_pretrained(model_dir)
    return str(model_dir)
