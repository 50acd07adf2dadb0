import json
import random
from pathlib import Path

import pytest

from kwex.corpus import Document
from kwex.normalize import Normalizer

DATA_DIR = Path(__file__).parent / "data"

# vocabulary for synthetic corpora: concrete English-ish nouns so porter
# stemming is well-behaved and candidates are nontrivial
VOCAB = (
    "market budget council election policy harbor window signal trade "
    "union energy climate summit border railway airport doctor school "
    "hospital minister report protest storm forest river bridge tunnel "
    "factory worker strike contract currency inflation parliament senate "
    "museum theatre festival artist painting novel author journal editor "
    "camera satellite rocket engine battery reactor turbine pipeline"
).split()


def make_document(doc_id: str, rng: random.Random, lang: str = "en") -> Document:
    n_sentences = rng.randint(3, 8)
    sentences = []
    for _ in range(n_sentences):
        words = [rng.choice(VOCAB) for _ in range(rng.randint(4, 12))]
        sentences.append(" ".join(words) + ".")
    text = " ".join(sentences)
    # gold keywords: some present phrases, some absent
    tokens = text.replace(".", "").split()
    keywords = []
    for _ in range(rng.randint(1, 4)):
        start = rng.randrange(len(tokens))
        length = rng.randint(1, 2)
        keywords.append(" ".join(tokens[start: start + length]))
    if rng.random() < 0.5:
        keywords.append("completely absent phrase")
    return Document(id=doc_id, lang=lang, text=text, keywords=tuple(keywords))


def make_corpus(n_docs: int, seed: int, lang: str = "en") -> list[Document]:
    rng = random.Random(seed)
    return [make_document(f"doc-{i:03d}", rng, lang) for i in range(n_docs)]


def write_corpus_jsonl(docs, path: Path) -> Path:
    with path.open("w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps(
                {"id": doc.id, "text": doc.text, "keywords": list(doc.keywords)},
                ensure_ascii=False,
            ))
            fh.write("\n")
    return path


@pytest.fixture(scope="session")
def en_normalizer() -> Normalizer:
    return Normalizer.for_language("en")


@pytest.fixture()
def plain_normalizer() -> Normalizer:
    """Identity normalization, no stopwords: matching is plain lowercase."""
    return Normalizer("xx", "identity")


@pytest.fixture()
def stop_normalizer() -> Normalizer:
    return Normalizer("xx", "identity", stopwords=frozenset({"the", "a", "of"}))
