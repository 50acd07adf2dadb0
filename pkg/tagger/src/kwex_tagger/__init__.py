"""Supervised keyword tagger: fine-tuned token classification over kwex manifests."""

from .labeling import TaggedSequence, decode_phrases, label_document
from .predict import predict
from .train import TrainResult, train

__version__ = "0.1.0"

__all__ = [
    "TaggedSequence",
    "TrainResult",
    "decode_phrases",
    "label_document",
    "predict",
    "train",
]
