"""Fine-tuning loop: pretrained encoder plus a linear token-classification head.

Trains on the concatenated train splits named by an experiment manifest,
early-stops on validation loss, and saves the best checkpoint with its
tokenizer and a JSON training log.
"""

from __future__ import annotations

import copy
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from kwex.errors import EngineError
from kwex.xling import ExperimentManifest

from .dataset import encode_batch, examples_from_manifest, iter_batches

DEFAULT_MODEL = "bert-base-multilingual-uncased"
MAX_WINDOW_WORDS = 350


@dataclass
class TrainResult:
    checkpoint_dir: str
    epochs_run: int
    step_losses: list[float] = field(default_factory=list)
    epoch_log: list[dict] = field(default_factory=list)


def _load_model_and_tokenizer(model_name_or_path: str):
    from transformers import AutoModelForTokenClassification, AutoTokenizer

    tokenizer = AutoTokenizer.from_pretrained(model_name_or_path)
    model = AutoModelForTokenClassification.from_pretrained(
        model_name_or_path, num_labels=2)
    return model, tokenizer


def window_size_for(model) -> int:
    max_positions = getattr(model.config, "max_position_embeddings", 512)
    return min(max_positions - 2, MAX_WINDOW_WORDS)


def train(
    manifest: ExperimentManifest,
    out_dir: str | Path,
    model_name_or_path: str = DEFAULT_MODEL,
    lr: float = 3e-5,
    batch_size: int = 8,
    max_epochs: int = 10,
    patience: int = 2,
    seed: int = 13,
) -> TrainResult:
    """Fine-tune and checkpoint; returns the loss trail for inspection.

    Raises EngineError when max_epochs is not positive or the manifest's
    train files yield no labeled examples.
    """
    import torch

    if max_epochs < 1:
        raise EngineError("no training performed: max_epochs must be >= 1")
    torch.manual_seed(seed)
    model, tokenizer = _load_model_and_tokenizer(model_name_or_path)
    max_words = window_size_for(model)
    max_length = model.config.max_position_embeddings

    train_examples = examples_from_manifest(manifest, "train", max_words)
    if not train_examples:
        raise EngineError(f"manifest {manifest.name} yields an empty train set")
    valid_examples = examples_from_manifest(manifest, "valid", max_words)

    optimizer = torch.optim.AdamW(model.parameters(), lr=lr)
    rng = random.Random(seed)
    result = TrainResult(checkpoint_dir=str(out_dir), epochs_run=0)
    best_val = float("inf")
    best_state = None
    bad_epochs = 0

    for epoch in range(max_epochs):
        model.train()
        order = list(train_examples)
        rng.shuffle(order)
        epoch_losses = []
        for batch in iter_batches(order, batch_size):
            encoding = encode_batch(tokenizer, batch, max_length)
            optimizer.zero_grad()
            output = model(**encoding)
            output.loss.backward()
            optimizer.step()
            loss_value = float(output.loss.detach())
            epoch_losses.append(loss_value)
            result.step_losses.append(loss_value)
        val_loss = _validation_loss(model, tokenizer, valid_examples,
                                    batch_size, max_length)
        result.epochs_run = epoch + 1
        result.epoch_log.append({
            "epoch": epoch + 1,
            "train_loss": sum(epoch_losses) / len(epoch_losses),
            "valid_loss": val_loss,
        })
        if val_loss is None:
            continue
        if val_loss < best_val:
            best_val = val_loss
            best_state = copy.deepcopy(model.state_dict())
            bad_epochs = 0
        else:
            bad_epochs += 1
            if bad_epochs >= patience:
                break

    if best_state is not None:
        model.load_state_dict(best_state)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    (out_dir / "training_log.json").write_text(
        json.dumps({
            "manifest": manifest.to_dict(),
            "lr": lr,
            "batch_size": batch_size,
            "max_epochs": max_epochs,
            "patience": patience,
            "epochs_run": result.epochs_run,
            "epochs": result.epoch_log,
        }, indent=2) + "\n",
        encoding="utf-8",
    )
    return result


def _validation_loss(model, tokenizer, examples, batch_size, max_length):
    import torch

    if not examples:
        return None
    model.eval()
    total = 0.0
    batches = 0
    with torch.no_grad():
        for batch in iter_batches(examples, batch_size):
            encoding = encode_batch(tokenizer, batch, max_length)
            output = model(**encoding)
            total += float(output.loss)
            batches += 1
    return total / batches
