"""Command-line interface: kwex-tagger train | predict."""

from __future__ import annotations

import argparse
import sys

from kwex.errors import EngineError
from kwex.xling import ExperimentManifest

from .predict import predict
from .train import DEFAULT_MODEL, train


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kwex-tagger",
        description="Supervised keyword tagger over kwex experiment manifests",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="fine-tune on a manifest's train split")
    p.add_argument("--manifest", required=True)
    p.add_argument("--model", default=DEFAULT_MODEL,
                   help="pretrained model name or local path")
    p.add_argument("--out", required=True, help="checkpoint directory")
    p.add_argument("--lr", type=float, default=3e-5)
    p.add_argument("--batch-size", type=int, default=8)
    p.add_argument("--max-epochs", type=int, default=10)
    p.add_argument("--patience", type=int, default=2)
    p.add_argument("--seed", type=int, default=13)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="emit predictions JSONL for a corpus")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--lang", required=True)
    p.add_argument("--split", default="test", choices=("train", "valid", "test"))
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--lemmas")
    p.set_defaults(func=cmd_predict)
    return parser


def cmd_train(args) -> int:
    manifest = ExperimentManifest.load(args.manifest)
    result = train(
        manifest,
        out_dir=args.out,
        model_name_or_path=args.model,
        lr=args.lr,
        batch_size=args.batch_size,
        max_epochs=args.max_epochs,
        patience=args.patience,
        seed=args.seed,
    )
    last = result.epoch_log[-1] if result.epoch_log else {}
    print(f"trained {result.epochs_run} epoch(s); "
          f"final train loss {last.get('train_loss', float('nan')):.4f}; "
          f"checkpoint at {result.checkpoint_dir}")
    return 0


def cmd_predict(args) -> int:
    out = predict(args.checkpoint, args.infile, args.lang, args.out,
                  k=args.k, split=args.split, lemmas_path=args.lemmas)
    print(f"predictions written to {out}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EngineError, OSError) as exc:
        print(f"kwex-tagger: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
