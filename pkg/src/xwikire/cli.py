"""Command-line entry point: ``xwikire <subcommand> [--config C] [--seed N] [--langs L] [--out DIR]``.

Exit codes: 0 success, 1 usage error, 2 input or validation error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import pipeline
from .baselines import PREDICTORS
from .config import ConfigError, PipelineConfig
from .evalscore import GROUP_KEYS, UnknownExampleError
from .jsonl import write_json, write_jsonl

EXIT_OK, EXIT_USAGE, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("xwikire")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _common(default=None) -> argparse.ArgumentParser:
    # subcommands get SUPPRESS defaults so they do not erase flags given before the subcommand
    p = argparse.ArgumentParser(add_help=False, argument_default=default)
    p.add_argument("--config", type=Path, help="flat key = value configuration file")
    p.add_argument("--seed", type=int, help="random seed (overrides the config)")
    p.add_argument("--langs", help="comma-separated languages, e.g. en,de,es,fr,it")
    p.add_argument("--out", type=Path, help="output directory")
    p.add_argument("-v", "--verbose", action="store_true", default=default if default else False)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xwikire", description=__doc__.splitlines()[0], parents=[_common()])
    common = _common(argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", metavar="subcommand", parser_class=_Parser)
    sub.required = True
    stages = {
        "ingest": "align the KB with the corpora and denormalize statements",
        "slotfill": "extract positive contexts and swap in negatives",
        "querify": "instantiate question templates into examples",
        "split": "write UnENT, parallel, UnREL and subsample id lists",
        "stats": "write dataset statistics",
        "build": "run every stage end to end, then score the baselines",
    }
    for name, help_ in stages.items():
        sub.add_parser(name, help=help_, parents=[common])

    sp = sub.add_parser("score", help="score predictions against gold examples", parents=[common])
    sp.add_argument("--gold", type=Path, required=True, help="examples.jsonl")
    sp.add_argument("--pred", type=Path, required=True, help="predictions JSON lines {example_id, answer}")
    sp.add_argument("--group-by", choices=sorted(GROUP_KEYS))
    sp.add_argument("--case-sensitive", action="store_true")
    sp.add_argument("--report", type=Path, help="write the report here as well as to stdout")

    bp = sub.add_parser("baseline", help="write predictions of a deterministic baseline", parents=[common])
    bp.add_argument("--mode", choices=sorted(PREDICTORS), required=True)
    bp.add_argument("--gold", type=Path, help="examples.jsonl (default: <out>/querify/examples.jsonl)")
    bp.add_argument("--pred-out", type=Path, help="where to write predictions")
    return parser


def load_config(args) -> PipelineConfig:
    overrides = {"langs": args.langs} if args.langs else {}
    if args.config:
        cfg = PipelineConfig.from_file(args.config, overrides)
    else:
        cfg = PipelineConfig.from_mapping(overrides, Path("."))
    if args.seed is not None:
        cfg.seed = args.seed
    return cfg


def _out_dir(args, default: str | None = None) -> Path:
    if args.out is not None:
        return args.out
    if default is not None:
        return Path(default)
    raise UsageError("--out is required for this subcommand")


def _run(args) -> int:
    cmd = args.command
    if cmd == "score":
        report = pipeline.score_files(args.gold, args.pred, args.group_by, args.case_sensitive)
        print(json.dumps(report, ensure_ascii=False, indent=2))
        target = args.report or (args.out / "score" / "report.json" if args.out else None)
        if target is not None:
            write_json(target, report)
            pipeline.write_manifest(target.parent, "score", None, [args.gold, args.pred])
        return EXIT_OK

    cfg = load_config(args)
    out = _out_dir(args)
    out.mkdir(parents=True, exist_ok=True)
    if cmd == "baseline":
        gold = args.gold or out / pipeline.EXAMPLES
        examples = pipeline.load_examples(gold, "baseline")
        preds = PREDICTORS[args.mode](examples)
        target = args.pred_out or out / "baselines" / f"{args.mode}.jsonl"
        write_jsonl(target, ({"example_id": p.example_id, "answer": p.answer} for p in preds))
        pipeline.write_manifest(out, "baseline", cfg, [gold])
        print(json.dumps({"mode": args.mode, "predictions": len(preds), "path": str(target)}))
        return EXIT_OK

    stage = {
        "ingest": pipeline.run_ingest,
        "slotfill": pipeline.run_slotfill,
        "querify": pipeline.run_querify,
        "split": pipeline.run_split,
        "stats": pipeline.run_stats,
        "build": pipeline.run_build,
    }[cmd]
    summary = stage(cfg, out)
    print(json.dumps(summary, ensure_ascii=False, indent=2, default=str))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _run(args)
    except UsageError as exc:
        print(f"xwikire: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except pipeline.StageError as exc:
        print(f"xwikire: error in stage {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConfigError, UnknownExampleError, OSError, ValueError, KeyError) as exc:
        print(f"xwikire: error in stage {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
