"""Build a dataset and print baseline P/R/F1 on each language's UnENT test split.

    python scripts/run_baselines.py                      # mini fixture
    python scripts/run_baselines.py --config my.cfg --out build/
"""

import argparse
import logging
import tempfile
from pathlib import Path

from xwikire import pipeline
from xwikire.baselines import heuristic_predict, nil_predict, oracle_predict
from xwikire.config import PipelineConfig
from xwikire.evalscore import score

FIXTURE_CFG = Path(__file__).resolve().parent.parent / "fixtures" / "mini" / "fixture.cfg"
MODES = {"oracle": oracle_predict, "nil": nil_predict, "heuristic": heuristic_predict}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--config", type=Path, default=FIXTURE_CFG)
    ap.add_argument("--out", type=Path, help="build directory (default: a temporary one)")
    ap.add_argument("--split", default="test", choices=["train", "dev", "test"])
    args = ap.parse_args()
    logging.basicConfig(level=logging.ERROR)

    cfg = PipelineConfig.from_file(args.config)
    with tempfile.TemporaryDirectory() as tmp:
        out = args.out or Path(tmp)
        pipeline.run_build(cfg, out)
        examples = {ex.id: ex for ex in pipeline.load_examples(out / pipeline.EXAMPLES)}
        print(f"{'lang':<6}{'n':>6}" + "".join(f"{m + ' F1':>14}" for m in MODES))
        for lang in cfg.langs:
            ids = (out / f"splits/unent/{lang}.{args.split}.txt").read_text(encoding="utf-8").splitlines()
            subset = [examples[i] for i in ids]
            row = [score(subset, fn(subset)).f1 for fn in MODES.values()]
            print(f"{lang:<6}{len(subset):>6}" + "".join(f"{f:>14.3f}" for f in row))


if __name__ == "__main__":
    main()
