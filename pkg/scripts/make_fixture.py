"""Write the deterministic mini-fixture (default: fixtures/mini)."""

import argparse
from pathlib import Path

from xwikire.fixture import write_fixture


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", nargs="?", type=Path, default=Path(__file__).resolve().parent.parent / "fixtures" / "mini")
    args = ap.parse_args()
    for path in write_fixture(args.out):
        print(path)


if __name__ == "__main__":
    main()
