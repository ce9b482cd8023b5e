"""Regenerate the bundled mini corpus under fixtures/mini."""

import argparse
from pathlib import Path

from finopinion.synthetic import write_mini_bundle

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "fixtures" / "mini"))
    ap.add_argument("--seed", type=int, default=4)
    args = ap.parse_args()
    print(write_mini_bundle(args.out, args.seed))
