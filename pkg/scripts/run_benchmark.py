#!/usr/bin/env python3
"""End-to-end benchmark: generate the default corpora, extract features,
run the four-model protocol and print the comparison table.

Usage: python scripts/run_benchmark.py [--seed 42] [--per-class 100] [--out build/]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cmstruct.cli import main as cli


def run(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    seed = str(args.seed)
    per_class = str(args.per_class)

    for name, noise in (("noisy", None), ("noise0", "0")):
        corpus = out / f"corpus-{name}"
        features = out / f"features-{name}.csv"
        gen = ["generate", "--out", str(corpus), "--per-class", per_class, "--seed", seed]
        if noise is not None:
            gen += ["--noise", noise]
        assert cli(gen) == 0
        assert cli(["extract", "--maps", str(corpus), "--out", str(features)]) == 0
        print(f"\n=== {name} corpus (seed {seed}, {per_class}/class) ===")
        assert cli([
            "evaluate", "--features", str(features),
            "--out", str(out / f"report-{name}.json"), "--seed", seed,
        ]) == 0

    assert cli([
        "train", "--features", str(out / "features-noise0.csv"),
        "--model", "decision_tree", "--seed", seed,
        "--out", str(out / "model-dt.json"),
    ]) == 0
    print(f"\nartifacts in {out}/ (reports, corpora, features, model-dt.json)")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--per-class", type=int, default=100)
    parser.add_argument("--out", default="build")
    run(parser.parse_args())
