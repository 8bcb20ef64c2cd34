#!/usr/bin/env python3
"""Sweep the generator noise knob and report decision-tree difficulty.

This is the calibration experiment behind the default noise level: the knob
is chosen so the tree benchmark is non-degenerate (accuracy well below 1.0)
while keeping a margin above the acceptance gates (CV mean >= 0.80,
per-class F1 >= 0.75).

Usage: python scripts/noise_sweep.py [--seed 42] [--per-class 100]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cmstruct import ModelSpec, fit, generate_corpus
from cmstruct.evaluation import (
    balance,
    confusion_matrix,
    cross_validate,
    dataset_from_corpus,
    metrics,
    split_dataset,
)
from cmstruct.generate import default_params
from cmstruct.models import predict_matrix
from cmstruct.rng import derive_seed


def sweep(seed, per_class, levels):
    print(f"{'noise':>6} {'cv_mean':>8} {'val_acc':>8} {'f1_chain':>9} "
          f"{'f1_network':>11} {'f1_spoke':>9}")
    for noise in levels:
        ds = dataset_from_corpus(generate_corpus(per_class, default_params(noise), seed))
        bal = balance(ds, per_class, derive_seed(seed, "balance"))
        train, test = split_dataset(bal, 0.2, derive_seed(seed, "split"))
        spec = ModelSpec(kind="decision_tree", seed=seed)
        cv = cross_validate(spec, train, 5, derive_seed(seed, "cv"))
        X, y = train.to_arrays()
        Xt, yt = test.to_arrays()
        m = metrics(confusion_matrix(yt, predict_matrix(fit(spec, X, y), Xt)))
        f1 = {k: v["f1"] for k, v in m["per_class"].items()}
        print(f"{noise:>6.2f} {cv['mean']:>8.3f} {m['accuracy']:>8.3f} "
              f"{f1['chain']:>9.3f} {f1['network']:>11.3f} {f1['spoke']:>9.3f}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--per-class", type=int, default=100)
    parser.add_argument("--levels", default="0.0,0.15,0.25,0.35,0.45,0.55")
    args = parser.parse_args()
    sweep(args.seed, args.per_class, [float(x) for x in args.levels.split(",")])
