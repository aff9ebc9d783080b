#!/usr/bin/env python3
"""Build an approximate 357/10 breast-cancer outlier dataset.

Uses scikit-learn's bundled WDBC copy: all 357 benign rows become the target
class and a seeded random sample of 10 malignant rows becomes the outlier
class. The widely circulated outlier-detection benchmark drew one specific
10-point malignant subsample; that exact file is not bundled here, so AUC
numbers measured on this reconstruction can differ from published ones by
more than fold-to-fold noise (the choice of the 10 outliers matters).
See data/README.md for supplying the canonical files.
"""

import argparse
import csv

import numpy as np
from sklearn.datasets import load_breast_cancer


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/breast-cancer-reconstructed.csv")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n-outliers", type=int, default=10)
    args = parser.parse_args()

    data = load_breast_cancer()
    features, labels = data.data, data.target  # label 1 = benign, 0 = malignant
    benign = features[labels == 1]
    malignant = features[labels == 0]

    rng = np.random.default_rng(args.seed)
    picked = np.sort(rng.choice(len(malignant), size=args.n_outliers, replace=False))

    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([name.replace(" ", "_") for name in data.feature_names] + ["class"])
        for row in benign:
            writer.writerow([repr(float(v)) for v in row] + ["target"])
        for row in malignant[picked]:
            writer.writerow([repr(float(v)) for v in row] + ["outlier"])

    print(
        f"wrote {args.out}: {len(benign)} target rows + "
        f"{args.n_outliers} outlier rows (seed {args.seed})"
    )


if __name__ == "__main__":
    main()
