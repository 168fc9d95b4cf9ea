#!/usr/bin/env python3
"""Writes vehicle_like.csv: 846 silhouettes, 18 integer shape measures, 4 classes.

Every measure is an integer-rounded linear function of three latent shape
factors plus its own noise. The class shifts the factors; opel and saab are
deliberately close to each other.
"""

import csv
import random
import sys
from pathlib import Path

CLASSES = [("bus", 218), ("opel", 212), ("saab", 217), ("van", 199)]

# Latent factor means per class: size, elongation, compactness.
FACTOR_MEANS = {
    "bus": (1.0, 0.9, -0.6),
    "opel": (0.0, -0.3, 0.5),
    "saab": (0.15, -0.1, 0.35),
    "van": (-0.8, 0.6, -0.2),
}

# name, offset, scale, loadings on the three factors, noise sd
MEASURES = [
    ("COMPACTNESS", 93, 8, (0.4, -0.3, 0.8), 0.5),
    ("CIRCULARITY", 44, 6, (0.6, -0.2, 0.4), 0.6),
    ("DISTANCE_CIRCULARITY", 82, 15, (0.7, -0.4, 0.5), 0.5),
    ("RADIUS_RATIO", 168, 33, (0.5, -0.5, 0.6), 0.6),
    ("PR_AXIS_ASPECT_RATIO", 61, 7, (0.1, -0.6, 0.3), 0.8),
    ("MAX_LENGTH_ASPECT_RATIO", 8, 4, (0.3, 0.5, 0.2), 0.8),
    ("SCATTER_RATIO", 168, 33, (0.9, 0.2, 0.1), 0.4),
    ("ELONGATEDNESS", 41, 8, (-0.8, 0.3, -0.2), 0.4),
    ("PR_AXIS_RECTANGULARITY", 20, 3, (0.8, 0.3, 0.1), 0.5),
    ("MAX_LENGTH_RECTANGULARITY", 147, 14, (0.5, 0.1, 0.6), 0.6),
    ("SCALED_VARIANCE_MAJOR", 188, 31, (0.8, 0.2, 0.2), 0.5),
    ("SCALED_VARIANCE_MINOR", 439, 176, (0.9, 0.2, 0.0), 0.4),
    ("SCALED_RADIUS_OF_GYRATION", 174, 32, (0.7, 0.0, 0.4), 0.5),
    ("SKEWNESS_ABOUT_MAJOR", 72, 7, (-0.3, 0.6, -0.3), 0.8),
    ("SKEWNESS_ABOUT_MINOR", 6, 5, (0.1, -0.2, 0.4), 1.0),
    ("KURTOSIS_ABOUT_MAJOR", 12, 9, (0.2, -0.1, 0.3), 1.0),
    ("KURTOSIS_ABOUT_MINOR", 189, 6, (0.1, -0.7, 0.2), 0.8),
    ("HOLLOWS_RATIO", 195, 7, (-0.1, -0.8, 0.1), 0.7),
]


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).with_name("vehicle_like.csv")
    rng = random.Random(846)
    rows = []
    for label, count in CLASSES:
        means = FACTOR_MEANS[label]
        for _ in range(count):
            factors = [rng.gauss(m, 0.6) for m in means]
            row = []
            for _, offset, scale, loadings, noise in MEASURES:
                value = sum(l * f for l, f in zip(loadings, factors)) + rng.gauss(0.0, noise)
                row.append(max(0, round(offset + scale * value)))
            rows.append(row + [label])
    rng.shuffle(rows)
    with out.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow([m[0] for m in MEASURES] + ["class"])
        writer.writerows(rows)


if __name__ == "__main__":
    main()
