#!/usr/bin/env python3
"""Direct-formula distances for the fixture coordinate files (mpmath, 40 digits).

Writes tests/fixtures/distances/{cultural,geographic}.expected.csv.
"""

import csv
from pathlib import Path

import mpmath

mpmath.mp.dps = 40
DIR = Path(__file__).resolve().parent.parent / "fixtures" / "distances"


def read(path):
    with open(path) as f:
        rows = list(csv.reader(f))
    return [(r[0], mpmath.mpf(r[1]), mpmath.mpf(r[2])) for r in rows[1:]]


def euclid(a, b):
    return mpmath.sqrt((a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2)


def haversine(a, b):
    rad = mpmath.pi / 180
    dlat = (b[1] - a[1]) * rad
    dlon = (b[2] - a[2]) * rad
    h = mpmath.sin(dlat / 2) ** 2 + mpmath.cos(a[1] * rad) * mpmath.cos(b[1] * rad) * mpmath.sin(dlon / 2) ** 2
    return 2 * 6371 * mpmath.asin(mpmath.sqrt(h))


def write(name, points, fn):
    with open(DIR / name, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["iso_a", "iso_b", "distance"])
        for i, a in enumerate(points):
            for b in points[i + 1:]:
                x, y = sorted([a, b])
                w.writerow([x[0], y[0], mpmath.nstr(fn(x, y), 17)])


write("cultural.expected.csv", sorted(read(DIR / "cultural_coords.csv")), euclid)
write("geographic.expected.csv", sorted(read(DIR / "latlon_coords.csv")), haversine)
