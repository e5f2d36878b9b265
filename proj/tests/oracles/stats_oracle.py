#!/usr/bin/env python3
"""Oracle for Pearson/Student-t/Welch values.

The Student-t CDF is obtained by numerically integrating the density with
mpmath.quad (no incomplete beta, no scipy). Inputs are generated here with
a fixed seed and written next to the expected values in
tests/fixtures/stats/.
"""

import json
import random
from pathlib import Path

import mpmath

mpmath.mp.dps = 40
OUT = Path(__file__).resolve().parent.parent / "fixtures" / "stats"


def t_pdf(x, nu):
    nu = mpmath.mpf(nu)
    c = mpmath.gamma((nu + 1) / 2) / (mpmath.sqrt(nu * mpmath.pi) * mpmath.gamma(nu / 2))
    return c * (1 + x * x / nu) ** (-(nu + 1) / 2)


def t_cdf(t, nu):
    t = mpmath.mpf(t)
    half = mpmath.quad(lambda x: t_pdf(x, nu), [0, abs(t)]) if t != 0 else mpmath.mpf(0)
    return mpmath.mpf("0.5") + half if t >= 0 else mpmath.mpf("0.5") - half


def two_sided_p(t, nu):
    return 2 * (1 - t_cdf(abs(t), nu))


def pearson(xs, ys):
    n = len(xs)
    mx = mpmath.fsum(map(mpmath.mpf, xs)) / n
    my = mpmath.fsum(map(mpmath.mpf, ys)) / n
    sxy = mpmath.fsum((mpmath.mpf(x) - mx) * (mpmath.mpf(y) - my) for x, y in zip(xs, ys))
    sxx = mpmath.fsum((mpmath.mpf(x) - mx) ** 2 for x in xs)
    syy = mpmath.fsum((mpmath.mpf(y) - my) ** 2 for y in ys)
    r = sxy / mpmath.sqrt(sxx * syy)
    t = r * mpmath.sqrt((n - 2) / (1 - r * r))
    return r, two_sided_p(t, n - 2)


def welch(a, b):
    na, nb = len(a), len(b)
    ma = mpmath.fsum(map(mpmath.mpf, a)) / na
    mb = mpmath.fsum(map(mpmath.mpf, b)) / nb
    va = mpmath.fsum((mpmath.mpf(x) - ma) ** 2 for x in a) / (na - 1)
    vb = mpmath.fsum((mpmath.mpf(x) - mb) ** 2 for x in b) / (nb - 1)
    se2 = va / na + vb / nb
    t = (ma - mb) / mpmath.sqrt(se2)
    df = se2 ** 2 / ((va / na) ** 2 / (na - 1) + (vb / nb) ** 2 / (nb - 1))
    return t, df, two_sided_p(t, df)


def main():
    rng = random.Random(2024)
    cases = []
    for n in (5, 10, 30):
        xs = [round(rng.uniform(0, 10), 6) for _ in range(n)]
        ys = [round(0.3 * x + rng.gauss(0, 2), 6) for x in xs]
        r, p = pearson(xs, ys)
        cases.append({"x": xs, "y": ys, "r": float(r), "p": float(p)})
    (OUT / "pearson.json").write_text(json.dumps(cases, indent=1) + "\n")

    a = [round(rng.gauss(0.40, 0.08), 6) for _ in range(30)]
    b = [round(rng.gauss(0.35, 0.12), 6) for _ in range(30)]
    t, df, p = welch(a, b)
    (OUT / "welch.json").write_text(json.dumps(
        {"a": a, "b": b, "t": float(t), "df": float(df), "p": float(p)}, indent=1) + "\n")

    # Textbook two-tailed critical values (df, quantile, table probability).
    table = [(1, "12.706", 0.975), (5, "2.571", 0.975), (10, "1.812", 0.95),
             (20, "2.845", 0.995), (30, "2.042", 0.975), (3, "-5.841", 0.005),
             (7.5, "1.3", None)]
    rows = []
    for df, q, prob in table:
        rows.append({"df": df, "t": float(q), "cdf": float(t_cdf(mpmath.mpf(q), df)), "table": prob})
    (OUT / "t_cdf.json").write_text(json.dumps(rows, indent=1) + "\n")
    for r in rows:
        print(r)


if __name__ == "__main__":
    main()
