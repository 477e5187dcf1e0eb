#!/usr/bin/env python3
"""Regenerate the synthetic daily-bar fixtures in data/.

The fixture is a seeded half-day discrete Heston recursion: two prices per day,
open_i = S[2i], close_i = S[2i+1]. Parameters are tuned so the daily open/close
ratio series has equity-like texture (ratio kurtosis ~ 5-6, intraday return
std ~ 1.2%, drift ~ 2.5e-4 per half-day).

Deterministic: legacy NumPy MT19937 seeded with 20240701. Draw order per step is
price shock first, then variance shock.

Writes data/aapl4y.csv (1008 rows), data/aapl1y.csv (last 252 rows),
data/aapl3y.csv (last 756 rows).
"""

import datetime
import pathlib

import numpy as np

N_DAYS = 1008
S0 = 96.5
MU = 2.5e-4
THETA = 1.5e-4
ALPHA = 0.10
XI = 0.005
SEED = 20240701
START = datetime.date(2020, 7, 1)


def heston_halfday(n, s0, mu, th, a, xi, seed):
    np.random.seed(seed)
    s = np.empty(n)
    v = np.empty(n)
    s[0] = s0
    v[0] = th
    for i in range(n - 1):
        sg = np.sqrt(max(v[i], 0.0))
        s[i + 1] = s[i] * (1.0 + mu + sg * np.random.standard_normal())
        v[i + 1] = v[i] + a * (th - v[i]) + xi * sg * np.random.standard_normal()
    return s, v


def weekdays(start, count):
    out = []
    d = start
    while len(out) < count:
        if d.weekday() < 5:
            out.append(d)
        d += datetime.timedelta(days=1)
    return out


def write_csv(path, dates, op, cl):
    with open(path, "w", newline="\n") as f:
        f.write("date,open,close\n")
        for d, o, c in zip(dates, op, cl):
            f.write(f"{d.isoformat()},{o:.17g},{c:.17g}\n")


def main():
    s, v = heston_halfday(2 * N_DAYS, S0, MU, THETA, ALPHA, XI, SEED)
    op, cl = s[0::2], s[1::2]
    dates = weekdays(START, N_DAYS)

    root = pathlib.Path(__file__).resolve().parent.parent / "data"
    root.mkdir(exist_ok=True)
    write_csv(root / "aapl4y.csv", dates, op, cl)
    write_csv(root / "aapl1y.csv", dates[-252:], op[-252:], cl[-252:])
    write_csv(root / "aapl3y.csv", dates[-756:], op[-756:], cl[-756:])

    ratio = cl / op - 1.0
    print(f"rows={N_DAYS} dates {dates[0]}..{dates[-1]}")
    print(f"open range [{op.min():.2f}, {op.max():.2f}] last={op[-1]:.2f}")
    print(f"intraday ret std={ratio.std():.5f}  neg-V fraction={(v < 0).mean():.4f}")


if __name__ == "__main__":
    main()
