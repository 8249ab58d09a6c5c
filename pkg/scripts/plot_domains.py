#!/usr/bin/env python3
"""Draw the domains D_0, ..., D_n in one slice and check mu maps them onto H minus the cut.

    python3 scripts/plot_domains.py --n 3 --out domains.png

Needs matplotlib (``pip install -e .[plot]``).  Points are coloured by the
index of the domain that contains them; the parabolas Gamma_n are drawn on
top.  The summary printed at the end counts sample points per domain and the
worst |phi(mu(w)) - w| over D_0.
"""

import argparse
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from slicelog import entire  # noqa: E402
from slicelog.quat import I, Quaternion  # noqa: E402


def domain_index(x: float, y: float, n_max: int) -> int:
    q = Quaternion(x) + y * I
    for n in range(n_max + 1):
        if entire.in_Dn(q, n).inside:
            return n
    return -1


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=3, help="largest domain index")
    parser.add_argument("--grid", type=int, default=300, help="grid points per axis")
    parser.add_argument("--out", default="domains.png")
    args = parser.parse_args(argv)

    pi2 = math.pi**2
    xmax = (args.n + 1.5) ** 2 * pi2
    xs = np.linspace(-0.3 * xmax, xmax, args.grid)
    ys = np.linspace(0.0, 1.5 * (args.n + 1) ** 2 * pi2, args.grid)
    index = np.array([[domain_index(x, y, args.n) for x in xs] for y in ys])

    fig, ax = plt.subplots(figsize=(7, 5))
    ax.pcolormesh(xs, ys, np.ma.masked_less(index, 0), cmap="viridis", shading="auto")
    for n in range(1, args.n + 2):
        ax.plot([entire.gamma_abscissa(n, y) for y in ys], ys, "w-", lw=1)
    ax.set_xlim(xs[0], xs[-1])
    ax.set_ylim(ys[0], ys[-1])
    ax.set_xlabel("alpha")
    ax.set_ylabel("beta")
    ax.set_title(f"D_0 ... D_{args.n} in one slice")
    fig.savefig(args.out, dpi=120, bbox_inches="tight")

    counts = {n: int((index == n).sum()) for n in range(args.n + 1)}
    worst = 0.0
    for (row, col) in zip(*np.nonzero(index == 0)):
        w = Quaternion(xs[col]) + ys[row] * I
        worst = max(worst, abs(entire.phi_eval(entire.mu_eval(w)) - w) / max(1.0, abs(w)))
    print(f"wrote {args.out}; points per domain {counts}; worst phi(mu(w)) error on D_0 {worst:.2e}")


if __name__ == "__main__":
    main()
