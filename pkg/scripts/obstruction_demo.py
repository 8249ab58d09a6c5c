#!/usr/bin/env python3
"""The three exponentials whose negatives have no *-logarithm.

For each fixture F this prints what ``star_log`` does with exp_*(F) and with
-exp_*(F): the first gets a logarithm with its residual, the second an
obstruction naming the isolated zero of g_v where the normalized g is -1.

    python3 scripts/obstruction_demo.py [--order 64]
"""

import argparse
import time

from slicelog import LogResult, star_exp_formula, star_log
from slicelog.checks import obstruction_fixtures
from slicelog.quat import format_short


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description="obstruction fixtures")
    parser.add_argument("--order", type=int, default=64)
    args = parser.parse_args(argv)
    for label, F in obstruction_fixtures(args.order):
        G = star_exp_formula(F)
        for sign, target in (("+", G), ("-", -G)):
            start = time.perf_counter()
            out = star_log(target)
            took = time.perf_counter() - start
            if isinstance(out, LogResult):
                text = f"log via {out.route}, residual {out.residual:.2e}, pointwise {out.point_residual:.2e}"
            else:
                text = f"obstructed at {format_short(out.zero_point, 8)}, g there = {format_short(out.g0_value, 8)}"
            print(f"{sign}exp_*({label}): {text}  [{took:.2f}s]")


if __name__ == "__main__":
    main()
