#!/usr/bin/env python3
"""Regenerate the per-user ratio convergence tables, one CSV per order.

Each table lists the served-user count of the cluster construction, the
certificate bound where one exists, and both as ratios against 2M/(2M+1).
"""

import argparse
import pathlib
import sys

from comp_dof.cli import main as cli_main


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--Kmax", type=int, default=200)
    parser.add_argument("--orders", type=int, nargs="+", default=[1, 2, 3])
    parser.add_argument("--outdir", default="results")
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for M in args.orders:
        target = outdir / f"sweep_M{M}.csv"
        code = cli_main(["sweep", "--Kmax", str(args.Kmax), "--M", str(M),
                         "--out", str(target)])
        if code:
            sys.exit(code)
        print(f"wrote {target}")


if __name__ == "__main__":
    main()
