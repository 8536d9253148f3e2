#!/usr/bin/env python3
"""Conditioning study: cond(A) growth under refinement, no solves.

Defaults cover tau in {3, 4, 5} at spacings 0.25/k for k in
1,2,4,6,8,10,12 (roughly half an hour, dominated by the finest level).
The emitted study.txt ends with the fitted log-log slope of cond
against fill distance per kernel, next to the -4*tau kernel-theory
prediction.
"""

import argparse
import sys

from lsqkernel.cli import main


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="out/conditioning",
                        help="output directory (default: out/conditioning)")
    parser.add_argument("--tau", default="3,4,5",
                        help="comma-separated kernel exponents (default: 3,4,5)")
    parser.add_argument("--full", action="store_true",
                        help="extend levels to k=14 (hours)")
    args = parser.parse_args(argv)
    levels = "1,2,4,6,8,10,12" + (",14" if args.full else "")
    return main(["cond", "--tau", args.tau, "--levels", levels,
                 "--out", args.out])


if __name__ == "__main__":
    sys.exit(run())
