#!/usr/bin/env python3
"""Accuracy benchmark over the five generator classes.

Thin wrapper around ``normal-schur bench-accuracy`` with the defaults used
in the acceptance gate (exp1-exp5, n in {64, 128}, 10 trials per cell,
solvers alg2/zhou/randdiag).
"""
import argparse
import sys

from normal_schur.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="accuracy.csv")
    ap.add_argument("--classes", default="exp1,exp2,exp3,exp4,exp5")
    ap.add_argument("--sizes", default="64,128")
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--solvers", default="alg2,zhou,randdiag")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    return cli_main(
        [
            "bench-accuracy",
            "--classes", args.classes,
            "--sizes", args.sizes,
            "--trials", str(args.trials),
            "--solvers", args.solvers,
            "--seed", str(args.seed),
            "--out", args.out,
        ]
    )


if __name__ == "__main__":
    sys.exit(main())
