"""Sweep every measure over h in [0, 2] at fixed N and gamma and write a CSV.

    python3 scripts/sweep_field.py --gamma 0.5 --n 4096 --out results/sweep.csv
"""

import argparse
import sys

from lmg_coherence.cli import main as cli_main


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gamma", type=float, default=0.5)
    ap.add_argument("--n", default="2^12")
    ap.add_argument("--h-step", type=float, default=0.05)
    ap.add_argument("--out", default="results/sweep.csv")
    ap.add_argument("--jobs", type=int, default=None)
    args = ap.parse_args(argv)
    cmd = ["sweep", "--gamma", str(args.gamma), "--n-list", args.n, "--h-step", str(args.h_step), "--out", args.out]
    if args.jobs is not None:
        cmd += ["--jobs", str(args.jobs)]
    return cli_main(cmd)


if __name__ == "__main__":
    sys.exit(main())
