"""Entanglement of formation and quantum discord of the two-spin state versus h."""

import argparse
import csv
import sys

import numpy as np

from lmg_coherence import ModelParams, evaluate_point


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gamma", type=float, default=0.5)
    ap.add_argument("--n", type=int, default=4096)
    ap.add_argument("--h-step", type=float, default=0.05)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)
    hs = np.round(np.arange(0.0, 2.0 + 1e-9, args.h_step), 12)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["h", "eof", "discord", "c_l1", "asc_l1", "msc_l1"])
        for h in hs:
            r = evaluate_point(ModelParams(args.n, args.gamma, float(h)), correlations=True)
            m = r.measures
            w.writerow([f"{h:.12g}", f"{r.eof:.10g}", f"{r.discord:.10g}",
                        f"{m.coherence.l1:.10g}", f"{m.asc.l1:.10g}", f"{m.msc.l1:.10g}"])
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
