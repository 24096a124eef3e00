"""M, A^G and two-way discord of symmetric squeezed thermal states versus c/sqrt(a^2-1).

One CSV per local covariance ``a``; the M = A^G crossing is added as a
separate file.
"""
import argparse
import os

import numpy as np

from gaussdisturb.cli import write_csv
from gaussdisturb.experiments import RowConfig, sweep_rows, threshold_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=float, nargs="+", default=[1.05, 2.0])
    ap.add_argument("--num", type=int, default=60)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)

    cfg = RowConfig()
    grid = np.linspace(0.0, 0.999, args.num)
    for a in args.a:
        rows = sweep_rows("squeezed-thermal", {"a": a, "b": a}, "c_norm", grid, cfg, args.workers)
        path = os.path.join(args.out_dir, f"sts_sweep_a{a:g}.csv")
        with open(path, "w", newline="") as fh:
            write_csv(rows, fh)
        print(f"wrote {path}")
    rows = threshold_rows(args.a, cfg, args.workers)
    path = os.path.join(args.out_dir, "sts_crossings.csv")
    with open(path, "w", newline="") as fh:
        write_csv(rows, fh)
    for r in rows:
        print(f"a = {r['a']:g}: crossing at c/sqrt(a^2-1) = {r['c_star_norm']:.6f}")


if __name__ == "__main__":
    main()
