"""Threshold c*(a) separating M > A^G from M < A^G on symmetric squeezed thermal states."""
import argparse
import os

import numpy as np

from gaussdisturb.cli import write_csv
from gaussdisturb.experiments import RowConfig, threshold_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a-min", type=float, default=1.02)
    ap.add_argument("--a-max", type=float, default=30.0)
    ap.add_argument("--num", type=int, default=30)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)

    a = np.geomspace(args.a_min, args.a_max, args.num)
    rows = threshold_rows(a, RowConfig(tail_tol=1e-10, max_cutoff=2048), args.workers)
    path = os.path.join(args.out_dir, "threshold.csv")
    with open(path, "w", newline="") as fh:
        write_csv(rows, fh)
    bad = [r for r in rows if r["error"]]
    print(f"wrote {path}: {len(rows) - len(bad)} crossings, {len(bad)} rows without one")


if __name__ == "__main__":
    main()
