"""Family with c2 = 0 whose MID grows without bound while A^G and discord stay small."""
import argparse
import os

import numpy as np

from gaussdisturb.cli import write_csv
from gaussdisturb.experiments import RowConfig, sweep_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a-max", type=float, default=1e3)
    ap.add_argument("--num", type=int, default=31)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)

    # a = 1e3 needs N ~ 7e3 photons per mode for 1e-6 tail mass
    cfg = RowConfig(tail_tol=1e-6, max_cutoff=8192)
    grid = np.geomspace(1.01, args.a_max, args.num)
    rows = sweep_rows("statistrani", {}, "a", grid, cfg, args.workers)
    path = os.path.join(args.out_dir, "statistrani.csv")
    with open(path, "w", newline="") as fh:
        write_csv(rows, fh)
    last = rows[-1]
    print(f"wrote {path}; a = {last['a']:g}: M = {last['M']:.4f}, "
          f"A_G = {last['A_G']:.5f}, D = {last['D_twoway']:.5f}")


if __name__ == "__main__":
    main()
