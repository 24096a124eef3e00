"""Command-line interface: ``gaussdisturb {measures,sweep,scatter,threshold}``."""
import argparse
import csv
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import (ConvergenceError, Degenerate, GaussDisturbError, NonPhysical, OptimizerDisagreement,
                     OutOfRange, ParseError, PrecisionError)
from .experiments import (MEASURE_COLUMNS, RowConfig, scatter_rows, sweep_rows,
                          threshold_rows)
from .fock import DEFAULT_CAP, DEFAULT_TAIL, joint_photon_distribution
from .report import MeasureConfig, as_bits, measures
from .sampler import PurityMode, SamplerConfig
from .states import Family, StandardFormCM, family_params, make_family, to_standard_form

EXIT_OK, EXIT_PARSE, EXIT_NONPHYSICAL, EXIT_CONVERGENCE = 0, 2, 3, 4
CSV_HEADER = "# gaussdisturb v1"
FAMILY_FLAGS = ("a", "b", "c", "r", "s", "nu_tilde")


def parse_state(text):
    """State from JSON: ``{"a","b","c1","c2"}`` or ``{"cm": 4x4}``."""
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"state is not valid JSON: {exc}") from None
    if isinstance(d, list):
        d = {"cm": d}
    if not isinstance(d, dict):
        raise ParseError("state must be a JSON object or a 4x4 array")
    if "cm" in d:
        try:
            cm = np.asarray(d["cm"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"cm is not a numeric array: {exc}") from None
        if cm.shape != (4, 4):
            raise ParseError(f"cm must be 4x4, got shape {cm.shape}")
        return to_standard_form(cm)
    try:
        sf = StandardFormCM(*(float(d[k]) for k in ("a", "b", "c1", "c2")))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"state needs numeric a, b, c1, c2: {exc}") from None
    if sf.c1 < abs(sf.c2):
        raise ParseError("standard form needs c1 >= |c2|")
    return sf


def _family_params(args):
    params = {k: getattr(args, k) for k in FAMILY_FLAGS if getattr(args, k) is not None}
    need = family_params(args.family)
    return {k: v for k, v in params.items() if k in need}


def _add_family_flags(p):
    p.add_argument("--family", choices=[f.value for f in Family])
    for k in FAMILY_FLAGS:
        p.add_argument(f"--{k.replace('_', '-')}", dest=k, type=float)


def _add_tolerances(p):
    p.add_argument("--tail-tol", type=float, default=DEFAULT_TAIL,
                   help="photon-number tail mass left out of the MID sum")
    p.add_argument("--max-cutoff", type=int, default=DEFAULT_CAP,
                   help="hard cap on the photon-number cutoff")
    p.add_argument("--no-check", action="store_true",
                   help="skip the numeric optimizer cross-checks")
    p.add_argument("--units", choices=("nats", "bits"), default="nats")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (capped by GAUSSDISTURB_THREADS)")


def build_parser():
    ap = argparse.ArgumentParser(prog="gaussdisturb", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", help="all measures of one state (JSON)")
    _add_family_flags(p)
    p.add_argument("--state", help='JSON {"a":..,"b":..,"c1":..,"c2":..} or {"cm": [[..]]}')
    p.add_argument("--cm", help="4x4 covariance matrix as a JSON array")
    p.add_argument("--dist-out", help="also write the joint photon-number matrix p(m, n) as CSV")
    _add_tolerances(p)

    p = sub.add_parser("sweep", help="measures along a one-parameter family (CSV)")
    _add_family_flags(p)
    p.add_argument("--param", required=True,
                   help="swept parameter; c_norm = c/sqrt(ab-1) for squeezed-thermal")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--num", type=int, default=21)
    p.add_argument("--log", action="store_true", help="geometric spacing")
    _add_tolerances(p)

    p = sub.add_parser("scatter", help="measures of random states plus overlays (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a-max", type=float, default=SamplerConfig.a_max)
    p.add_argument("--b-max", type=float, default=SamplerConfig.b_max)
    p.add_argument("--seed", type=int, default=SamplerConfig.seed)
    p.add_argument("--purity-mode", choices=[m.value for m in PurityMode],
                   default=PurityMode.MIXED.value)
    p.add_argument("--no-overlays", action="store_true")
    _add_tolerances(p)

    p = sub.add_parser("threshold", help="c*(a) where M = A^G (CSV)")
    p.add_argument("--a", type=float, nargs="*", default=None, help="explicit a values")
    p.add_argument("--start", type=float, default=1.05)
    p.add_argument("--stop", type=float, default=10.0)
    p.add_argument("--num", type=int, default=10)
    _add_tolerances(p)
    return ap


def _row_cfg(args):
    return RowConfig(args.tail_tol, args.max_cutoff, not args.no_check)


def _open_out(args):
    return open(args.out, "w", newline="") if args.out else sys.stdout


def _convert(row, units):
    if units != "bits":
        return row
    scale = 1.0 / math.log(2.0)
    return {k: (v * scale if k in MEASURE_COLUMNS and isinstance(v, float) else v)
            for k, v in row.items()}


def write_csv(rows, fh, units="nats"):
    fh.write(CSV_HEADER + "\n")
    if not rows:
        return
    fields = list(rows[0].keys())
    for r in rows[1:]:
        fields += [k for k in r if k not in fields]
    w = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v)
                    for k, v in _convert(r, units).items()})


def _state_from_args(args):
    given = [x for x in (args.family, args.state, args.cm) if x is not None]
    if len(given) != 1:
        raise ParseError("give exactly one of --family, --state, --cm")
    if args.state is not None:
        return parse_state(args.state)
    if args.cm is not None:
        return parse_state(args.cm)
    return make_family(args.family, **_family_params(args))


def cmd_measures(args):
    sf = _state_from_args(args)
    rep = measures(sf, MeasureConfig(args.tail_tol, args.max_cutoff, not args.no_check))
    if args.dist_out:
        dist = joint_photon_distribution(sf, args.tail_tol, args.max_cutoff)
        with open(args.dist_out, "w") as fh:
            dist.to_csv(fh)
    d = rep.to_dict()
    if args.units == "bits":
        d.update(as_bits({**rep.values(), "A_bound": rep.A_bound}))
        d["units"] = "bits"
    else:
        d["units"] = "nats"
    fh = _open_out(args)
    try:
        json.dump(d, fh, indent=2)
        fh.write("\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


def cmd_sweep(args):
    if args.family is None:
        raise ParseError("sweep needs --family")
    fixed = {k: getattr(args, k) for k in FAMILY_FLAGS
             if getattr(args, k) is not None and k != args.param}
    if args.param == "c_norm":
        fixed.pop("c", None)
    grid = (np.geomspace if args.log else np.linspace)(args.start, args.stop, args.num)
    rows = sweep_rows(args.family, fixed, args.param, grid, _row_cfg(args), args.workers)
    _emit(rows, args)


def cmd_scatter(args):
    if args.n < 1:
        raise ParseError("--n must be >= 1")
    scfg = SamplerConfig(args.a_max, args.b_max, args.seed, args.purity_mode)
    rows = scatter_rows(args.n, scfg, _row_cfg(args), not args.no_overlays, args.workers)
    _emit(rows, args)


def cmd_threshold(args):
    a_values = args.a if args.a else np.linspace(args.start, args.stop, args.num)
    if any(not a > 1.0 for a in a_values):
        raise ParseError("threshold needs a > 1")
    _emit(threshold_rows(a_values, _row_cfg(args), args.workers), args)


def _emit(rows, args):
    fh = _open_out(args)
    try:
        write_csv(rows, fh, args.units)
    finally:
        if fh is not sys.stdout:
            fh.close()


COMMANDS = {"measures": cmd_measures, "sweep": cmd_sweep, "scatter": cmd_scatter,
            "threshold": cmd_threshold}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"gaussdisturb: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NonPhysical, OutOfRange, Degenerate) as exc:
        print(f"gaussdisturb: nonphysical input: {exc}", file=sys.stderr)
        return EXIT_NONPHYSICAL
    except (ConvergenceError, PrecisionError, OptimizerDisagreement) as exc:
        print(f"gaussdisturb: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except GaussDisturbError as exc:
        print(f"gaussdisturb: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
