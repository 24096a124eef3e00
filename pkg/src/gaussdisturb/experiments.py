"""Row builders for sweeps, scatter samples, overlays and the M = A^G threshold."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import math
import os

import numpy as np
from scipy.optimize import brentq

from .discord import two_way_discord
from .entropy import quantum_mutual_information
from .eof import EofParams, eof_symmetric
from .errors import GaussDisturbError, NoCrossing, OutOfRange
from .fock import DEFAULT_CAP, DEFAULT_TAIL, mid
from .povm import gaussian_amid
from .sampler import SamplerConfig, sample_states
from .states import StandardFormCM, make_family, pt_nu_minus

MEASURE_COLUMNS = ("I_q", "M", "A_G", "A_bound", "D_twoway", "E_f_G")
THREADS_ENV = "GAUSSDISTURB_THREADS"


@dataclass(frozen=True)
class RowConfig:
    tail_tol: float = DEFAULT_TAIL
    max_cutoff: int = DEFAULT_CAP
    check: bool = True


def worker_count():
    n = os.cpu_count() or 1
    env = os.environ.get(THREADS_ENV)
    if env:
        n = min(n, max(1, int(env)))
    return n


def ordered_map(fn, items, workers=None, chunksize=16):
    """``map`` over a process pool, results in input order."""
    items = list(items)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=chunksize))


def _try(errors, name, fn):
    try:
        return fn()
    except GaussDisturbError as exc:
        errors.append(f"{name}: {type(exc).__name__}: {exc}")
        return math.nan


def measure_row(sf, cfg=RowConfig()):
    """Measures of one state as a flat dict; failures become NaN plus ``error``."""
    errors = []
    row = {"a": sf.a, "b": sf.b, "c1": sf.c1, "c2": sf.c2}
    try:
        sf.check()
    except GaussDisturbError as exc:
        row.update({k: math.nan for k in MEASURE_COLUMNS})
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row["I_q"] = _try(errors, "I_q", lambda: quantum_mutual_information(sf))
    row["M"] = _try(errors, "M", lambda: mid(sf, cfg.tail_tol, cfg.max_cutoff))
    row["A_G"] = _try(errors, "A_G", lambda: gaussian_amid(sf, check=cfg.check).value)
    # min() is order dependent with NaN
    row["A_bound"] = math.nan if math.isnan(row["M"] + row["A_G"]) else min(row["M"], row["A_G"])
    row["D_twoway"] = _try(errors, "D_twoway", lambda: two_way_discord(sf, cfg.check))
    try:
        row["E_f_G"] = eof_symmetric(EofParams.from_state(sf).nu_tilde)
    except OutOfRange:
        row["E_f_G"] = math.nan
    row["error"] = "; ".join(errors)
    return row


# --------------------------------------------------------------------------
# sweeps

def build_state(family, params):
    """``make_family`` plus the normalized squeezed-thermal coupling ``c_norm``.

    ``c_norm`` sets ``c = c_norm * sqrt(ab - 1)``, so ``c_norm -> 1`` is the
    pure line when ``a = b``.
    """
    params = dict(params)
    if "c_norm" in params:
        x = params.pop("c_norm")
        params["c"] = x * math.sqrt(params["a"] * params["b"] - 1.0)
    return make_family(family, **params)


def _sweep_task(args):
    family, params, cfg = args
    try:
        sf = build_state(family, params)
    except GaussDisturbError as exc:
        row = dict(params)
        row.update({k: math.nan for k in MEASURE_COLUMNS})
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row = measure_row(sf, cfg)
    for k in ("a", "b", "c1", "c2"):
        row.pop(k)
    return {**params, **row}


def sweep_rows(family, fixed, name, values, cfg=RowConfig(), workers=None):
    """One row per value of parameter ``name``; other parameters from ``fixed``."""
    tasks = [(family, {**fixed, name: float(v)}, cfg) for v in values]
    return ordered_map(_sweep_task, tasks, workers)


# --------------------------------------------------------------------------
# scatter

def _scatter_task(args):
    tag, sf, cfg = args
    row = {"family": tag, **measure_row(sf, cfg)}
    try:
        row["pt_nu_minus"] = pt_nu_minus(sf)
    except GaussDisturbError:
        row["pt_nu_minus"] = math.nan
    return row


def overlay_states(n_points=25):
    """Boundary families tagged by name: pure line, large-``r`` cmivette line,
    gmems and glems curves."""
    out = []
    for r in np.linspace(0.05, 2.0, n_points):
        out.append(("pure-tmsv", make_family("pure-tmsv", r=float(r))))
    for s in np.linspace(0.05, 2.0, n_points):
        out.append(("cmivette", make_family("cmivette", s=float(s), r=3.0)))
    for nu in np.linspace(0.05, 0.95, n_points):
        lo = max(nu, (1 + nu * nu) / (2 * nu))
        out.append(("gmems", make_family("gmems", a=float(lo * 1.5), nu_tilde=float(nu))))
        out.append(("glems", make_family("glems", a=float(lo * 1.5), nu_tilde=float(nu))))
    return out


def scatter_rows(n, sampler_cfg=SamplerConfig(), cfg=RowConfig(), overlays=True,
                 workers=None):
    """``n`` sampled states (tag ``sample``) plus optional overlay rows."""
    states, _ = sample_states(sampler_cfg, n)
    tasks = [("sample", sf, cfg) for sf in states]
    if overlays:
        tasks += [(tag, sf, cfg) for tag, sf in overlay_states()]
    return ordered_map(_scatter_task, tasks, workers)


# --------------------------------------------------------------------------
# threshold

def mid_minus_gamid(a, x, cfg=RowConfig()):
    """``M - A^G`` on the symmetric state with ``c1 = -c2 = x sqrt(a^2 - 1)``."""
    c = x * math.sqrt(a * a - 1.0)
    sf = StandardFormCM(a, a, c, -c)
    return mid(sf, cfg.tail_tol, cfg.max_cutoff) - gaussian_amid(sf, check=cfg.check).value


THRESHOLD_GRID = np.unique(np.concatenate([np.linspace(0.02, 0.98, 25),
                                           1.0 - np.logspace(-1.0, -4.0, 7)]))


def threshold(a, cfg=RowConfig()):
    """Normalized coupling ``x*`` where ``M = A^G`` on symmetric squeezed thermal states.

    Scans a grid in ``x = c/sqrt(a^2 - 1)`` and refines the largest sign
    change from ``M > A^G`` to ``M < A^G`` by Brent's method. Raises
    :class:`NoCrossing` if there is none.
    """
    if not a > 1.0:
        raise OutOfRange(f"a must exceed 1, got {a}")
    f = lambda x: mid_minus_gamid(a, x, cfg)
    vals = [f(x) for x in THRESHOLD_GRID]
    for i in range(len(vals) - 1, 0, -1):
        if vals[i - 1] > 0.0 >= vals[i]:
            return brentq(f, THRESHOLD_GRID[i - 1], THRESHOLD_GRID[i], xtol=1e-12)
    raise NoCrossing(f"M - A^G has no sign change for a={a}")


def _threshold_task(args):
    a, cfg = args
    row = {"a": a, "a_norm": (a - 1.0) / a}
    try:
        x = threshold(a, cfg)
        row.update({"c_star": x * math.sqrt(a * a - 1.0), "c_star_norm": x, "error": ""})
    except GaussDisturbError as exc:
        row.update({"c_star": math.nan, "c_star_norm": math.nan,
                    "error": f"{type(exc).__name__}: {exc}"})
    return row


def threshold_rows(a_values, cfg=RowConfig(), workers=None):
    return ordered_map(_threshold_task, [(float(a), cfg) for a in a_values], workers)
