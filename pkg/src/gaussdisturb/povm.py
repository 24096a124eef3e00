"""Bi-local Gaussian POVMs: classical mutual information and Gaussian AMID.

A pure seed of squeezing ``r`` and phase ``theta`` has covariance
``U(theta) diag(e^{2r}, e^{-2r}) U(theta)^T``. After the phase optimization
both seeds sit at ``theta = pi/2`` and the objective only depends on
``t_j = exp(-2 r_j)`` in ``[0, 1]``: ``t = 0`` is homodyne detection of the
position quadrature, ``t = 1`` is heterodyne detection. In these variables

    g(tA, tB) = PA RA PB RB / ((PA PB - c2^2 tA tB) (RA RB - c1^2)),

with ``P = 1 + a t`` and ``R = a + t``, which stays finite at the homodyne
corner and is what all branches below evaluate.
"""
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np
from scipy.optimize import brentq, minimize
from scipy.special import xlogy

from .entropy import quantum_mutual_information
from .errors import NonPhysical, OptimizerDisagreement
from .linalg import TOL, ab_gap
from .states import _nu_tilde_range

HALF_PI = 0.5 * math.pi
DISAGREE_TOL = 1e-6
# seeds squeezed beyond e^{-2r} < 1e-17 are homodyne to double precision
HOMODYNE_T = 1e-17
# log-spaced grid of t = 1/lambda, lambda in [1, e^40], densified near t = 1
# and run slightly past it so roots sitting on the edge are still bracketed
T_GRID = np.unique(np.concatenate([np.exp(np.linspace(-40.0, 0.0, 400)),
                                   np.linspace(0.0, 2.0, 401)[1:]]))


class Branch(str, Enum):
    PRODUCT = "Product"
    SINGLE = "SingleCovariance"
    STS_HOM = "SqueezedThermalHom"
    STS_HET = "SqueezedThermalHet"
    QUARTIC = "SymmetricQuartic"
    GENERAL = "GeneralStationarity"
    BOUNDARY = "Boundary"


def _r_to_json(r):
    return "inf" if math.isinf(r) else r


def _r_from_json(r):
    return math.inf if r == "inf" else float(r)


@dataclass(frozen=True)
class GaussianSeed:
    """Single-mode pure seed; ``r = inf`` is homodyne, ``r = 0`` heterodyne."""

    r: float
    theta: float = HALF_PI

    @property
    def homodyne(self):
        return math.isinf(self.r)

    @property
    def heterodyne(self):
        return self.r == 0.0

    @classmethod
    def from_t(cls, t, theta=HALF_PI):
        if t <= 0.0:
            return cls(math.inf, theta)
        return cls(0.0 - 0.5 * math.log(t), theta)

    def covariance(self):
        if self.homodyne:
            raise ValueError("homodyne seed has no finite covariance")
        c, s = math.cos(self.theta), math.sin(self.theta)
        u = np.array([[c, s], [-s, c]])
        return u @ np.diag([math.exp(2 * self.r), math.exp(-2 * self.r)]) @ u.T

    def measured_direction(self):
        """Quadrature direction read out in the homodyne limit."""
        return np.array([math.sin(self.theta), math.cos(self.theta)])

    def to_dict(self):
        return {"r": _r_to_json(self.r), "theta": self.theta}

    @classmethod
    def from_dict(cls, d):
        return cls(_r_from_json(d["r"]), float(d["theta"]))


@dataclass(frozen=True)
class GaussianSeedPair:
    rA: float
    rB: float
    thetaA: float = HALF_PI
    thetaB: float = HALF_PI

    def __post_init__(self):
        if not (self.rA >= 0 and self.rB >= 0):
            raise ValueError(f"seed squeezings must be >= 0, got {self.rA}, {self.rB}")

    @property
    def seed_a(self):
        return GaussianSeed(self.rA, self.thetaA)

    @property
    def seed_b(self):
        return GaussianSeed(self.rB, self.thetaB)

    @classmethod
    def from_t(cls, tA, tB):
        return cls(GaussianSeed.from_t(tA).r, GaussianSeed.from_t(tB).r)

    def to_dict(self):
        return {"rA": _r_to_json(self.rA), "rB": _r_to_json(self.rB),
                "thetaA": self.thetaA, "thetaB": self.thetaB}

    @classmethod
    def from_dict(cls, d):
        return cls(_r_from_json(d["rA"]), _r_from_json(d["rB"]),
                   float(d["thetaA"]), float(d["thetaB"]))


HOMODYNE = GaussianSeedPair(math.inf, math.inf)
HETERODYNE = GaussianSeedPair(0.0, 0.0)


@dataclass(frozen=True)
class MeasurementInvariants:
    I1: float
    I2: float
    I3: float
    I4: float

    @property
    def det_gamma(self):
        return self.I1 * self.I2 + self.I3 ** 2 - self.I4


@dataclass(frozen=True)
class OptResult:
    value: float
    seeds: object
    branch: Branch
    oracle: float = math.nan

    def __float__(self):
        return self.value

    def to_dict(self):
        return {"value": self.value,
                "seeds": None if self.seeds is None else self.seeds.to_dict(),
                "branch": self.branch.value}

    @classmethod
    def from_dict(cls, d):
        seeds = d.get("seeds")
        if seeds is not None:
            seeds = (GaussianSeedPair if "rA" in seeds else GaussianSeed).from_dict(seeds)
        return cls(float(d["value"]), seeds, Branch(d["branch"]))


# --------------------------------------------------------------------------
# objective

def _cm(state):
    return np.asarray(state.cm if hasattr(state, "cm") else state, dtype=float)


def classical_mi_from_seed_cms(cm, seed_a, seed_b):
    r"""Shannon mutual information of Gaussian POVM outcomes.

    Parameters
    ----------
    cm : array_like, shape (4, 4)
    seed_a, seed_b : GaussianSeed or array_like, shape (2, 2)
        Either a pure seed (possibly homodyne) or any seed covariance,
        mixed ones included.

    Returns
    -------
    float
        :math:`\tfrac12\ln[\det\Sigma_A\det\Sigma_B/\det\Sigma]` where
        :math:`\Sigma` is the outcome covariance. A homodyne seed keeps only
        the projection of the mode onto its measured quadrature.
    """
    cm = _cm(cm)
    proj, noise = [], []
    for seed in (seed_a, seed_b):
        if isinstance(seed, GaussianSeed) and (seed.homodyne
                                               or math.exp(-2.0 * seed.r) < HOMODYNE_T):
            proj.append(seed.measured_direction()[None, :])
            noise.append(np.zeros((1, 1)))
        else:
            g = seed.covariance() if isinstance(seed, GaussianSeed) else np.asarray(seed, float)
            proj.append(np.eye(2))
            noise.append(g)
    na, nb = proj[0].shape[0], proj[1].shape[0]
    P = np.zeros((na + nb, 4))
    P[:na, :2] = proj[0]
    P[na:, 2:] = proj[1]
    sig = P @ cm @ P.T
    sig[:na, :na] += noise[0]
    sig[na:, na:] += noise[1]
    s_all = np.linalg.slogdet(sig)
    s_a = np.linalg.slogdet(sig[:na, :na])
    s_b = np.linalg.slogdet(sig[na:, na:])
    if min(s_all[0], s_a[0], s_b[0]) <= 0:
        raise NonPhysical("outcome covariance is not positive definite")
    return max(0.5 * (s_a[1] + s_b[1] - s_all[1]), 0.0)


def classical_mi_at_seed(sf, seeds):
    """Classical mutual information of ``sf`` for a pair of pure seeds (nats)."""
    sf.check()
    if sf.is_product():
        return 0.0
    return classical_mi_from_seed_cms(sf.cm, seeds.seed_a, seeds.seed_b)


def log_g(a, b, c1, c2, tA, tB):
    """``ln g`` at phase-optimal seeds, vectorized over ``tA, tB``."""
    g1, g2 = ab_gap(a, b, c1), ab_gap(a, b, c2)
    # PA PB - c2^2 tA tB and RA RB - c1^2 expanded around the gaps ab - c_i^2
    den2 = 1.0 + a * tA + b * tB + g2 * tA * tB
    den1 = g1 + b * tA + a * tB + tA * tB
    return (np.log1p(a * tA) + np.log1p(b * tB) + np.log(a + tA) + np.log(b + tB)
            - np.log(den2) - np.log(den1))


def phase_optimized_I4(sf, rA, rB):
    """Invariant ``I4`` maximized over the seed phases."""
    a, b, c1, c2 = sf.a, sf.b, sf.c1, sf.c2
    if c2 == 0.0:
        return c1 * c1 * (a + math.exp(2 * rA)) * (b + math.exp(2 * rB))
    chA, chB = math.cosh(2 * rA), math.cosh(2 * rB)
    shA, shB = math.sinh(2 * rA), math.sinh(2 * rB)
    return (((a + chA) * (b + chB) + shA * shB) * (c1 * c1 + c2 * c2)
            + ((a + chA) * shB + (b + chB) * shA) * (c1 * c1 - c2 * c2))


def measurement_invariants(sf, rA, rB):
    a, b = sf.a, sf.b
    I1 = (a + math.exp(2 * rA)) * (a + math.exp(-2 * rA))
    I2 = (b + math.exp(2 * rB)) * (b + math.exp(-2 * rB))
    return MeasurementInvariants(I1, I2, sf.c1 * sf.c2, phase_optimized_I4(sf, rA, rB))


def h_function(sf, rA, rB):
    """``h = (I4' - I3^2) / (I1 I2)``; the objective is ``f = 1/(1 - h)``."""
    inv = measurement_invariants(sf, rA, rB)
    return (inv.I4 - inv.I3 ** 2) / (inv.I1 * inv.I2)


# --------------------------------------------------------------------------
# candidate generation

def _quad_roots(q2, q1, q0):
    """Real roots of ``q2 x^2 + q1 x + q0`` (stable form, linear if q2 = 0)."""
    scale = max(abs(q2), abs(q1), abs(q0))
    if scale == 0.0:
        return []
    if abs(q2) <= 1e-300 + 1e-15 * scale:
        return [] if q1 == 0.0 else [-q0 / q1]
    disc = q1 * q1 - 4.0 * q2 * q0
    if disc < 0.0:
        return []
    q = -0.5 * (q1 + math.copysign(math.sqrt(disc), q1))
    roots = [q / q2]
    if q != 0.0:
        roots.append(q0 / q)
    return roots


def _unit(roots, lo=0.0, hi=1.0):
    return [x for x in roots if lo < x < hi]


def _eq1(a, b, c1, c2, t):
    """Coefficients in ``s`` of the stationarity condition in ``mu = 1/s``."""
    u, v = a * t + 1.0, a + t
    return (-c2 * c2 * v * v,
            c1 * c1 * b * u * u - c2 * c2 * b * v * v + c1 * c1 * c2 * c2 * a * (1.0 - t * t),
            c1 * c1 * u * u)


def _eq2(a, b, c1, c2, s):
    return _eq1(b, a, c1, c2, s)


def _positive_s(a, b, c1, c2, t):
    """Unique positive root ``s(t)`` of the first condition (``c2 != 0``)."""
    q2, q1, q0 = _eq1(a, b, c1, c2, t)
    pos = [x for x in _quad_roots(q2, q1, q0) if x > 0.0]
    return pos[0] if pos else math.nan


def _residual(a, b, c1, c2, t):
    s = _positive_s(a, b, c1, c2, t)
    if not s > 0.0:
        return math.nan
    p2, p1, p0 = _eq2(a, b, c1, c2, s)
    return (p2 * t * t + p1 * t + p0) / (abs(p2) * t * t + abs(p1) * t + abs(p0))


def _boundary_candidates(a, b, c1, c2):
    cands = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
    for t in (0.0, 1.0):
        cands += [(t, s) for s in _unit(_quad_roots(*_eq1(a, b, c1, c2, t)))]
    for s in (0.0, 1.0):
        cands += [(t, s) for t in _unit(_quad_roots(*_eq2(a, b, c1, c2, s)))]
    return cands


def _interior_candidates(a, b, c1, c2):
    if c2 == 0.0:
        return []
    res = np.array([_residual(a, b, c1, c2, t) for t in T_GRID])
    out = []
    for i in range(len(T_GRID) - 1):
        r0, r1 = res[i], res[i + 1]
        if not (np.isfinite(r0) and np.isfinite(r1)):
            continue
        if r0 == 0.0:
            t = T_GRID[i]
        elif r0 * r1 < 0.0:
            t = brentq(lambda x: _residual(a, b, c1, c2, x), T_GRID[i], T_GRID[i + 1],
                       xtol=1e-300, rtol=4 * np.finfo(float).eps)
        else:
            continue
        s = _positive_s(a, b, c1, c2, t)
        if 0.0 < t <= 1.0 and 0.0 < s <= 1.0:
            out.append((t, s))
    return out


def _best(a, b, c1, c2, cands):
    vals = [log_g(a, b, c1, c2, tA, tB) for tA, tB in cands]
    i = int(np.argmax(vals))
    return 0.5 * float(vals[i]), cands[i]


def _general(a, b, c1, c2):
    inner = _interior_candidates(a, b, c1, c2)
    edge = _boundary_candidates(a, b, c1, c2)
    value, (tA, tB) = _best(a, b, c1, c2, edge + inner)
    interior = 0.0 < tA < 1.0 and 0.0 < tB < 1.0
    return value, GaussianSeedPair.from_t(tA, tB), Branch.GENERAL if interior else Branch.BOUNDARY


def quartic_coefficients(a, c1, c2):
    """``(a0, ..., a4)`` of the symmetric stationarity quartic in ``lambda``."""
    c1s, c2s = c1 * c1, c2 * c2
    return (-c2s,
            -a * (c1s * c2s + 3.0 * c2s - a * a * c1s),
            3.0 * a * a * (c1s - c2s),
            a * (c1s * c2s + 3.0 * c1s - a * a * c2s),
            c1s)


def quartic_positive_roots(a, c1, c2):
    """Admissible real roots ``lambda > 0`` of the symmetric quartic, polished."""
    coef = np.array(quartic_coefficients(a, c1, c2))
    poly = np.polynomial.Polynomial(coef)
    deriv = poly.deriv()
    out = []
    for z in poly.roots():
        if abs(z.imag) > 1e-7 * max(1.0, abs(z)):
            continue
        x = z.real
        for _ in range(4):
            d = deriv(x)
            if d == 0.0:
                break
            x -= poly(x) / d
        if x > 0.0:
            out.append(float(x))
    return out


def _quartic(a, c1, c2):
    cands = [(1.0 / lam, 1.0 / lam) for lam in quartic_positive_roots(a, c1, c2)]
    n_roots = len(cands)
    cands += [(1.0, 1.0), (0.0, 0.0)]
    vals = [log_g(a, a, c1, c2, t, t) for t, _ in cands]
    i = int(np.argmax(vals))
    t = cands[i][0]
    if t > 1.0:
        # lambda < 1 is the same seed rotated by pi/2
        seeds = GaussianSeedPair(0.5 * math.log(t), 0.5 * math.log(t), 0.0, 0.0)
    else:
        seeds = GaussianSeedPair.from_t(t, t)
    return 0.5 * float(vals[i]), seeds, Branch.QUARTIC if i < n_roots else Branch.BOUNDARY


def sts_branch(a, b, c, gap=None):
    """``(log g, Branch)`` of the squeezed-thermal closed form.

    ``gap`` overrides ``ab - c^2``; pure states pass exactly 1.
    """
    gap = ab_gap(a, b, c) if gap is None else gap
    if (a + b + 1.0) ** 2 >= a * b * gap:
        return math.log(a * b / gap), Branch.STS_HOM
    x = (a + 1.0) * (b + 1.0)
    return 2.0 * math.log(x / (x - c * c)), Branch.STS_HET


def numeric_classical_mi(sf, n_grid=101):
    """Grid plus L-BFGS-B maximization of ``ln g`` over ``[0, 1]^2``.

    Independent of all closed forms and stationarity equations; used as
    the cross-check oracle.
    """
    a, b, c1, c2 = sf.a, sf.b, sf.c1, sf.c2
    t = np.linspace(0.0, 1.0, n_grid)
    TA, TB = np.meshgrid(t, t, indexing="ij")
    v = log_g(a, b, c1, c2, TA, TB)
    i, j = np.unravel_index(np.argmax(v), v.shape)
    res = minimize(lambda x: -log_g(a, b, c1, c2, x[0], x[1]), [TA[i, j], TB[i, j]],
                   bounds=[(0.0, 1.0), (0.0, 1.0)], method="L-BFGS-B",
                   options={"ftol": 1e-15, "gtol": 1e-13, "maxiter": 500})
    best = max(float(-res.fun), float(v[i, j]))
    return 0.5 * best


def gaussian_classical_mi(sf, branch="auto", check=True, tol=TOL):
    """Classical mutual information under optimal bi-local Gaussian POVMs.

    Parameters
    ----------
    sf : StandardFormCM
    branch : {"auto", "general", "quartic"}
        ``auto`` dispatches on the state: product, ``c2 = 0``, squeezed
        thermal, symmetric, general. The other values force a route.
    check : bool
        Compare against :func:`numeric_classical_mi`.

    Returns
    -------
    OptResult
    """
    sf.check()
    a, b, c1, c2 = sf.a, sf.b, sf.c1, sf.c2
    if sf.is_product(tol):
        return OptResult(0.0, HOMODYNE, Branch.PRODUCT, 0.0)
    if branch == "general":
        value, seeds, br = _general(a, b, c1, c2)
    elif branch == "quartic":
        if not sf.is_symmetric(tol):
            raise ValueError("quartic route needs a = b")
        value, seeds, br = _quartic(a, c1, c2)
    elif branch != "auto":
        raise ValueError(f"unknown branch {branch!r}")
    elif abs(c2) <= tol:
        value, seeds, br = 0.5 * math.log(a * b / ab_gap(a, b, c1)), HOMODYNE, Branch.SINGLE
    elif sf.is_squeezed_thermal(tol):
        lg, br = sts_branch(a, b, c1, 1.0 if sf.is_pure(tol) else None)
        value, seeds = 0.5 * lg, HOMODYNE if br is Branch.STS_HOM else HETERODYNE
    elif sf.is_symmetric(tol):
        value, seeds, br = _quartic(a, c1, c2)
    else:
        value, seeds, br = _general(a, b, c1, c2)
    oracle = math.nan
    if check:
        oracle = numeric_classical_mi(sf)
        if abs(oracle - value) > DISAGREE_TOL:
            raise OptimizerDisagreement(
                f"{br.value} gives {value!r}, numeric maximization {oracle!r} for {sf}")
    return OptResult(max(value, 0.0), seeds, br, oracle)


def gaussian_amid(sf, branch="auto", check=True):
    """Gaussian AMID ``I_q - I_c^G`` (nats); the seeds are those of ``I_c^G``."""
    ic = gaussian_classical_mi(sf, branch, check)
    iq = quantum_mutual_information(sf)
    return OptResult(max(iq - ic.value, 0.0), ic.seeds, ic.branch, ic.oracle)


def sts_gamid_closed(a, nu_tilde):
    """Closed-form Gaussian AMID of symmetric squeezed thermal states.

    The state has ``b = a`` and ``c1 = -c2 = a - nu_tilde``.
    """
    _nu_tilde_range(a, nu_tilde)
    n = nu_tilde
    s = max(math.sqrt(n * (2 * a - n)), 1.0)
    # -ln[(s^2-1)/(a^2-1)] + 2a atanh(1/a) - 2s atanh(1/s), regrouped so the
    # pure line s = 1 is finite
    iq = float(xlogy(a + 1, a + 1) - xlogy(a - 1, a - 1)
               - xlogy(s + 1, s + 1) + xlogy(s - 1, s - 1))
    if 1 + a * (4 + a * (4 - 2 * a * n + n * n)) >= 0:
        ic = math.log(a / math.sqrt(a * a - (a - n) ** 2))
    else:
        ic = math.log((a + 1) ** 2 / ((a + 1) ** 2 - (a - n) ** 2))
    return iq - ic
