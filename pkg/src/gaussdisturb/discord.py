"""One-way and two-way Gaussian discord.

Measuring mode B with a pure seed of covariance ``diag(t, 1/t)`` leaves mode
A with conditional determinant

    phi(t) = (a - c1^2/(b + t)) (a - c2^2/(b + 1/t))
           = (alpha + a t)(a + beta t) / ((b + t)(1 + b t)),

``alpha = ab - c1^2``, ``beta = ab - c2^2``. Rotated seeds are never better
for a standard-form state, so the minimum of ``phi`` over ``t`` in
``(0, inf)`` is the optimum. As a ratio of quadratics, ``phi' = 0`` is itself
a quadratic, so the stationary points are obtained exactly.
"""
import math

import numpy as np
from scipy.optimize import minimize_scalar

from .entropy import entropy_F, spectrum_entropy
from .errors import OptimizerDisagreement
from .linalg import TOL
from .povm import Branch, GaussianSeed, OptResult, _quad_roots
from .states import _nu_tilde_range

DISAGREE_TOL = 1e-6


def conditional_det(a, b, c1, c2, t):
    """``phi(t)``, with the homodyne limits at ``t = 0`` and ``t = inf``."""
    if t == 0.0:
        return a * (a - c1 * c1 / b)
    if math.isinf(t):
        return a * (a - c2 * c2 / b)
    return (a - c1 * c1 / (b + t)) * (a - c2 * c2 / (b + 1.0 / t))


def _stationary_t(a, b, c1, c2):
    alpha, beta = a * b - c1 * c1, a * b - c2 * c2
    n2, n1, n0 = a * beta, a * a + alpha * beta, alpha * a
    d2, d1, d0 = b, 1.0 + b * b, b
    return [t for t in _quad_roots(n2 * d1 - n1 * d2, 2.0 * (n2 * d0 - n0 * d2),
                                   n1 * d0 - n0 * d1) if t > 0.0]


def _seed_from_t(t):
    # diag(t, 1/t): t < 1 squeezes position (theta = pi/2), t > 1 momentum
    if t == 0.0:
        return GaussianSeed(math.inf, 0.5 * math.pi)
    if math.isinf(t):
        return GaussianSeed(math.inf, 0.0)
    if t <= 1.0:
        return GaussianSeed(0.0 - 0.5 * math.log(t), 0.5 * math.pi)
    return GaussianSeed(0.5 * math.log(t), 0.0)


def min_conditional_det(a, b, c1, c2):
    """``(phi_min, t_opt, interior)`` from stationary points and both limits."""
    inner = _stationary_t(a, b, c1, c2)
    cands = inner + [0.0, math.inf]
    vals = [conditional_det(a, b, c1, c2, t) for t in cands]
    i = int(np.argmin(vals))
    return vals[i], cands[i], i < len(inner)


def golden_min_conditional_det(a, b, c1, c2, n_grid=201):
    """Oracle: grid plus golden-section/Brent refinement in ``u = tanh r``.

    ``t = (1 + u)/(1 - u)`` maps ``u`` in ``[-1, 1]`` onto ``[0, inf]``.
    """
    def phi(u):
        if u <= -1.0:
            return conditional_det(a, b, c1, c2, 0.0)
        if u >= 1.0:
            return conditional_det(a, b, c1, c2, math.inf)
        return conditional_det(a, b, c1, c2, (1.0 + u) / (1.0 - u))

    u = np.linspace(-1.0, 1.0, n_grid)
    v = np.array([phi(x) for x in u])
    i = int(np.argmin(v))
    lo, hi = u[max(i - 1, 0)], u[min(i + 1, n_grid - 1)]
    res = minimize_scalar(phi, bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-13, "maxiter": 500})
    return min(float(v[i]), float(res.fun))


def gaussian_discord(sf, direction="left", check=True, tol=TOL):
    """Gaussian discord of ``sf`` (nats).

    Parameters
    ----------
    direction : {"left", "right"}
        ``left`` measures mode B, ``right`` measures mode A.
    check : bool
        Compare the exact stationary-point minimum with a golden-section
        search, and with the closed form on symmetric squeezed thermal states.

    Returns
    -------
    OptResult
        ``seeds`` holds the single optimal seed of the measured mode.
    """
    if direction not in ("left", "right"):
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    sf.check()
    if sf.is_product(tol):
        return OptResult(0.0, GaussianSeed(0.0), Branch.PRODUCT, 0.0)
    if direction == "right":
        sf = sf.swapped()
    a, b, c1, c2 = sf.a, sf.b, sf.c1, sf.c2
    phi, t, interior = min_conditional_det(a, b, c1, c2)
    spec = sf.spectrum()
    base = entropy_F(b, sf.tol) - spectrum_entropy(spec, sf.cm)
    value = base + entropy_F(math.sqrt(max(phi, 1.0)))
    oracle = math.nan
    if check:
        oracle = base + entropy_F(math.sqrt(max(golden_min_conditional_det(a, b, c1, c2), 1.0)))
        if abs(oracle - value) > DISAGREE_TOL:
            raise OptimizerDisagreement(f"discord {value!r} vs golden-section {oracle!r} for {sf}")
        if sf.is_symmetric(tol) and c2 < 0 and sf.is_squeezed_thermal(tol):
            nt = a - c1
            if nt * (2 * a - nt) > 1.0 + 1e-6:
                closed = sts_discord_closed(a, nt)
                if abs(closed - value) > DISAGREE_TOL:
                    raise OptimizerDisagreement(f"discord {value!r} vs closed form {closed!r}")
    return OptResult(max(value, 0.0), _seed_from_t(t),
                     Branch.GENERAL if interior else Branch.BOUNDARY, oracle)


def two_way_discord(sf, check=True):
    """``max(D_left, D_right)`` (nats)."""
    return max(gaussian_discord(sf, "left", check).value,
               gaussian_discord(sf, "right", check).value)


def sts_discord_closed(a, nu_tilde):
    """Closed-form discord of the symmetric state ``b = a``, ``c1 = -c2 = a - nu_tilde``.

    Singular on the pure line ``nu_tilde (2a - nu_tilde) = 1``; the pure-state
    value there is the entropy of entanglement.
    """
    _nu_tilde_range(a, nu_tilde)
    n = nu_tilde
    s = math.sqrt(n * (2 * a - n))
    if s <= 1.0:
        return entropy_F(a)
    return 1.0 / (2.0 * (1.0 + a)) * (
        (4 * a * (n + 1) - 2 * n * n) * math.atanh((a + 1) / (2 * a * n + a - n * n))
        - 4 * (a + 1) * s * math.atanh(1 / s)
        + a * a * math.log((a + 1) / (a - 1))
        - math.log((a + 1) * (2 * a * n - n * n - 1) / ((a - 1) * (n + 1) * (2 * a - n + 1))))
