"""Von Neumann entropy of Gaussian states and quantum mutual information."""
import math

import numpy as np

from .errors import DomainError, NonPhysical
from .linalg import (TOL, SymplecticSpectrum, blocks, det2, physical_tol, rounding_scale,
                     symplectic_eigenvalues)

__all__ = ["SymplecticSpectrum", "entropy_F", "quantum_mutual_information", "gaussian_entropy",
           "spectrum_entropy"]

PURE_EPS = 1e-12


def entropy_F(x, tol=TOL, pure_eps=PURE_EPS):
    """Entropy (nats) of a single-mode thermal state with symplectic eigenvalue ``x``.

    ``F(x) = (x+1)/2 ln((x+1)/2) - (x-1)/2 ln((x-1)/2)``. Values in
    ``[1 - tol, 1 + pure_eps]`` are treated as pure.
    """
    x = float(x)
    if not x >= 1.0 - tol:
        raise DomainError(f"symplectic eigenvalue {x!r} < 1")
    if x - 1.0 <= pure_eps:
        return 0.0
    p, m = 0.5 * (x + 1.0), 0.5 * (x - 1.0)
    # p ln p - m ln m with p = m + 1, free of cancellation for large x
    return math.log(p) + m * math.log1p(1.0 / m)


def spectrum_entropy(spectrum, cm):
    """``F(nu_+) + F(nu_-)``; eigenvalues within rounding of 1 count as pure."""
    tol = physical_tol(cm)
    eps = max(PURE_EPS, rounding_scale(cm))
    return entropy_F(spectrum.nu_plus, tol, eps) + entropy_F(spectrum.nu_minus, tol, eps)


def gaussian_entropy(spectrum):
    return sum(entropy_F(nu) for nu in spectrum)


def quantum_mutual_information(state):
    """Quantum mutual information in nats.

    ``state`` may be a :class:`~gaussdisturb.states.StandardFormCM` or any
    4x4 covariance matrix; only local symplectic invariants enter.
    """
    cm = state.cm if hasattr(state, "cm") else np.asarray(state, dtype=float)
    A, B, _ = blocks(cm)
    tol = physical_tol(cm)
    spec = symplectic_eigenvalues(cm, tol)
    if spec.nu_minus < 1.0 - tol:
        raise NonPhysical(f"nu_minus = {spec.nu_minus!r} violates the uncertainty relation")
    val = (entropy_F(math.sqrt(det2(A)), tol) + entropy_F(math.sqrt(det2(B)), tol)
           - spectrum_entropy(spec, cm))
    return max(val, 0.0)
