"""Closed-form linear algebra for 2x2 and 4x4 real matrices.

Everything here works on plain ``numpy`` arrays; no general eigen-solver is
used, so results are exact up to floating point rounding.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import NonPhysical, Singular

TOL = 1e-9

J = np.array([[0.0, 1.0], [-1.0, 0.0]])
OMEGA = np.block([[J, np.zeros((2, 2))], [np.zeros((2, 2)), J]])


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Global symplectic eigenvalues of a two-mode covariance matrix."""

    nu_plus: float
    nu_minus: float

    def __iter__(self):
        yield self.nu_plus
        yield self.nu_minus


def det2(m):
    m = np.asarray(m, dtype=float)
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def inv2(m, tol=1e-14):
    m = np.asarray(m, dtype=float)
    d = det2(m)
    if abs(d) <= tol:
        raise Singular(f"2x2 determinant {d!r} below {tol}")
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) / d


def det4(m):
    """Laplace expansion of a 4x4 determinant over complementary 2x2 minors."""
    m = np.asarray(m, dtype=float)

    def minor(r0, r1, c0, c1):
        return m[r0, c0] * m[r1, c1] - m[r0, c1] * m[r1, c0]

    # rows (0,1) against rows (2,3)
    return (minor(0, 1, 0, 1) * minor(2, 3, 2, 3)
            - minor(0, 1, 0, 2) * minor(2, 3, 1, 3)
            + minor(0, 1, 0, 3) * minor(2, 3, 1, 2)
            + minor(0, 1, 1, 2) * minor(2, 3, 0, 3)
            - minor(0, 1, 1, 3) * minor(2, 3, 0, 2)
            + minor(0, 1, 2, 3) * minor(2, 3, 0, 1))


def matmul(*ms):
    out = np.asarray(ms[0], dtype=float)
    for m in ms[1:]:
        out = out @ np.asarray(m, dtype=float)
    return out


def blocks(cm):
    """Split a 4x4 covariance matrix into its ``A, B, C`` blocks."""
    cm = np.asarray(cm, dtype=float)
    return cm[:2, :2], cm[2:, 2:], cm[:2, 2:]


def swap_modes(cm):
    cm = np.asarray(cm, dtype=float)
    p = [2, 3, 0, 1]
    return cm[np.ix_(p, p)]


def seralian(cm):
    """Return ``(Delta, det(gamma))`` for a two-mode covariance matrix."""
    A, B, C = blocks(cm)
    return det2(A) + det2(B) + 2.0 * det2(C), det4(cm)


def rounding_scale(cm):
    """Rounding of ``nu^2`` and ``det gamma`` for entries of size ``max|cm|``.

    Boundary states (``nu_- = 1`` exactly) with large covariances cannot be
    stored to better than about ``eps * a * b`` in ``nu_-^2``.
    """
    top = float(np.abs(np.asarray(cm, dtype=float)).max())
    return 16.0 * np.finfo(float).eps * max(1.0, top * top)


def physical_tol(cm, tol=TOL):
    """Physicality slack: ``tol`` plus :func:`rounding_scale`."""
    return tol + rounding_scale(cm)


def is_standard_form(cm):
    cm = np.asarray(cm, dtype=float)
    return (cm[0, 1] == 0 and cm[0, 3] == 0 and cm[1, 2] == 0 and cm[2, 3] == 0
            and cm[0, 0] == cm[1, 1] and cm[2, 2] == cm[3, 3])


def ab_gap(a, b, c):
    """``ab - c^2`` as ``(sqrt(ab) - |c|)(sqrt(ab) + |c|)``, accurate when ``|c| ~ sqrt(ab)``."""
    if a * b < 0:
        return a * b - c * c
    s = math.sqrt(a * b)
    c = abs(c)
    return (s - c) * (s + c)


def standard_form_invariants(a, b, c1, c2):
    """``(Delta, det gamma, Delta^2 - 4 det gamma)`` without cancellation."""
    delta = a * a + b * b + 2.0 * c1 * c2
    dg = ab_gap(a, b, c1) * ab_gap(a, b, c2)
    disc = (a * a - b * b) ** 2 + 4.0 * (a * c1 + b * c2) * (a * c2 + b * c1)
    return delta, dg, disc


def symplectic_eigenvalues(cm, tol=TOL):
    r"""Global symplectic eigenvalues :math:`\nu_+ \ge \nu_-` of ``cm``.

    Uses :math:`2\nu_\pm^2 = \Delta \pm \sqrt{\Delta^2 - 4\det\gamma}`; the
    small root is taken from the product :math:`\nu_+^2\nu_-^2 = \det\gamma`
    to avoid cancellation. For matrices already in standard form the
    discriminant is expanded so that it vanishes exactly on pure and
    symmetric squeezed thermal states.
    """
    cm = np.asarray(cm, dtype=float)
    if is_standard_form(cm):
        delta, dg, disc = standard_form_invariants(cm[0, 0], cm[2, 2], cm[0, 2], cm[1, 3])
    else:
        delta, dg = seralian(cm)
        disc = delta * delta - 4.0 * dg
    if not dg > 0:
        raise NonPhysical(f"det(gamma) = {dg!r} is not positive")
    # discriminant slack scales with delta^2, it vanishes identically on
    # the degenerate (nu_+ = nu_-) manifold
    if disc < -tol * max(1.0, delta * delta):
        raise NonPhysical(f"negative discriminant {disc!r}")
    root = np.sqrt(max(disc, 0.0))
    nu_p2 = 0.5 * (delta + root)
    if not nu_p2 > 0:
        raise NonPhysical(f"Delta = {delta!r} gives no positive symplectic eigenvalue")
    nu_m2 = dg / nu_p2
    return SymplecticSpectrum(float(np.sqrt(nu_p2)), float(np.sqrt(nu_m2)))
