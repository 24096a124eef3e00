"""Two-mode Gaussian states: standard form, physicality, named families."""
from dataclasses import dataclass, field, asdict
from enum import Enum
import math

import numpy as np

from .errors import Degenerate, NonPhysical, OutOfRange
from .linalg import (TOL, ab_gap, blocks, det2, det4, is_standard_form, physical_tol,
                     rounding_scale, seralian, standard_form_invariants, symplectic_eigenvalues)


@dataclass(frozen=True)
class StandardFormCM:
    """Standard-form covariances ``(a, b, c1, c2)`` with ``c1 >= |c2|``.

    Displacements are always zero. Construction does not validate; use
    :func:`validate` or :meth:`check` for that.
    """

    a: float
    b: float
    c1: float
    c2: float

    @property
    def cm(self):
        a, b, c1, c2 = self.a, self.b, self.c1, self.c2
        return np.array([[a, 0.0, c1, 0.0],
                         [0.0, a, 0.0, c2],
                         [c1, 0.0, b, 0.0],
                         [0.0, c2, 0.0, b]])

    @property
    def det_gamma(self):
        return ab_gap(self.a, self.b, self.c1) * ab_gap(self.a, self.b, self.c2)

    def swapped(self):
        return StandardFormCM(self.b, self.a, self.c1, self.c2)

    def spectrum(self):
        return symplectic_eigenvalues(self.cm, self.tol)

    def is_product(self, tol=TOL):
        return abs(self.c1) <= tol and abs(self.c2) <= tol

    def is_symmetric(self, tol=TOL):
        return abs(self.a - self.b) <= tol * max(1.0, self.a)

    def is_squeezed_thermal(self, tol=TOL):
        return abs(abs(self.c2) - self.c1) <= tol * max(1.0, self.c1)

    def is_pure(self, tol=TOL):
        """Two-mode squeezed vacuum up to ``tol`` plus the rounding of ``det gamma``."""
        return (self.is_symmetric(tol) and self.c2 < 0 and self.is_squeezed_thermal(tol)
                and abs(self.det_gamma - 1.0) <= tol + 4.0 * rounding_scale(self.cm))

    @property
    def tol(self):
        """Physicality slack appropriate for the magnitude of this state."""
        return physical_tol(self.cm)

    def check(self, tol=TOL):
        rep = validate(self.cm, tol)
        if not rep.is_positive:
            raise NonPhysical("; ".join(rep.messages))
        if self.c1 < abs(self.c2) - tol * max(1.0, self.c1):
            raise NonPhysical(f"non-canonical ordering c1={self.c1} < |c2|={abs(self.c2)}")
        return self

    def to_dict(self):
        return asdict(self)


@dataclass
class PhysicalityReport:
    is_positive: bool
    nu_minus: float
    messages: list = field(default_factory=list)


def validate(cm, tol=TOL):
    """Check ``gamma > 0`` and ``gamma + i Omega >= 0`` without raising."""
    cm = np.asarray(cm, dtype=float)
    msgs = []
    if cm.shape != (4, 4):
        return PhysicalityReport(False, math.nan, [f"expected 4x4 matrix, got {cm.shape}"])
    if not np.all(np.isfinite(cm)):
        return PhysicalityReport(False, math.nan, ["non-finite entries"])
    if not np.allclose(cm, cm.T, rtol=0, atol=tol * max(1.0, np.abs(cm).max())):
        msgs.append("matrix is not symmetric")
    if is_standard_form(cm):
        a, b, c1, c2 = cm[0, 0], cm[2, 2], cm[0, 2], cm[1, 3]
        positive_definite = a > 0 and b > 0 and ab_gap(a, b, c1) > 0 and ab_gap(a, b, c2) > 0
    else:
        # Sylvester: leading principal minors
        minors = [cm[0, 0], det2(cm[:2, :2]), np.linalg.det(cm[:3, :3]), det4(cm)]
        positive_definite = all(m > 0 for m in minors)
    if not positive_definite:
        msgs.append("matrix is not positive definite")
    eff = physical_tol(cm, tol)
    nu_minus = math.nan
    try:
        nu_minus = symplectic_eigenvalues(cm, eff).nu_minus
    except NonPhysical as exc:
        msgs.append(str(exc))
    # nu_- >= 1  <=>  Delta >= 2 and (nu_+^2 - 1)(nu_-^2 - 1) = det(gamma) - Delta + 1 >= 0;
    # no square roots, so borderline pure states are not pushed below 1 by rounding
    if is_standard_form(cm):
        delta, dg, _ = standard_form_invariants(cm[0, 0], cm[2, 2], cm[0, 2], cm[1, 3])
    else:
        delta, dg = seralian(cm)
    slack = 2.0 * eff
    uncertainty = delta >= 2.0 - slack and dg - delta + 1.0 >= -slack * max(1.0, abs(delta))
    if not uncertainty:
        msgs.append(f"uncertainty relation violated: nu_minus={nu_minus:.12g} < 1")
    ok = positive_definite and uncertainty and not msgs
    return PhysicalityReport(ok, nu_minus, msgs)


def to_standard_form(cm, tol=TOL):
    """Reduce an arbitrary physical two-mode CM to standard form.

    The covariances follow from the local invariants: ``a = sqrt(det A)``,
    ``b = sqrt(det B)``, ``c1 c2 = det C`` and
    ``det gamma = (ab - c1^2)(ab - c2^2)``.
    """
    rep = validate(cm, tol)
    if not rep.is_positive:
        raise NonPhysical("; ".join(rep.messages))
    A, B, C = blocks(cm)
    a = math.sqrt(det2(A))
    b = math.sqrt(det2(B))
    dc = det2(C)
    dg = det4(cm)
    ab = a * b
    s = (ab * ab + dc * dc - dg) / ab          # c1^2 + c2^2
    p = dc * dc                                # c1^2 c2^2
    scale = max(1.0, s * s)
    disc = s * s - 4.0 * p
    if disc < -tol * scale or s < -tol * max(1.0, abs(s)):
        raise Degenerate(f"no real invariants-compatible covariances (s={s}, disc={disc})")
    root = math.sqrt(max(disc, 0.0))
    x = max(0.5 * (s + root), 0.0)
    y = p / x if x > 0 else 0.0
    c1 = math.sqrt(x)
    c2 = math.copysign(math.sqrt(max(y, 0.0)), dc) if dc != 0 else 0.0
    return StandardFormCM(a, b, c1, c2)


class Family(str, Enum):
    PRODUCT = "product"
    PURE_TMSV = "pure-tmsv"
    SQUEEZED_THERMAL = "squeezed-thermal"
    CMIVETTE = "cmivette"
    STATISTRANI = "statistrani"
    GMEMS = "gmems"
    GLEMS = "glems"


def _need(cond, msg):
    if not cond:
        raise OutOfRange(msg)


def _nu_tilde_range(a, nu):
    _need(nu > 0, f"nu_tilde must be positive, got {nu}")
    lo = max(nu, (1.0 + nu * nu) / (2.0 * nu))
    _need(a >= lo - TOL, f"a={a} below admissible minimum {lo} for nu_tilde={nu}")


def pure_tmsv(r):
    _need(r >= 0, f"squeezing must be nonnegative, got {r}")
    return StandardFormCM(math.cosh(2 * r), math.cosh(2 * r), math.sinh(2 * r), -math.sinh(2 * r))


def product(a, b):
    _need(a >= 1 and b >= 1, "local covariances must be >= 1")
    return StandardFormCM(a, b, 0.0, 0.0)


def squeezed_thermal(a, b, c, entangling=True):
    """``c1 = c, c2 = -c`` (``entangling``) or ``c2 = +c``."""
    _need(c >= 0, "c must be nonnegative")
    sf = StandardFormCM(a, b, c, -c if entangling else c)
    if not validate(sf.cm).is_positive:
        raise OutOfRange(f"squeezed thermal state (a={a}, b={b}, c={c}) is unphysical")
    return sf


def cmivette(s, r):
    a = math.cosh(2 * s)
    b = math.cosh(r) ** 2 * math.cosh(2 * s) + math.sinh(r) ** 2
    c = math.cosh(r) * math.sinh(2 * s)
    return StandardFormCM(a, b, c, -c)


def statistrani(a):
    _need(a >= 1, f"a must be >= 1, got {a}")
    return StandardFormCM(a, a, (a * a - 1.0 - math.log(a)) / a, 0.0)


def gmems(a, nu_tilde):
    _nu_tilde_range(a, nu_tilde)
    c = a - nu_tilde
    return StandardFormCM(a, a, c, -c)


def glems(a, nu_tilde):
    _nu_tilde_range(a, nu_tilde)
    q = 1.0 + nu_tilde * nu_tilde
    c1 = a - q / (2.0 * a)
    c2 = a - 2.0 * a / q
    if abs(c2) > c1:
        # a pi/2 rotation on both modes exchanges the two quadratures
        c1, c2 = abs(c2), math.copysign(c1, c2)
    return StandardFormCM(a, a, c1, c2)


_BUILDERS = {
    Family.PRODUCT: (product, ("a", "b")),
    Family.PURE_TMSV: (pure_tmsv, ("r",)),
    Family.SQUEEZED_THERMAL: (squeezed_thermal, ("a", "b", "c")),
    Family.CMIVETTE: (cmivette, ("s", "r")),
    Family.STATISTRANI: (statistrani, ("a",)),
    Family.GMEMS: (gmems, ("a", "nu_tilde")),
    Family.GLEMS: (glems, ("a", "nu_tilde")),
}


def family_params(family):
    return _BUILDERS[Family(family)][1]


def make_family(family, **params):
    """Build a named state family and check that it is physical."""
    builder, names = _BUILDERS[Family(family)]
    missing = [n for n in names if n not in params]
    if missing:
        raise OutOfRange(f"family {Family(family).value} needs parameters {missing}")
    extra = set(params) - set(names) - {"entangling"}
    if extra:
        raise OutOfRange(f"unknown parameters {sorted(extra)} for {Family(family).value}")
    sf = builder(**params)
    rep = validate(sf.cm)
    if not rep.is_positive:
        raise OutOfRange(f"{Family(family).value}{params} is unphysical: {rep.messages}")
    return sf


def marginal_flags(sf, tol=TOL):
    """Names of vacuum (``a == 1`` / ``b == 1``) marginals."""
    return [n for n, v in (("A", sf.a), ("B", sf.b)) if abs(v - 1.0) <= tol]


def pt_nu_minus(sf):
    """Smallest symplectic eigenvalue of the partial transpose; < 1 iff entangled."""
    return StandardFormCM(sf.a, sf.b, sf.c1, -sf.c2).spectrum().nu_minus
