"""Gaussian entanglement of formation of symmetric squeezed thermal states
and the bounds tying it to the Gaussian AMID."""
from dataclasses import dataclass
import math

from scipy.special import xlogy

from .errors import OutOfRange
from .linalg import TOL
from .states import pt_nu_minus

INEQ_TOL = 1e-8
# below this nu_tilde the upper bound switches branch, E_f^G ~ 0.441 there
NU_SPLIT = 4.0 / math.e - 1.0
SANDWICH_GAP = math.log(4.0) - 1.0


@dataclass(frozen=True)
class EofParams:
    nu_tilde: float

    def __post_init__(self):
        if not self.nu_tilde > 0:
            raise OutOfRange(f"nu_tilde must be > 0, got {self.nu_tilde}")

    @property
    def entangled(self):
        return self.nu_tilde < 1.0

    @classmethod
    def from_state(cls, sf, tol=TOL):
        """``nu_tilde`` of a symmetric state: the smallest symplectic eigenvalue
        of its partial transpose, ``a - c1`` when ``c2 = -c1``."""
        if not sf.is_symmetric(tol):
            raise OutOfRange(f"{sf} is not symmetric")
        if sf.is_squeezed_thermal(tol) and sf.c2 <= 0:
            return cls(sf.a - sf.c1)
        return cls(pt_nu_minus(sf))


def eof_symmetric(nu_tilde):
    """Gaussian EoF (nats) as a function of ``nu_tilde``; zero for ``nu_tilde >= 1``."""
    n = EofParams(nu_tilde).nu_tilde
    if n >= 1.0:
        return 0.0
    p, m = (1.0 + n) ** 2, (1.0 - n) ** 2
    q = 4.0 * n
    return float((xlogy(p, p / q) - xlogy(m, m / q)) / q)


def _bound_branches(n):
    return (1.0 + 2.0 * math.log1p(n) - math.log(4.0 * n),
            math.log1p(n) - math.log(n))


def gamid_upper_bound(nu_tilde):
    """Upper bound on the Gaussian AMID at fixed ``nu_tilde`` in ``(0, 1]``.

    The piecewise definition coincides with the larger of its two branches.
    """
    if not 0.0 < nu_tilde <= 1.0:
        raise OutOfRange(f"nu_tilde must lie in (0, 1], got {nu_tilde}")
    first, second = _bound_branches(nu_tilde)
    return first if nu_tilde >= NU_SPLIT else second


@dataclass(frozen=True)
class SandwichReport:
    eof: float
    gamid: float
    lower_ok: bool
    upper_applies: bool
    upper_ok: bool

    @property
    def ok(self):
        return self.lower_ok and (self.upper_ok or not self.upper_applies)


def check_sandwich(sf, gamid=None, tol=INEQ_TOL):
    """Check ``E_f^G <= A^G`` and, once ``E_f^G >= 0.441``, ``A^G <= E_f^G + ln4 - 1``.

    ``sf`` must be symmetric; the EoF formula is exact there.
    """
    from .povm import gaussian_amid
    ef = eof_symmetric(EofParams.from_state(sf).nu_tilde)
    ag = gaussian_amid(sf).value if gamid is None else gamid
    applies = ef >= eof_symmetric(NU_SPLIT)
    return SandwichReport(ef, ag, ef <= ag + tol, applies, ag <= ef + SANDWICH_GAP + tol)
