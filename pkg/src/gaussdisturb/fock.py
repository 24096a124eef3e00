"""Joint photon-number statistics of two-mode Gaussian states and the MID.

Two routes produce the truncated distribution ``p(m, n)``:

``direct``
    Finite sums obtained by differentiating the generating function
    ``G = F1 F2``, ``F_j = (1 + B1 l1 + B2 l2 + K_j l1 l2)^(-1/2)``. The
    squeezed-thermal case uses the single-sum simplification. Sums are
    accumulated in log-magnitude/sign form; entries that lose more than six
    digits to cancellation are recomputed with ``mpmath``.

``recursive``
    Taylor coefficients of ``G(1 - z1, 1 - z2) = Pi(z1, z2)^(-1/2)`` obtained
    row by row from the linear recurrence ``2 Pi d_z1 f + f d_z1 Pi = 0``.
    Each row is a stable IIR filter, so the whole matrix costs ``O(N^2)``
    and rows can be streamed for very large cutoffs.
"""
from dataclasses import dataclass
import math
import warnings

import mpmath
import numpy as np
from scipy.signal import convolve, lfilter
from scipy.special import entr, gammaln, xlogy

from .entropy import entropy_F, spectrum_entropy
from .errors import ConvergenceError, DegenerateMarginal, PrecisionError
from .linalg import TOL
from .states import StandardFormCM, marginal_flags, to_standard_form

NEG_CLAMP = 1e-12
NEG_FATAL = 1e-8
CANCEL_LIMIT = 1e6
START_CUTOFF = 16
DEFAULT_CAP = 512
DEFAULT_TAIL = 1e-10


@dataclass(frozen=True)
class PhotonGenParams:
    """Moments entering the normally ordered characteristic function."""

    B1: float
    B2: float
    D: float
    Dbar: float
    K1: float
    K2: float

    @classmethod
    def from_state(cls, sf):
        a, b, c1, c2 = sf.a, sf.b, sf.c1, sf.c2
        return cls(B1=0.5 * (a - 1.0), B2=0.5 * (b - 1.0),
                   D=0.25 * (c1 - c2), Dbar=-0.25 * (c1 + c2),
                   K1=0.25 * ((a - 1.0) * (b - 1.0) - c1 * c1),
                   K2=0.25 * ((a - 1.0) * (b - 1.0) - c2 * c2))

    def factor(self, j):
        """``(S_j, B1 + K_j, B2 + K_j, K_j)`` for factor ``j`` in {1, 2}."""
        K = self.K1 if j == 1 else self.K2
        return 1.0 + self.B1 + self.B2 + K, self.B1 + K, self.B2 + K, K


@dataclass
class JointPhotonDistribution:
    """Truncated joint photon-number law, rows indexed by ``m`` (mode A)."""

    p: np.ndarray
    cutoff: int
    tail_mass: float
    method: str = "recursive"
    n_recomputed: int = 0

    def marginal_a(self):
        return self.p.sum(axis=1)

    def marginal_b(self):
        return self.p.sum(axis=0)

    def tail_entropy_bound(self, n_cap=None):
        t = max(self.tail_mass, 0.0)
        if t == 0.0:
            return 0.0
        n_cap = self.cutoff if n_cap is None else n_cap
        return t * (math.log(1.0 / t) + n_cap)

    def to_csv(self, fh, fmt="%.17g"):
        np.savetxt(fh, self.p, delimiter=",", fmt=fmt)


def thermal_law(mean, n):
    """Bose-Einstein probabilities ``mean^k / (1 + mean)^(k+1)`` for ``k < n``."""
    k = np.arange(n)
    if mean == 0:
        return (k == 0).astype(float)
    return np.exp(k * math.log(mean) - (k + 1) * math.log1p(mean))


def tail_bound(sf, cutoff):
    """Probability that either photon number exceeds ``cutoff``."""
    total = 0.0
    for x in (sf.a, sf.b):
        ratio = (x - 1.0) / (x + 1.0)
        total += ratio ** (cutoff + 1) if ratio > 0 else 0.0
    return total


def choose_cutoff(sf, tail_tol, max_cutoff=DEFAULT_CAP, start=START_CUTOFF):
    n = start
    while tail_bound(sf, n) > tail_tol:
        if n >= max_cutoff:
            raise ConvergenceError(
                f"cutoff would exceed {max_cutoff} before tail mass <= {tail_tol}")
        n = min(2 * n, max_cutoff)
    return n


# --------------------------------------------------------------------------
# direct summation

def _signed_sum(terms, shape):
    """Sum ``sign * exp(logabs)`` over an iterable of term generators.

    ``terms`` is a callable returning a list of ``(logabs, sign)`` pairs,
    called twice (max pass, accumulation pass). Returns ``(value, abs_sum)``.
    """
    top = np.full(shape, -np.inf)
    for la, _ in terms():
        np.maximum(top, la, out=top)
    safe_top = np.where(np.isfinite(top), top, 0.0)
    s = np.zeros(shape)
    comp = np.zeros(shape)
    mag = np.zeros(shape)
    for la, sg in terms():
        x = sg * np.exp(la - safe_top)
        t = s + x
        comp += np.where(np.abs(s) >= np.abs(x), (s - t) + x, (x - t) + s)
        s = t
        mag += np.abs(x)
    scale = np.exp(safe_top)
    scale[~np.isfinite(top)] = 0.0
    return (s + comp) * scale, mag * scale


def _signpow(x, k):
    if x >= 0:
        return np.ones_like(k, dtype=float)
    return np.where(k % 2 == 0, 1.0, -1.0)


def _sts_direct(gp, cutoff):
    """Squeezed-thermal closed sum (single index ``j``)."""
    S, b1, b2, K = gp.factor(1)
    x = -K * S
    lg = gammaln(np.arange(2 * cutoff + 2, dtype=float) + 1.0)
    m = np.arange(cutoff + 1)[:, None]
    n = np.arange(cutoff + 1)[None, :]
    shape = (cutoff + 1, cutoff + 1)
    logS = math.log(S)

    def terms():
        for j in range(cutoff + 1):
            mask = (m >= j) & (n >= j)
            mj = np.where(mask, m - j, 0)
            nj = np.where(mask, n - j, 0)
            la = (lg[mj + nj + j] - lg[j] - lg[mj] - lg[nj]
                  + xlogy(mj, abs(b1)) + xlogy(nj, abs(b2)) + xlogy(j, abs(x))
                  - (m + n + 1) * logS)
            la = np.where(mask, la, -np.inf)
            sg = _signpow(b1, mj) * _signpow(b2, nj) * (1.0 if x >= 0 or j % 2 == 0 else -1.0)
            yield la, sg

    return _signed_sum(lambda: terms(), shape)


def _q_table(gp, j, cutoff):
    """``Q^(j)(alpha, beta) / (alpha! beta!)`` as ``(value, abs_sum)``."""
    S, b1, b2, K = gp.factor(j)
    x = -4.0 * K * S
    lg = gammaln(np.arange(4 * cutoff + 4, dtype=float) + 1.0)
    al = np.arange(cutoff + 1)[:, None]
    be = np.arange(cutoff + 1)[None, :]
    shape = (cutoff + 1, cutoff + 1)
    logS = math.log(S)

    def terms():
        for l in range(cutoff + 1):
            mask = (al >= l) & (be >= l)
            aj = np.where(mask, al - l, 0)
            bj = np.where(mask, be - l, 0)
            k = aj + bj + l
            la = (lg[2 * k] - lg[k] - lg[l] - lg[aj] - lg[bj]
                  + xlogy(aj, abs(b1)) + xlogy(bj, abs(b2)) + xlogy(l, abs(x))
                  - (aj + bj + 2 * l) * math.log(4.0) - (aj + bj + 2 * l + 0.5) * logS)
            la = np.where(mask, la, -np.inf)
            sg = _signpow(b1, aj) * _signpow(b2, bj) * (1.0 if x >= 0 or l % 2 == 0 else -1.0)
            yield la, sg

    return _signed_sum(lambda: terms(), shape)


def _truncated_convolve(x, y):
    """``sum_{i<=m, j<=n} x[i, j] y[m-i, n-j]`` on the square window of ``x``."""
    n = x.shape[0]
    out = np.zeros_like(x)
    for i in range(n):
        for j in range(n):
            out[i:, j:] += x[i, j] * y[:n - i, :n - j]
    return out


def _general_direct(gp, cutoff):
    q1, a1 = _q_table(gp, 1, cutoff)
    q2, a2 = _q_table(gp, 2, cutoff)
    return _truncated_convolve(q1, q2), _truncated_convolve(a1, a2)


def _mp_sts_entry(gp, m, n, dps):
    S, b1, b2, K = gp.factor(1)
    with mpmath.workdps(dps):
        S, b1, b2, x = mpmath.mpf(S), mpmath.mpf(b1), mpmath.mpf(b2), -mpmath.mpf(K) * mpmath.mpf(S)
        total = mpmath.mpf(0)
        for j in range(min(m, n) + 1):
            coef = math.factorial(m + n - j) // (math.factorial(j) * math.factorial(m - j)
                                                  * math.factorial(n - j))
            total += coef * b1 ** (m - j) * b2 ** (n - j) * x ** j
        return float(total / S ** (m + n + 1))


def _mp_q_tables(gp, top_m, top_n, dps):
    """Both ``Q^(j)`` tables in ``mpmath`` at ``dps`` digits."""
    tables = []
    top = top_m + top_n
    with mpmath.workdps(dps):
        for j in (1, 2):
            S, b1, b2, K = (mpmath.mpf(v) for v in gp.factor(j))
            x = -4 * K * S
            fac = [mpmath.factorial(k) for k in range(2 * top + 1)]
            # term = (2k)!/k! * b1^i/i! * b2^j/j! * x^l/l!,  k = i + j + l
            A = [b1 ** i / fac[i] for i in range(top_m + 1)]
            B = [b2 ** i / fac[i] for i in range(top_n + 1)]
            X = [x ** l / fac[l] for l in range(min(top_m, top_n) + 1)]
            C = [fac[2 * k] / fac[k] for k in range(top + 1)]
            den = [1 / ((4 * S) ** k * mpmath.sqrt(S)) for k in range(top + 1)]
            t = [[None] * (top_n + 1) for _ in range(top_m + 1)]
            for al in range(top_m + 1):
                for be in range(top_n + 1):
                    acc = mpmath.fsum(C[al + be - l] * A[al - l] * B[be - l] * X[l]
                                      for l in range(min(al, be) + 1))
                    t[al][be] = acc * den[al + be]
            tables.append(t)
    return tables


def _fixed(table, bits):
    """mpf table -> integer array scaled by ``2^bits`` (object dtype)."""
    out = np.empty((len(table), len(table[0])), dtype=object)
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            out[i, j] = int(mpmath.nint(mpmath.ldexp(v, bits)))
    return out


def _mp_general_entries(gp, idx, dps):
    top_m = max(i for i, _ in idx)
    top_n = max(j for _, j in idx)
    t1, t2 = _mp_q_tables(gp, top_m, top_n, dps)
    bits = int(dps * 3.33) + 64
    with mpmath.workdps(dps):
        f1, f2 = _fixed(t1, bits), _fixed(t2, bits)
    scale = 1 << (2 * bits)
    # exact integer convolution; int / int rounds correctly to float
    return [(f1[:m + 1, :n + 1] * f2[m::-1, n::-1]).sum() / scale for m, n in idx]


def _direct(sf, cutoff, branch="auto"):
    gp = PhotonGenParams.from_state(sf)
    sts = sf.is_squeezed_thermal() if branch == "auto" else branch == "squeezed-thermal"
    p, mag = _sts_direct(gp, cutoff) if sts else _general_direct(gp, cutoff)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(mag > 0, mag / np.abs(p), 1.0)
    flagged = np.argwhere(ratio > CANCEL_LIMIT)
    if len(flagged):
        worst = float(np.nanmax(ratio[ratio > CANCEL_LIMIT]))
        worst = min(worst, 1e300) if np.isfinite(worst) else 1e300
        dps = max(30, int(math.ceil(math.log10(worst))) + 20)
        idx = [tuple(map(int, ij)) for ij in flagged]
        if sts:
            vals = [_mp_sts_entry(gp, m, n, dps) for m, n in idx]
        else:
            vals = _mp_general_entries(gp, idx, dps)
        for (m, n), v in zip(idx, vals):
            p[m, n] = v
    return p, len(flagged)


# --------------------------------------------------------------------------
# recursion

def _pi_coefficients(gp):
    """3x3 coefficients of ``Pi(z1, z2) = P1 P2``, ``pi[i, j]`` of ``z1^i z2^j``."""
    polys = []
    for j in (1, 2):
        S, b1, b2, K = gp.factor(j)
        polys.append(np.array([[S, -b2], [-b1, K]]))
    return convolve(polys[0], polys[1], method="direct")


def _half_power_series(c0, c1, n):
    """Coefficients of ``(c0 + c1 z)^(-1/2)`` up to ``z^(n-1)``."""
    k = np.arange(1, n)
    ratio = np.concatenate([[1.0], np.cumprod((2 * k - 1) / (2 * k) * (-c1 / c0))])
    return ratio / math.sqrt(c0)


def iter_rows(sf, cutoff):
    """Yield the rows ``p(m, 0..cutoff)`` for ``m = 0..cutoff`` by recursion."""
    gp = PhotonGenParams.from_state(sf)
    pi = _pi_coefficients(gp)
    width = cutoff + 1
    S1, _, b21, _ = gp.factor(1)
    S2, _, b22, _ = gp.factor(2)
    row0 = np.convolve(_half_power_series(S1, -b21, width),
                       _half_power_series(S2, -b22, width))[:width]
    yield row0
    prev2 = np.zeros(width)
    prev1 = row0
    den = pi[0]
    for m in range(1, cutoff + 1):
        rhs = (2 * m - 1) * np.convolve(prev1, pi[1])[:width]
        if m >= 2:
            rhs += (2 * m - 2) * np.convolve(prev2, pi[2])[:width]
        row = lfilter([1.0], den, -rhs / (2 * m))
        yield row
        prev2, prev1 = prev1, row


def _recursive(sf, cutoff):
    return np.vstack(list(iter_rows(sf, cutoff)))


def _clean(p):
    low = p.min() if p.size else 0.0
    if low < -NEG_FATAL:
        m, n = np.unravel_index(np.argmin(p), p.shape)
        raise PrecisionError(f"p({m},{n}) = {low!r} is negative beyond {NEG_FATAL}")
    return np.where(p < 0.0, 0.0, p)


def joint_photon_distribution(sf, tail_tol=DEFAULT_TAIL, max_cutoff=DEFAULT_CAP,
                              method="recursive", branch="auto"):
    """Truncated joint photon-number distribution of a standard-form state.

    Parameters
    ----------
    sf : StandardFormCM
    tail_tol : float
        Maximal probability mass left outside the ``(N+1) x (N+1)`` window.
    max_cutoff : int
        Hard cap on ``N``; exceeding it raises :class:`ConvergenceError`.
    method : {"recursive", "direct"}
        ``direct`` evaluates the finite-sum formulas (single-sum form for
        squeezed thermal states) and is the reference; ``recursive`` is the
        fast path.
    branch : {"auto", "general", "squeezed-thermal"}
        Formula used by the direct route; ``auto`` picks the single-sum form
        whenever ``c1 = |c2|``.
    """
    if not 0 < tail_tol <= 1e-4:
        raise ValueError(f"tail_tol must lie in (0, 1e-4], got {tail_tol}")
    sf.check()
    cutoff = choose_cutoff(sf, tail_tol, max_cutoff)
    while True:
        n_fix = 0
        if method == "direct":
            raw, n_fix = _direct(sf, cutoff, branch)
        elif method == "recursive":
            raw = _recursive(sf, cutoff)
        else:
            raise ValueError(f"unknown method {method!r}")
        p = _clean(raw)
        tail = 1.0 - math.fsum(p.ravel())
        if tail <= tail_tol:
            return JointPhotonDistribution(p, cutoff, tail, method, n_fix)
        if cutoff >= max_cutoff:
            raise ConvergenceError(f"tail mass {tail:.3g} > {tail_tol} at cutoff {cutoff}")
        cutoff = min(2 * cutoff, max_cutoff)


def shannon_entropy(dist):
    """Shannon entropy (nats) of the captured part of a distribution."""
    p = dist.p if hasattr(dist, "p") else np.asarray(dist, dtype=float)
    return float(math.fsum(entr(np.clip(p, 0.0, None)).ravel()))


@dataclass(frozen=True)
class MidResult:
    value: float
    shannon: float
    cutoff: int
    tail_mass: float
    closed_form: bool

    def __float__(self):
        return self.value


def _streamed_entropy(sf, tail_tol, max_cutoff):
    cutoff = choose_cutoff(sf, tail_tol, max_cutoff)
    while True:
        parts, mass = [], []
        for row in iter_rows(sf, cutoff):
            if row.min() < -NEG_FATAL:
                raise PrecisionError(f"negative probability {row.min()!r} in recursion")
            row = np.clip(row, 0.0, None)
            parts.append(math.fsum(entr(row)))
            mass.append(math.fsum(row))
        tail = 1.0 - math.fsum(mass)
        if tail <= tail_tol:
            return math.fsum(parts), cutoff, tail
        if cutoff >= max_cutoff:
            raise ConvergenceError(f"tail mass {tail:.3g} > {tail_tol} at cutoff {cutoff}")
        cutoff = min(2 * cutoff, max_cutoff)


def pure_state_mid(a):
    """Closed form for two-mode squeezed vacuum with local covariance ``a``."""
    return entropy_F(a)


def _standard(state):
    return state if isinstance(state, StandardFormCM) else to_standard_form(state)


def mid_details(sf, tail_tol=DEFAULT_TAIL, max_cutoff=DEFAULT_CAP, method="recursive",
                closed_form=True):
    """MID with its truncation data; ``sf`` may also be a raw 4x4 covariance matrix.

    Local symplectics rotate the marginal eigenbases along with the state,
    so the standard form carries the same value.
    """
    sf = _standard(sf)
    sf.check()
    if sf.is_product():
        if marginal_flags(sf):
            warnings.warn(f"vacuum marginal(s) {marginal_flags(sf)}: Fock eigenbasis is "
                          "degenerate, using the product-state value 0", DegenerateMarginal)
        return MidResult(0.0, 0.0, 0, 0.0, True)
    if closed_form and sf.is_pure():
        val = pure_state_mid(sf.a)
        return MidResult(val, val, 0, 0.0, True)
    if method == "recursive":
        h, cutoff, tail = _streamed_entropy(sf, tail_tol, max_cutoff)
    else:
        dist = joint_photon_distribution(sf, tail_tol, max_cutoff, method)
        h, cutoff, tail = shannon_entropy(dist), dist.cutoff, dist.tail_mass
    spec = sf.spectrum()
    val = h - spectrum_entropy(spec, sf.cm)
    return MidResult(max(val, 0.0), h, cutoff, tail, False)


def mid(sf, tail_tol=DEFAULT_TAIL, max_cutoff=DEFAULT_CAP, method="recursive",
        closed_form=True):
    """Measurement-induced disturbance under local photon counting (nats)."""
    return mid_details(sf, tail_tol, max_cutoff, method, closed_form).value
