"""Seeded rejection sampling of physical standard-form states."""
from dataclasses import dataclass, asdict
from enum import Enum
import logging
import math

import numpy as np

from .errors import SamplingExhausted
from .states import StandardFormCM, validate

log = logging.getLogger(__name__)

MAX_REJECTIONS = 10_000


class PurityMode(str, Enum):
    MIXED = "mixed"
    PURE = "pure"
    SYMMETRIC_STS = "symmetric_sts"


@dataclass(frozen=True)
class SamplerConfig:
    a_max: float = 5.0
    b_max: float = 5.0
    seed: int = 42
    purity_mode: PurityMode = PurityMode.MIXED

    def __post_init__(self):
        if not (self.a_max >= 1.0 and self.b_max >= 1.0):
            raise ValueError(f"a_max and b_max must be >= 1, got {self.a_max}, {self.b_max}")
        object.__setattr__(self, "purity_mode", PurityMode(self.purity_mode))

    def rng(self):
        return np.random.default_rng(self.seed)

    def spawn(self, n):
        """``n`` generators with independent sub-seeds, one per worker."""
        return [np.random.default_rng(s) for s in np.random.SeedSequence(self.seed).spawn(n)]

    def to_dict(self):
        d = asdict(self)
        d["purity_mode"] = self.purity_mode.value
        return d


@dataclass
class SamplerStats:
    accepted: int = 0
    rejected: int = 0

    @property
    def acceptance_rate(self):
        total = self.accepted + self.rejected
        return self.accepted / total if total else math.nan


def _mixed(cfg, rng, stats):
    for _ in range(MAX_REJECTIONS):
        a = rng.uniform(1.0, cfg.a_max)
        b = rng.uniform(1.0, cfg.b_max)
        box = math.sqrt(a * b)
        c1, c2 = rng.uniform(-box, box, size=2)
        if c1 >= abs(c2):
            sf = StandardFormCM(a, b, float(c1), float(c2))
            if validate(sf.cm).is_positive:
                stats.accepted += 1
                return sf
        stats.rejected += 1
    raise SamplingExhausted(f"{MAX_REJECTIONS} consecutive rejections with {cfg}")


def random_state(cfg, rng, stats=None):
    """Draw one physical state according to ``cfg.purity_mode``.

    ``mixed`` draws ``a, b`` uniformly, then ``(c1, c2)`` uniformly in the box
    ``|c_i| <= sqrt(ab)`` until the candidate is ordered and physical.
    ``pure`` draws a two-mode squeezed vacuum with ``cosh 2r <= min(a_max, b_max)``;
    ``symmetric_sts`` draws ``a`` and ``c1 = -c2`` in ``[0, sqrt(a^2 - 1)]``.
    """
    stats = SamplerStats() if stats is None else stats
    if cfg.purity_mode is PurityMode.MIXED:
        return _mixed(cfg, rng, stats)
    top = min(cfg.a_max, cfg.b_max)
    stats.accepted += 1
    if cfg.purity_mode is PurityMode.PURE:
        r = rng.uniform(0.0, 0.5 * math.acosh(top))
        x, y = math.cosh(2 * r), math.sinh(2 * r)
        return StandardFormCM(x, x, y, -y)
    a = rng.uniform(1.0, top)
    c = rng.uniform(0.0, math.sqrt(a * a - 1.0))
    return StandardFormCM(a, a, c, -c)


def sample_states(cfg, n, rng=None):
    """``n`` states and the sampling statistics; logs the acceptance rate."""
    rng = cfg.rng() if rng is None else rng
    stats = SamplerStats()
    out = [random_state(cfg, rng, stats) for _ in range(n)]
    log.info("sampled %d states, acceptance rate %.3f", n, stats.acceptance_rate)
    return out, stats
