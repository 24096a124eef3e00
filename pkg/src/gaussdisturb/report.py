"""All correlation measures of one state, with provenance."""
from dataclasses import dataclass, field, asdict
import json
import math

from .discord import gaussian_discord
from .entropy import quantum_mutual_information
from .eof import EofParams, eof_symmetric
from .errors import OutOfRange
from .fock import DEFAULT_CAP, DEFAULT_TAIL, mid_details
from .povm import gaussian_classical_mi
from .states import StandardFormCM

NEG_SLACK = 1e-9
VALUE_FIELDS = ("I_q", "M", "I_c_fock", "A_G", "I_c_G", "D_left", "D_right", "D_twoway",
                "E_f_G")


@dataclass(frozen=True)
class MeasureConfig:
    tail_tol: float = DEFAULT_TAIL
    max_cutoff: int = DEFAULT_CAP
    check: bool = True

    def to_dict(self):
        return asdict(self)


@dataclass
class MeasureReport:
    """Measures in nats; ``E_f_G`` is ``None`` unless the state is symmetric."""

    state: StandardFormCM
    I_q: float
    M: float
    I_c_fock: float
    A_G: float
    I_c_G: float
    D_left: float
    D_right: float
    D_twoway: float
    E_f_G: object = None
    branches: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in VALUE_FIELDS:
            v = getattr(self, name)
            if v is not None and v < -NEG_SLACK:
                raise ValueError(f"{name} = {v} is negative")

    @property
    def A_bound(self):
        """Best computable upper bound on the AMID over all local measurements."""
        return min(self.M, self.A_G)

    def values(self):
        return {k: getattr(self, k) for k in VALUE_FIELDS}

    def to_dict(self):
        return {"state": self.state.to_dict(), **self.values(), "A_bound": self.A_bound,
                "branches": dict(self.branches), "tolerances": dict(self.tolerances)}

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        s = d["state"]
        return cls(StandardFormCM(s["a"], s["b"], s["c1"], s["c2"]),
                   **{k: d[k] for k in VALUE_FIELDS}, branches=dict(d["branches"]),
                   tolerances=dict(d["tolerances"]))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def measures(sf, cfg=MeasureConfig()):
    """Compute every measure of ``sf``.

    The MID is the costliest part; its truncation is set by
    ``cfg.tail_tol`` and ``cfg.max_cutoff``.
    """
    sf.check()
    iq = quantum_mutual_information(sf)
    md = mid_details(sf, cfg.tail_tol, cfg.max_cutoff)
    ic = gaussian_classical_mi(sf, check=cfg.check)
    dl = gaussian_discord(sf, "left", cfg.check)
    dr = gaussian_discord(sf, "right", cfg.check)
    try:
        ef = eof_symmetric(EofParams.from_state(sf).nu_tilde)
    except OutOfRange:
        ef = None
    branches = {"I_c_G": ic.branch.value, "D_left": dl.branch.value,
                "D_right": dr.branch.value,
                "M": "closed-form" if md.closed_form else "photon-sum",
                "seeds": ic.seeds.to_dict()}
    tol = cfg.to_dict()
    tol["cutoff"] = md.cutoff
    tol["tail_mass"] = md.tail_mass
    return MeasureReport(sf, iq, md.value, max(iq - md.value, 0.0), max(iq - ic.value, 0.0),
                         ic.value, dl.value, dr.value, max(dl.value, dr.value), ef,
                         branches, tol)


def as_bits(values):
    """Divide every numeric entry by ``ln 2``."""
    return {k: (v / math.log(2.0) if isinstance(v, float) else v) for k, v in values.items()}
