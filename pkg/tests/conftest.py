import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gaussdisturb.sampler import PurityMode, SamplerConfig, random_state
from gaussdisturb.states import StandardFormCM

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _draw(mode, a_max=5.0):
    cfg = SamplerConfig(a_max=a_max, b_max=a_max, purity_mode=mode)
    return seeds.map(lambda s: random_state(cfg, np.random.default_rng(s)))


mixed_states = _draw(PurityMode.MIXED)
sts_states = _draw(PurityMode.SYMMETRIC_STS)
pure_states = _draw(PurityMode.PURE, a_max=20.0)


@st.composite
def local_symplectic(draw):
    """Random single-mode symplectic ``R(p) diag(e^z, e^-z) R(q)``, one per mode."""
    def one():
        p = draw(st.floats(0, math.pi))
        q = draw(st.floats(0, math.pi))
        z = draw(st.floats(-0.8, 0.8))
        rp = np.array([[math.cos(p), -math.sin(p)], [math.sin(p), math.cos(p)]])
        rq = np.array([[math.cos(q), -math.sin(q)], [math.sin(q), math.cos(q)]])
        return rp @ np.diag([math.exp(z), math.exp(-z)]) @ rq
    S = np.zeros((4, 4))
    S[:2, :2] = one()
    S[2:, 2:] = one()
    return S


def rotate(sf, S):
    return S @ sf.cm @ S.T


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# acceptance lines, printed once at the end of the session
ACCEPTANCE = []


def record(criterion, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: _criterion_key(s)):
            terminalreporter.write_line(line)


def _criterion_key(line):
    tag = line.split("criterion ", 1)[1].split(":", 1)[0]
    num = "".join(ch for ch in tag if ch.isdigit())
    return int(num), tag
