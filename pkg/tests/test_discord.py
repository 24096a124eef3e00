import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from gaussdisturb.discord import (conditional_det, gaussian_discord, golden_min_conditional_det,
                                  min_conditional_det, sts_discord_closed, two_way_discord)
from gaussdisturb.entropy import entropy_F, quantum_mutual_information
from gaussdisturb.povm import Branch, GaussianSeed
from gaussdisturb.states import StandardFormCM, cmivette, gmems, pure_tmsv

from conftest import mixed_states, sts_states

# 2 sinh^2(1) ln coth(1), mpmath
CMIVETTE_LIMIT = 0.7522604319316479


def conditional_det_matrix(sf, seed_cm):
    """det of A's covariance after a Gaussian measurement of B, from the blocks."""
    cm = sf.cm
    A, B, C = cm[:2, :2], cm[2:, 2:], cm[:2, 2:]
    return np.linalg.det(A - C @ np.linalg.inv(B + seed_cm) @ C.T)


@given(mixed_states, st.floats(-3.0, 3.0), st.floats(0.0, math.pi))
def test_phi_matches_matrix_formula(sf, r, theta):
    assume(not sf.is_product())
    seed = GaussianSeed(abs(r), theta).covariance()
    m = conditional_det_matrix(sf, seed)
    phi_min, _, _ = min_conditional_det(sf.a, sf.b, sf.c1, sf.c2)
    # no seed, rotated or not, does better than the optimum
    assert m >= phi_min * (1 - 1e-10)
    if theta == 0.0:
        t = math.exp(2 * abs(r))
        assert conditional_det(sf.a, sf.b, sf.c1, sf.c2, t) == pytest.approx(m, rel=1e-10)


def test_phi_limits():
    a, b, c1, c2 = 2.0, 3.0, 1.5, -0.5
    assert conditional_det(a, b, c1, c2, 1e-14) == pytest.approx(
        conditional_det(a, b, c1, c2, 0.0), rel=1e-12)
    assert conditional_det(a, b, c1, c2, 1e14) == pytest.approx(
        conditional_det(a, b, c1, c2, math.inf), rel=1e-12)


@given(mixed_states)
def test_exact_matches_oracle(sf):
    assume(not sf.is_product())
    exact, _, _ = min_conditional_det(sf.a, sf.b, sf.c1, sf.c2)
    assert exact == pytest.approx(golden_min_conditional_det(sf.a, sf.b, sf.c1, sf.c2),
                                  rel=1e-9)


@given(mixed_states)
@settings(max_examples=40)
def test_bounds(sf):
    d = gaussian_discord(sf).value
    assert 0.0 <= d <= quantum_mutual_information(sf) + 1e-12


def test_product_zero():
    res = gaussian_discord(StandardFormCM(2.0, 3.0, 0.0, 0.0))
    assert res.value == 0.0 and res.branch is Branch.PRODUCT


def test_direction_checked():
    with pytest.raises(ValueError):
        gaussian_discord(pure_tmsv(0.5), "up")


@pytest.mark.parametrize("r", [0.3, 1.0, 2.0])
def test_pure_state_is_entanglement_entropy(r):
    sf = pure_tmsv(r)
    for side in ("left", "right"):
        assert gaussian_discord(sf, side).value == pytest.approx(entropy_F(sf.a), abs=1e-9)


def test_asymmetric_directions():
    sf = cmivette(1.0, 10.0)
    left = gaussian_discord(sf, "left").value
    right = gaussian_discord(sf, "right").value
    assert left < 1e-3
    assert right == pytest.approx(CMIVETTE_LIMIT, abs=1e-4)
    assert two_way_discord(sf) == right


@given(sts_states)
def test_sts_closed_form(sf):
    nu = sf.a - sf.c1
    assume(nu > 0)
    assert sts_discord_closed(sf.a, nu) == pytest.approx(gaussian_discord(sf).value, abs=1e-8)


def test_sts_closed_form_pure_line():
    sf = pure_tmsv(0.6)
    assert sts_discord_closed(sf.a, sf.a - sf.c1) == pytest.approx(entropy_F(sf.a), abs=1e-12)


def test_seed_reported():
    res = gaussian_discord(gmems(3.0, 0.5))
    phi = conditional_det_matrix(gmems(3.0, 0.5), res.seeds.covariance()) \
        if not res.seeds.homodyne else None
    if phi is not None:
        assert phi == pytest.approx(min_conditional_det(3.0, 3.0, 2.5, -2.5)[0], rel=1e-9)


def test_sts_discord_reference():
    # mpmath root of phi' on the unit seed, a = 3, nu_tilde = 1/2
    ref = 0.47191692862979154
    assert sts_discord_closed(3.0, 0.5) == pytest.approx(ref, abs=1e-12)
    assert gaussian_discord(gmems(3.0, 0.5)).value == pytest.approx(ref, abs=1e-12)


@given(sts_states)
def test_symmetric_directions_agree(sf):
    assert gaussian_discord(sf, "left").value == pytest.approx(
        gaussian_discord(sf, "right").value, abs=1e-12)
