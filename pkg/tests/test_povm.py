import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from gaussdisturb.entropy import entropy_F
from gaussdisturb.errors import NonPhysical
from gaussdisturb.fock import pure_state_mid
from gaussdisturb.povm import (HETERODYNE, HOMODYNE, Branch, GaussianSeed, GaussianSeedPair,
                               OptResult, classical_mi_at_seed, classical_mi_from_seed_cms,
                               gaussian_amid, gaussian_classical_mi, h_function, log_g,
                               measurement_invariants, numeric_classical_mi,
                               quartic_positive_roots, sts_gamid_closed)
from gaussdisturb.states import StandardFormCM, gmems, pure_tmsv, statistrani

from conftest import mixed_states, sts_states

# ln cosh 2, mpmath
LN_COSH2 = 1.3250027473578644

symmetric_states = mixed_states.map(
    lambda sf: StandardFormCM(max(sf.a, sf.b), max(sf.a, sf.b), sf.c1, sf.c2))


def test_seed_covariance_is_pure():
    for r, th in [(0.0, 0.3), (0.7, 1.1), (2.0, math.pi / 2)]:
        g = GaussianSeed(r, th).covariance()
        assert np.linalg.det(g) == pytest.approx(1.0, rel=1e-12)
        np.testing.assert_allclose(g, g.T)
    np.testing.assert_allclose(GaussianSeed(0.0).covariance(), np.eye(2), atol=1e-15)


def test_seed_flags():
    assert GaussianSeed(math.inf).homodyne and not GaussianSeed(math.inf).heterodyne
    assert GaussianSeed(0.0).heterodyne
    assert GaussianSeed.from_t(0.0).homodyne
    assert GaussianSeed.from_t(1.0).r == 0.0
    with pytest.raises(ValueError):
        GaussianSeed(math.inf).covariance()
    with pytest.raises(ValueError):
        GaussianSeedPair(-1.0, 0.0)


def test_homodyne_seed_is_limit_of_squeezing():
    sf = StandardFormCM(2.0, 3.0, 1.5, -0.7)
    lim = classical_mi_at_seed(sf, HOMODYNE)
    near = classical_mi_at_seed(sf, GaussianSeedPair(12.0, 12.0))
    assert near == pytest.approx(lim, abs=1e-9)


def test_seed_json_roundtrip():
    for p in (HOMODYNE, HETERODYNE, GaussianSeedPair(0.3, math.inf, 0.0, 1.0)):
        assert GaussianSeedPair.from_dict(json.loads(json.dumps(p.to_dict()))) == p


def test_optresult_roundtrip():
    res = gaussian_classical_mi(StandardFormCM(2.0, 3.0, 1.5, -0.7))
    back = OptResult.from_dict(json.loads(json.dumps(res.to_dict())))
    assert back.value == res.value and back.seeds == res.seeds and back.branch is res.branch


@given(mixed_states, st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_log_g_matches_matrix_objective(sf, tA, tB):
    assume(not sf.is_product())
    direct = classical_mi_at_seed(sf, GaussianSeedPair.from_t(tA, tB))
    assert 0.5 * log_g(sf.a, sf.b, sf.c1, sf.c2, tA, tB) == pytest.approx(direct, abs=1e-9)


@given(mixed_states, st.floats(0.0, 3.0), st.floats(0.0, 3.0))
def test_invariant_form(sf, rA, rB):
    # f = 1/(1 - h) is the same objective as e^{2 I_c}
    assume(not sf.is_product())
    h = h_function(sf, rA, rB)
    direct = classical_mi_at_seed(sf, GaussianSeedPair(rA, rB))
    assert -0.5 * math.log1p(-h) == pytest.approx(direct, rel=1e-8, abs=1e-10)
    inv = measurement_invariants(sf, 0.0, 0.0)
    assert inv.I3 == sf.c1 * sf.c2


@given(mixed_states, st.floats(0.0, 2.0), st.floats(0.0, 2.0),
       st.floats(0.0, math.pi), st.floats(0.0, math.pi))
def test_phase_pi_over_2_is_optimal(sf, rA, rB, thA, thB):
    assume(not sf.is_product())
    best = classical_mi_at_seed(sf, GaussianSeedPair(rA, rB))
    other = classical_mi_at_seed(sf, GaussianSeedPair(rA, rB, thA, thB))
    assert other <= best + 1e-10


@given(mixed_states, st.integers(0, 2**32 - 1))
@settings(max_examples=30)
def test_mixed_seeds_never_beat_pure_optimum(sf, seed):
    assume(not sf.is_product())
    rng = np.random.default_rng(seed)
    opt = gaussian_classical_mi(sf, check=False).value
    for _ in range(5):
        g = []
        for _ in range(2):
            # pure seed plus classical noise
            m = rng.normal(size=(2, 2))
            pure = GaussianSeed(rng.uniform(0, 2), rng.uniform(0, math.pi)).covariance()
            g.append(pure + m @ m.T)
        assert classical_mi_from_seed_cms(sf.cm, g[0], g[1]) <= opt + 1e-9


def test_outcome_covariance_checked():
    with pytest.raises(NonPhysical):
        classical_mi_from_seed_cms(-np.eye(4), np.eye(2), np.eye(2))


def test_product_branch():
    res = gaussian_classical_mi(StandardFormCM(2.0, 3.0, 0.0, 0.0))
    assert res.value == 0.0 and res.branch is Branch.PRODUCT


def test_single_covariance_branch():
    sf = statistrani(3.0)
    res = gaussian_classical_mi(sf)
    assert res.branch is Branch.SINGLE and res.seeds == HOMODYNE
    assert res.value == pytest.approx(0.5 * math.log(sf.a * sf.b / (sf.a * sf.b - sf.c1 ** 2)),
                                      rel=1e-14)


def test_sts_branches():
    hom = gaussian_classical_mi(StandardFormCM(3.0, 3.0, 2.8, -2.8))
    assert hom.branch is Branch.STS_HOM and hom.seeds == HOMODYNE
    het = gaussian_classical_mi(StandardFormCM(10.0, 10.0, 3.0, -3.0))
    assert het.branch is Branch.STS_HET and het.seeds == HETERODYNE
    x = 11.0 * 11.0
    assert het.value == pytest.approx(math.log(x / (x - 9.0)), rel=1e-14)


def test_quartic_no_root_boundary_wins():
    assert quartic_positive_roots(2.0, 1.0, 0.0) == []
    sf = StandardFormCM(2.0, 2.0, 1.0, 0.0)
    res = gaussian_classical_mi(sf, branch="quartic")
    assert res.branch is Branch.BOUNDARY and res.seeds == HOMODYNE
    assert res.value == pytest.approx(0.5 * math.log(4.0 / 3.0), rel=1e-14)


def test_quartic_needs_symmetry():
    with pytest.raises(ValueError):
        gaussian_classical_mi(StandardFormCM(2.0, 3.0, 1.0, -0.5), branch="quartic")


@given(symmetric_states)
@settings(max_examples=40)
def test_quartic_matches_general(sf):
    assume(not sf.is_product())
    q = gaussian_classical_mi(sf, branch="quartic", check=False).value
    g = gaussian_classical_mi(sf, branch="general", check=False).value
    assert q == pytest.approx(g, abs=1e-10)


@given(mixed_states)
@settings(max_examples=40)
def test_auto_matches_oracle_and_seeds(sf):
    assume(not sf.is_product())
    res = gaussian_classical_mi(sf)
    assert res.value == pytest.approx(numeric_classical_mi(sf), abs=1e-8)
    assert classical_mi_at_seed(sf, res.seeds) == pytest.approx(res.value, abs=1e-9)


@given(mixed_states)
@settings(max_examples=30)
def test_swap_invariant(sf):
    a = gaussian_classical_mi(sf, check=False).value
    b = gaussian_classical_mi(sf.swapped(), check=False).value
    assert a == pytest.approx(b, abs=1e-10)


@pytest.mark.parametrize("r", [0.25, 1.0, 2.5])
def test_pure_state_amid(r):
    sf = pure_tmsv(r)
    res = gaussian_amid(sf)
    expected = 2 * pure_state_mid(sf.a) - math.log(math.cosh(2 * r))
    assert res.value == pytest.approx(expected, abs=1e-10)
    assert res.seeds == HOMODYNE


def test_pure_state_amid_reference():
    assert math.log(math.cosh(2.0)) == pytest.approx(LN_COSH2, rel=1e-15)


@given(sts_states)
def test_sts_closed_form(sf):
    nu = sf.a - sf.c1
    assume(nu > 0)
    assert sts_gamid_closed(sf.a, nu) == pytest.approx(gaussian_amid(sf, check=False).value,
                                                      abs=1e-10)


def test_sts_closed_form_pure_line_finite():
    r = 0.8
    sf = pure_tmsv(r)
    nu = sf.a - sf.c1
    assert sts_gamid_closed(sf.a, nu) == pytest.approx(
        2 * entropy_F(sf.a) - math.log(sf.a), abs=1e-10)


def test_heterodyne_reference():
    res = gaussian_classical_mi(StandardFormCM(6.0, 6.0, 2.0, -2.0))
    assert res.branch == Branch.STS_HET
    assert res.value == pytest.approx(math.log(49.0 / 45.0), abs=1e-13)


def test_pure_state_homodyne_branch():
    res = gaussian_classical_mi(pure_tmsv(1.0))
    assert res.branch == Branch.STS_HOM
    assert res.value == pytest.approx(1.3250027473578644, abs=1e-12)


@given(st.floats(1.0, 10.0), st.floats(1.0, 10.0), st.floats(0.0, 0.9))
def test_I4_heterodyne_sts(a, b, f):
    c = f * math.sqrt((a - 1) * (b - 1) + 1e-300)
    sf = StandardFormCM(a, b, c, -c)
    assert measurement_invariants(sf, 0.0, 0.0).I4 == pytest.approx(
        (a + 1) * (b + 1) * 2 * c * c, rel=1e-12, abs=1e-300)


def test_I4_heterodyne_uncorrelated_quadrature():
    sf = StandardFormCM(2.0, 2.0, 0.7, 0.0)
    assert measurement_invariants(sf, 0.0, 0.0).I4 == pytest.approx(9 * 0.49, rel=1e-14)


def test_quartic_coefficients_example():
    from gaussdisturb.povm import quartic_coefficients
    assert quartic_coefficients(2.0, 1.0, 0.0) == pytest.approx((0.0, 8.0, 12.0, 6.0, 1.0))


def test_sts_gamid_reference():
    # mpmath: 2F(a) - 2F(s) minus the homodyne classical MI, a = 3, nu_tilde = 1/2
    ref = 0.6918374486058822
    assert sts_gamid_closed(3.0, 0.5) == pytest.approx(ref, abs=1e-12)
    assert gaussian_amid(gmems(3.0, 0.5)).value == pytest.approx(ref, abs=1e-12)
