import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from gaussdisturb.entropy import entropy_F
from gaussdisturb.eof import (NU_SPLIT, SANDWICH_GAP, EofParams, check_sandwich,
                              eof_symmetric, gamid_upper_bound)
from gaussdisturb.errors import OutOfRange
from gaussdisturb.povm import gaussian_amid
from gaussdisturb.states import StandardFormCM, glems, gmems, pt_nu_minus, pure_tmsv

from conftest import sts_states

# mpmath, 30 digits
EOF_HALF = 0.3924361078234109


def test_reference_value():
    assert eof_symmetric(0.5) == pytest.approx(EOF_HALF, rel=1e-14)


def test_separable_zero():
    assert eof_symmetric(1.0) == 0.0
    assert eof_symmetric(1.7) == 0.0


def test_params_validated():
    with pytest.raises(OutOfRange):
        EofParams(0.0)
    assert EofParams(0.5).entangled and not EofParams(1.0).entangled


@pytest.mark.parametrize("r", [0.1, 0.5, 1.5])
def test_pure_state_is_entanglement_entropy(r):
    sf = pure_tmsv(r)
    nu = EofParams.from_state(sf).nu_tilde
    assert nu == pytest.approx(math.exp(-2 * r), rel=1e-12)
    assert eof_symmetric(nu) == pytest.approx(entropy_F(sf.a), rel=1e-10)


@given(st.floats(1e-3, 0.999), st.floats(1e-4, 0.2))
def test_eof_decreasing(nu, d):
    assume(nu + d < 1.0)
    assert eof_symmetric(nu + d) < eof_symmetric(nu)


def test_from_state_general_symmetric():
    sf = glems(4.0, 0.3)
    assert EofParams.from_state(sf).nu_tilde == pytest.approx(pt_nu_minus(sf), rel=1e-14)
    assert EofParams.from_state(sf).nu_tilde == pytest.approx(0.3, rel=1e-9)
    with pytest.raises(OutOfRange):
        EofParams.from_state(StandardFormCM(2.0, 3.0, 1.0, -1.0))


def test_upper_bound_branches():
    # continuous at the split and equal to the larger branch
    lo = gamid_upper_bound(NU_SPLIT * (1 - 1e-12))
    hi = gamid_upper_bound(NU_SPLIT)
    assert lo == pytest.approx(hi, abs=1e-9)
    assert gamid_upper_bound(1.0) == pytest.approx(1 + 2 * math.log(2) - math.log(4), rel=1e-14)
    with pytest.raises(OutOfRange):
        gamid_upper_bound(1.5)


@given(sts_states)
@settings(max_examples=40)
def test_lower_bound(sf):
    rep = check_sandwich(sf)
    assert rep.lower_ok


@pytest.mark.parametrize("nu", [0.1, 0.2, 0.6, 0.9])
def test_large_a_limits_below_bound(nu):
    bound = gamid_upper_bound(nu)
    ag_m = gaussian_amid(gmems(1e4, nu), check=False).value
    ag_l = gaussian_amid(glems(1e4, nu), check=False).value
    assert ag_m == pytest.approx(math.log1p(nu) - math.log(nu), abs=1e-3)
    assert ag_l == pytest.approx(1 - math.log(4 * nu) + math.log1p(nu * nu), abs=1e-6)
    assert ag_l <= bound + 1e-8
    if nu < NU_SPLIT:
        # the bound is the a -> inf limit of this family, approached from above
        assert ag_m == pytest.approx(bound, abs=1e-3)
    else:
        assert ag_m <= bound + 1e-8


def test_sandwich_gap_constant():
    assert SANDWICH_GAP == pytest.approx(0.3862943611198906, rel=1e-15)


def test_upper_bound_at_one():
    assert gamid_upper_bound(1.0) == pytest.approx(1.0, abs=1e-15)


def test_upper_bound_continuous_at_split():
    lo, hi = gamid_upper_bound(NU_SPLIT * (1 - 1e-12)), gamid_upper_bound(NU_SPLIT)
    assert lo == pytest.approx(hi, abs=1e-10)


def test_bound_gap_small_nu():
    # mpmath: bound - E_f at nu_tilde = 1e-6 is ln4 - 1 + 1.0e-6
    n = 1e-6
    assert gamid_upper_bound(n) - eof_symmetric(n) == pytest.approx(SANDWICH_GAP, abs=2e-6)


def test_sandwich_example():
    rep = check_sandwich(gmems(5.0, 0.2))
    assert rep.lower_ok and rep.upper_applies and rep.upper_ok and rep.ok
