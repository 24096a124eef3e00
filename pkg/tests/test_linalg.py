import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gaussdisturb.errors import NonPhysical, Singular
from gaussdisturb.linalg import (det2, det4, inv2, matmul, physical_tol, swap_modes,
                                 symplectic_eigenvalues)
from gaussdisturb.states import StandardFormCM, pure_tmsv

from conftest import mixed_states


def test_det2_identity():
    assert det2(np.eye(2)) == 1.0


def test_det4_diagonal():
    a, b = 2.5, 7.0
    assert det4(np.diag([a, a, b, b])) == pytest.approx(a * a * b * b, rel=1e-15)


@given(st.lists(st.floats(-5, 5), min_size=16, max_size=16))
def test_det4_matches_lapack(entries):
    m = np.array(entries).reshape(4, 4)
    assert det4(m) == pytest.approx(np.linalg.det(m), rel=1e-9, abs=1e-9)


def test_inv2():
    np.testing.assert_allclose(inv2(np.diag([2.0, 2.0])), np.diag([0.5, 0.5]))


@given(st.floats(1, 10), st.floats(1, 10), st.floats(-0.9, 0.9))
def test_inv2_roundtrip(x, y, z):
    m = np.array([[x, z], [z, y]])
    np.testing.assert_allclose(matmul(inv2(m), m), np.eye(2), atol=1e-12)


def test_inv2_singular():
    with pytest.raises(Singular):
        inv2(np.array([[1.0, 2.0], [2.0, 4.0]]))


def test_spectrum_vacuum():
    assert tuple(symplectic_eigenvalues(np.eye(4))) == (1.0, 1.0)


def test_spectrum_pure_tmsv():
    nu = symplectic_eigenvalues(pure_tmsv(1.0).cm)
    assert nu.nu_plus == pytest.approx(1.0, abs=1e-12)
    assert nu.nu_minus == pytest.approx(1.0, abs=1e-12)


def test_spectrum_thermal_product():
    nu = symplectic_eigenvalues(np.diag([3.0, 3.0, 3.0, 3.0]))
    assert nu.nu_plus == pytest.approx(3.0) and nu.nu_minus == pytest.approx(3.0)


def test_spectrum_degenerate_is_not_pushed_below_one():
    # the discriminant vanishes identically; a naive square root of rounding
    # noise used to give nu_- = 1 - 1e-8 here
    for r in (0.25, 0.5, 1.0, 1.5):
        assert symplectic_eigenvalues(pure_tmsv(r).cm).nu_minus >= 1.0 - 1e-12


def test_spectrum_rejects_nonphysical():
    with pytest.raises(NonPhysical):
        symplectic_eigenvalues(np.diag([-1.0, 1.0, 1.0, 1.0]))


@given(mixed_states)
def test_spectrum_swap_invariant(sf):
    s1 = symplectic_eigenvalues(sf.cm)
    s2 = symplectic_eigenvalues(swap_modes(sf.cm))
    assert s1.nu_plus == pytest.approx(s2.nu_plus, rel=1e-12)
    assert s1.nu_minus == pytest.approx(s2.nu_minus, rel=1e-12)


@given(mixed_states)
def test_det_is_product_of_eigenvalues(sf):
    nu = symplectic_eigenvalues(sf.cm)
    assert det4(sf.cm) == pytest.approx((nu.nu_plus * nu.nu_minus) ** 2, rel=1e-10)


@given(mixed_states)
def test_spectrum_ordering(sf):
    nu = symplectic_eigenvalues(sf.cm)
    assert nu.nu_plus >= nu.nu_minus > 0


def test_physical_tol_grows_with_scale():
    assert physical_tol(np.eye(4)) == pytest.approx(1e-9, rel=1e-3)
    assert physical_tol(np.eye(4) * 1e4) > 1e-7
