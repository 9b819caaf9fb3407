import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ptorbit.errors import DegenerateError, InvalidArgument, PoleProximityError, UnsupportedCase
from ptorbit.scarf import (
    PTPhase,
    ScarfParams,
    WindowKind,
    classify_phase,
    energy_window,
    eval_dV,
    eval_V,
    hamiltonian,
    turning_points,
)

FIG1 = ScarfParams(2, 6, 2j)
FIG4 = ScarfParams(2, 3, 2j)


def mp_V(params, x):
    """Independent arbitrary-precision evaluation of the potential."""
    y = params.alpha0 * mpmath.mpc(x) / 2
    return -params.gamma0 * mpmath.sech(y) ** 2 + 2 * mpmath.mpc(params.delta) * mpmath.sech(y) * mpmath.tanh(y)


def test_params_validation():
    with pytest.raises(InvalidArgument):
        ScarfParams(0, 6, 2j)
    with pytest.raises(InvalidArgument):
        ScarfParams(2, -1, 0)
    with pytest.raises(InvalidArgument):
        ScarfParams(2, 6, complex(float("nan"), 0))
    assert ScarfParams(2, 6, 2j).delta_i == 2.0


def test_potential_values():
    assert eval_V(FIG1, 0) == -6
    assert abs(eval_V(FIG1, 0.781368 - 0.528945j) - (-3)) < 1e-4
    assert abs(eval_V(FIG1, 50.0)) < 1e-20


def test_potential_matches_high_precision():
    for x in (0.3 + 0.2j, -1.1 + 0.4j, 0.7 - 1.2j):
        assert abs(eval_V(FIG1, x) - complex(mp_V(FIG1, x))) < 1e-13


def test_potential_vectorised():
    xs = np.array([0, 0.3 + 0.2j, -0.5])
    np.testing.assert_allclose(eval_V(FIG1, xs), [eval_V(FIG1, complex(x)) for x in xs], rtol=0, atol=1e-15)


def test_pole_guard():
    pole = 1j * math.pi / FIG1.alpha0  # cosh(alpha0 x / 2) = 0
    with pytest.raises(PoleProximityError):
        eval_V(FIG1, pole)
    with pytest.raises(PoleProximityError):
        eval_dV(FIG1, pole)


def test_force_at_origin():
    oracle = complex(mpmath.diff(lambda z: mp_V(FIG1, z), mpmath.mpc(0)))
    assert abs(oracle - 4j) < 1e-12
    assert abs(eval_dV(FIG1, 0) - oracle) < 1e-12


def test_force_matches_high_precision_derivative():
    x = 0.3 + 0.2j
    oracle = complex(mpmath.diff(lambda z: mp_V(FIG1, z), mpmath.mpc(x)))
    assert abs(eval_dV(FIG1, x) - oracle) < 1e-7 * abs(oracle)


@given(st.floats(-4, 4))
def test_real_well_force_is_real_and_odd(x):
    params = ScarfParams(2, 6, 0)
    d = eval_dV(params, x)
    assert abs(d.imag) < 1e-14
    assert abs(eval_dV(params, -x) + d) < 1e-12


@settings(max_examples=60)
@given(st.floats(-3, 3), st.floats(-0.7, 0.7), st.floats(0.5, 8), st.floats(-3, 3))
def test_pt_symmetry_of_potential(re, im, gamma0, delta_i):
    params = ScarfParams(2, gamma0, 1j * delta_i)
    x = complex(re, im)
    assert abs(eval_V(params, -x.conjugate()) - eval_V(params, x).conjugate()) < 1e-12 * (1 + abs(eval_V(params, x)))


def _contains(found, value, tol=1e-4):
    return np.min(np.abs(found - value)) < tol


def test_turning_points_unbroken():
    tps = turning_points(FIG1, -3.0)
    for z in (0.781368 - 0.528945j, -0.781368 - 0.528945j, 0.781368 - 2.61265j, -0.781368 - 2.61265j):
        assert _contains(tps.locations, z)
    # sorted by distance from the real axis
    assert abs(tps.locations[0].imag) <= abs(tps.locations[-1].imag)


def test_turning_points_broken():
    tps = turning_points(FIG4, -1.5 - 0.3j)
    for z in (-0.102199 - 0.470998j, 0.102199 - 2.67059j, -1.40526 - 1.3489j, 1.40526 - 1.79269j):
        assert _contains(tps.locations, z)


def test_turning_points_real_well():
    params = ScarfParams(2, 6, 0)
    tps = turning_points(params, -3.0, branch_window=0)
    a = math.log(1 + math.sqrt(2))
    np.testing.assert_allclose(sorted(tps.locations.real), [-a, a], atol=1e-12)
    assert np.all(np.abs(tps.locations.imag) < 1e-14)


def test_turning_points_zero_energy():
    with pytest.raises(DegenerateError):
        turning_points(FIG1, 0)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.5, 8), st.floats(-3, 3), st.floats(-6, -0.1), st.floats(-1, 1))
def test_turning_points_solve_the_shell_equation(gamma0, delta_i, e_re, e_im):
    params = ScarfParams(2, gamma0, 1j * delta_i)
    E = complex(e_re, e_im)
    tps = turning_points(params, E, branch_window=1)
    for tp in tps:
        try:
            V = eval_V(params, tp.location)
        except PoleProximityError:
            continue
        assume(abs(V) < 1e6)
        assert abs(hamiltonian(params, tp.location, 0) - E) < 1e-8 * (1 + abs(E))


def test_energy_windows():
    w = energy_window(FIG1)
    assert w.kind is WindowKind.RealInterval
    assert abs(w.lower - (-5.23607)) < 1e-5 and abs(w.upper - (-0.763932)) < 1e-5
    w = energy_window(FIG4)
    assert w.kind is WindowKind.ComplexConjugatePair
    assert abs(w.lower - (-1.5 - 1.32288j)) < 1e-5 and abs(w.upper - (-1.5 + 1.32288j)) < 1e-5
    assert w.upper == w.lower.conjugate()
    w = energy_window(ScarfParams(2, 5, 0))
    assert (w.lower, w.upper) == (-5, 0)


def test_window_membership():
    w = energy_window(FIG1)
    assert w.contains(-3) and not w.contains(-0.5) and not w.contains(-3 + 0.1j)
    w = energy_window(FIG4)
    assert w.contains(-1.5 - 0.3j) and not w.contains(-1.4) and not w.contains(-1.5 + 2j)


def test_window_requires_pt_or_real():
    with pytest.raises(UnsupportedCase):
        energy_window(ScarfParams(2, 6, 1 + 1j))


@pytest.mark.parametrize(
    "gamma0, delta, phase",
    [
        (6, 2j, PTPhase.PTUnbroken),
        (3, 2j, PTPhase.PTBroken),
        (4, 2j, PTPhase.PTUnbroken),
        (6, 1.5, PTPhase.RealPotential),
        (6, 0, PTPhase.RealPotential),
        (6, 1 + 1j, PTPhase.NonPTSymmetric),
    ],
)
def test_phase(gamma0, delta, phase):
    assert classify_phase(ScarfParams(2, gamma0, delta)) is phase
