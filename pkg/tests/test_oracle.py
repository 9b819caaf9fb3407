import cmath
import math

import numpy as np
import pytest

from ptorbit.errors import DivergenceError, IntegrationHalt, InvalidArgument, PoleProximityError, UnsupportedCase
from ptorbit.numerics import PhasePoint
from ptorbit.oracle import IntegratorConfig, energy_drift, integrate, ode_residual, pt_partner
from ptorbit.scarf import ScarfParams, eval_V
from ptorbit.trajectory import Source, Trajectory

FIG1 = ScarfParams(2, 6, 2j)
REAL = ScarfParams(2, 6, 0)


def test_config_validation():
    for bad in ({"rel_tol": 0}, {"abs_tol": 0.1}, {"t_max": 0}, {"max_step": -1}):
        with pytest.raises(InvalidArgument):
            IntegratorConfig(**bad)


def test_matches_exact_fig1(fig1_exact, fig1_ode):
    tr = fig1_exact[0.5 + 0.2j]
    assert fig1_ode.source is Source.OdeIntegration
    assert len(fig1_ode) == len(tr)
    assert np.max(np.abs(fig1_ode.x - tr.x)) < 1e-6
    assert np.max(np.abs(fig1_ode.p - tr.p)) < 1e-6


def test_matches_exact_fig4(fig4_exact, fig4_ode):
    n = len(fig4_ode)
    assert np.max(np.abs(fig4_ode.x - fig4_exact.x[:n])) < 1e-6
    assert np.max(np.abs(fig4_ode.p - fig4_exact.p[:n])) < 1e-6


def test_drift_default_tolerances(fig1_ode, fig4_ode):
    assert energy_drift(fig1_ode, FIG1, fig1_ode.energy) < 1e-8
    assert energy_drift(fig4_ode, fig4_ode.params, fig4_ode.energy) < 1e-8


def test_stationary_start_at_turning_point_of_real_well():
    a = math.log(1 + math.sqrt(2))  # V(a) = -3 for this well
    E = eval_V(REAL, a)
    assert abs(E + 3) < 1e-12
    tr = integrate(REAL, PhasePoint(complex(a), 0j), IntegratorConfig(t_max=5.0))
    assert energy_drift(tr, REAL, E) < 1e-10
    assert np.max(np.abs(tr.x.imag)) == 0
    assert np.min(tr.x.real) < -a + 1e-3  # reaches the other turning point


def test_drift_scales_with_tolerance():
    x0 = 0.3 + 0.5j
    p0 = cmath.sqrt(-3 - eval_V(FIG1, x0))
    loose = integrate(FIG1, PhasePoint(x0, p0), IntegratorConfig(rel_tol=1e-6, abs_tol=1e-6, max_step=1.0, t_max=5))
    tight = integrate(FIG1, PhasePoint(x0, p0), IntegratorConfig(rel_tol=1e-8, abs_tol=1e-8, max_step=1.0, t_max=5))
    d_loose = energy_drift(loose, FIG1, -3)
    d_tight = energy_drift(tight, FIG1, -3)
    assert d_tight * 10 <= d_loose


def test_forward_backward_returns(fig1_ode):
    end = PhasePoint(fig1_ode.x[-1], fig1_ode.p[-1], fig1_ode.t[-1])
    back = integrate(FIG1, end, IntegratorConfig(t_max=fig1_ode.t[-1]), backward=True)
    assert back.t[0] == pytest.approx(0, abs=1e-12)
    assert abs(back.x[0] - fig1_ode.x[0]) < 1e-7
    assert abs(back.p[0] - fig1_ode.p[0]) < 1e-7


def test_ode_residual_small(fig1_ode):
    assert ode_residual(fig1_ode, FIG1) < 1e-6


def test_pt_partner_solves_the_equations(fig1_ode):
    partner = pt_partner(fig1_ode)
    r0 = ode_residual(fig1_ode, FIG1)
    r1 = ode_residual(partner, FIG1)
    assert r1 < 1e-6
    assert r1 <= 10 * r0 + 1e-12
    assert partner.t[0] == -fig1_ode.t[-1]


def test_pt_partner_is_an_involution(fig1_ode):
    twice = pt_partner(pt_partner(fig1_ode))
    assert np.array_equal(twice.t, fig1_ode.t)
    assert np.array_equal(twice.x, fig1_ode.x)
    assert np.array_equal(twice.p, fig1_ode.p)


def test_pt_partner_of_real_oscillation():
    tr = integrate(REAL, PhasePoint(0.2 + 0j, 0.9 + 0j), IntegratorConfig(t_max=2.0))
    partner = pt_partner(tr)
    np.testing.assert_array_equal(partner.x, -tr.x[::-1])
    assert ode_residual(partner, REAL) < 1e-6


def test_pt_partner_requires_pt_params():
    params = ScarfParams(2, 6, 1 + 1j)
    tr = Trajectory(np.arange(3.0), np.zeros(3), np.zeros(3), Source.OdeIntegration, params)
    with pytest.raises(UnsupportedCase):
        pt_partner(tr)


def test_start_at_pole_rejected():
    with pytest.raises(PoleProximityError):
        integrate(FIG1, PhasePoint(1j * math.pi / 2, 0j))


def test_nonfinite_start_rejected():
    with pytest.raises(InvalidArgument):
        integrate(FIG1, PhasePoint(complex(float("nan"), 0), 0j))


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_blow_up_is_reported():
    # start almost on the pole with large momentum: the step size collapses or the state diverges
    x = 1j * math.pi / 2 + 1e-5
    with pytest.raises((IntegrationHalt, DivergenceError, PoleProximityError)):
        integrate(FIG1, PhasePoint(x, 0j), IntegratorConfig(t_max=1.0, rel_tol=1e-12, abs_tol=1e-12))
