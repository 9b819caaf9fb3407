import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ptorbit.errors import BranchStepError, InvalidArgument, PtorbitError
from ptorbit.numerics import (
    BranchContext,
    PhasePoint,
    asinh_principal,
    asinh_tracked,
    derivative,
    numeric_derivative,
    poisson_bracket,
)
from ptorbit.scarf import ScarfParams, eval_dV, hamiltonian

finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


def test_asinh_principal_values():
    assert asinh_principal(0) == 0
    assert asinh_principal(1) == pytest.approx(math.log(1 + math.sqrt(2)), abs=1e-15)
    # turning point of the Fig. 1 well reduced to sinh(x) = u
    w = asinh_principal(0.745356 - 0.666667j)
    assert abs(w - (0.781368 - 0.528945j)) < 1e-5


def test_asinh_principal_rejects_nonfinite():
    with pytest.raises(InvalidArgument):
        asinh_principal(complex(float("nan"), 0))
    with pytest.raises(InvalidArgument):
        asinh_principal(float("inf"))


@given(complexes)
def test_asinh_principal_is_odd_off_the_cut(u):
    assume(not (abs(u.real) < 1e-6 and abs(u.imag) >= 1))
    assert abs(asinh_principal(-u) + asinh_principal(u)) < 1e-12 * (1 + abs(u))


@given(complexes, st.integers(-6, 6))
def test_tracked_value_inverts_sinh(u, n):
    # at u = +-i the even and odd sheets meet and the branch is genuinely ambiguous
    assume(abs(u - 1j) > 1e-6 and abs(u + 1j) > 1e-6)
    start = (asinh_principal(u) if n % 2 == 0 else -asinh_principal(u)) + 1j * math.pi * n
    ctx = BranchContext.seeded(start)
    assume(ctx.family == n)  # seeding is ambiguous exactly at branch points
    w, _ = asinh_tracked(u, ctx)
    assert abs(cmath.sinh(w) - u) <= 1e-12 * max(1.0, abs(u))


def test_tracked_fixed_point():
    u = 0.745356 - 0.666667j
    ctx = BranchContext(asinh_principal(u), 0)
    w, ctx2 = asinh_tracked(u, ctx)
    assert w == asinh_principal(u)
    assert ctx2.family == 0


def test_tracked_follows_principal_on_principal_sheet():
    us = 0.3 * np.exp(1j * np.linspace(0, 2 * np.pi, 200))
    ctx = BranchContext(asinh_principal(us[0]), 0)
    for u in us:
        w, ctx = asinh_tracked(u, ctx)
        assert w == asinh_principal(u)


def test_tracked_continues_around_branch_point():
    # a loop around u = i returns on the odd sheet: w -> i pi - w
    us = 1j + 0.5 * np.exp(1j * np.linspace(-np.pi / 2, 1.5 * np.pi, 2001))
    ctx = BranchContext(asinh_principal(us[0]), 0)
    ws = []
    for u in us:
        w, ctx = asinh_tracked(u, ctx)
        ws.append(w)
    ws = np.array(ws)
    assert np.max(np.abs(np.diff(ws))) < 0.01
    assert abs(ws[-1] - (1j * math.pi - ws[0])) < 1e-12
    assert ctx.family == 1


def test_tracked_step_too_large():
    ctx = BranchContext(0j, 0)
    # principal value of u=i-0.01 is close to i pi/2, as is the odd candidate: ambiguous
    with pytest.raises(BranchStepError):
        asinh_tracked(1j * 1.0, ctx)


def test_branch_window_is_relative_to_current_family():
    ctx = BranchContext.seeded(0.2 + 1j * math.pi * 20)
    assert ctx.family == 20
    w, ctx2 = asinh_tracked(cmath.sinh(0.2 + 0.01j), ctx)
    assert ctx2.family == 20
    assert abs(w - (0.2 + 0.01j + 1j * math.pi * 20)) < 1e-12


def test_numeric_derivative_polynomial_and_constant():
    at = PhasePoint(0j, 1 + 0j)
    assert abs(numeric_derivative(lambda x, p: p * p, at, "p", 1e-5) - 2) < 1e-8
    assert abs(numeric_derivative(lambda x, p: 3.0 + 0j, at, "x")) < 1e-12
    with pytest.raises(InvalidArgument):
        numeric_derivative(lambda x, p: x, at, "q")
    with pytest.raises(InvalidArgument):
        numeric_derivative(lambda x, p: x, at, "x", h=0)


def test_numeric_derivative_of_hamiltonian_matches_analytic_force():
    params = ScarfParams(2, 6, 2j)
    at = PhasePoint(0.3 + 0.1j, 0.2 + 0j)
    d = numeric_derivative(lambda x, p: hamiltonian(params, x, p), at, "x")
    assert abs(d - eval_dV(params, at.x)) < 1e-6


def test_numeric_derivative_nonfinite_stencil():
    with pytest.raises(PtorbitError):
        numeric_derivative(lambda x, p: 1 / (x - 1e-6) if abs(x) < 1e-5 else float("inf"), PhasePoint(0j, 0j), "x")


def test_derivative_is_second_order():
    fn = cmath.exp
    z = 0.3 + 0.2j
    e1 = abs(derivative(fn, z, 1e-2) - fn(z))
    e2 = abs(derivative(fn, z, 5e-3) - fn(z))
    assert 3.6 < e1 / e2 < 4.4


def test_canonical_bracket():
    at = PhasePoint(0.3 + 0.1j, 0.2 + 0j)
    assert abs(poisson_bracket(lambda x, p: x, lambda x, p: p, at) - 1) < 1e-8


@settings(max_examples=50, deadline=None)
@given(complexes, complexes)
def test_bracket_antisymmetry(x, p):
    F = lambda a, b: a * a * b + cmath.sin(b)
    G = lambda a, b: cmath.exp(0.3 * a) * b * b
    at = PhasePoint(x, p)
    fg = poisson_bracket(F, G, at)
    assert abs(fg + poisson_bracket(G, F, at)) < 1e-10 * (1 + abs(fg))
    assert abs(poisson_bracket(F, F, at)) < 1e-10 * (1 + abs(fg))
