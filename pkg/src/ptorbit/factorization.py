"""Classical factorization H = A+ A- + gamma(H) and its integrals of motion.

The ladder functions are

    A+- = -+ i f(x) p + s(H) g(x) + varphi(x) + phi(H),    s(H) = sqrt(-H),

with the negative-energy root used throughout. They satisfy
{A+-, H} = +- i alpha(H) A+- and {A+, A-} = -i beta(H), so along any solution
A+-(t) = c(E) exp(+- i (theta0 + alpha(E) t)).
"""

from __future__ import annotations

import cmath
import sys
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DegenerateError, OffShellError, PoleProximityError
from .numerics import PhasePoint, derivative, poisson_bracket
from .scarf import ScarfParams, eval_dV, eval_V, hamiltonian

SHELL_TOL = 1e-8
SCHEME_TOL = 1e-8
BRACKET_TOL = 1e-5
PRODUCT_TOL = 1e-10
EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class FactorizationScheme:
    """Functions of position and of energy that define the ladder construction."""

    f: Callable
    g: Callable
    varphi: Callable
    phiH: Callable
    alphaH: Callable
    gammaH: Callable
    root: Callable = field(default=lambda H: cmath.sqrt(-H))
    betaH: Callable | None = None

    def B(self, x, H):
        """The p-independent part of A+-: s(H) g(x) + varphi(x) + phi(H)."""
        return self.root(H) * self.g(x) + self.varphi(x) + self.phiH(H)

    def a_plus(self, x, p, H):
        return -1j * self.f(x) * p + self.B(x, H)

    def a_minus(self, x, p, H):
        return 1j * self.f(x) * p + self.B(x, H)


def beta_rhs(scheme: FactorizationScheme, params: ScarfParams, h: float = 1e-4):
    """beta(H, x) from the determining relations, with derivatives taken numerically.

    Uses beta = 4 f' (H - V) dB/dH - 2 f dB/dx - 2 f V' dB/dH, which is the
    bracket {A+, A-} = -i beta written out; with s(H) = sqrt(H) it is term by
    term the textbook expression, and with s(H) = sqrt(-H) the sign of the
    1/s term follows from ds/dH = -1/(2s).
    """

    def beta(H, x):
        V = eval_V(params, x)
        dV = eval_dV(params, x)
        f = scheme.f(x)
        df = derivative(scheme.f, x, h, order=4)
        dB_dx = derivative(lambda y: scheme.B(y, H), x, h, order=4)
        dB_dH = derivative(lambda e: scheme.B(x, e), H, h, order=4)
        return 4 * df * (H - V) * dB_dH - 2 * f * dB_dx - 2 * f * dV * dB_dH

    return beta


def scarf_scheme(params: ScarfParams) -> FactorizationScheme:
    """Closed-form scheme for the Scarf II well: g = sinh, f = cosh, varphi = 0."""
    a, g0, d = params.alpha0, params.gamma0, params.delta
    scheme = FactorizationScheme(
        f=lambda x: cmath.cosh(0.5 * a * x),
        g=lambda x: cmath.sinh(0.5 * a * x),
        varphi=lambda x: 0j,
        phiH=lambda H: d / cmath.sqrt(-H),
        alphaH=lambda H: a * cmath.sqrt(-H),
        gammaH=lambda H: -g0 + d * d / H,
    )
    object.__setattr__(scheme, "betaH", beta_rhs(scheme, params))
    return scheme


def c_of_E(params: ScarfParams, E) -> complex:
    """c(E) = sqrt(E + gamma0 - delta^2 / E), principal branch."""
    E = complex(E)
    if E == 0:
        raise DegenerateError("c(E) is undefined at E = 0")
    terms = (E, params.gamma0, -params.delta**2 / E)
    radicand = sum(terms)
    # below its own cancellation error the radicand is zero (window endpoints)
    if abs(radicand) <= 8 * EPS * sum(abs(v) for v in terms):
        return 0j
    return cmath.sqrt(radicand)


def shell_residual(params: ScarfParams, state: PhasePoint, E) -> float:
    return abs(hamiltonian(params, state.x, state.p) - E)


def _require_on_shell(params, state, E, tol=SHELL_TOL):
    res = shell_residual(params, state, E)
    if res > tol * (1 + abs(E)):
        raise OffShellError(res)


def ladder_values(scheme: FactorizationScheme, params: ScarfParams, state: PhasePoint, E):
    """(A+, A-) at an on-shell state, with the energy-dependent parts taken at E."""
    E = complex(E)
    _require_on_shell(params, state, E)
    return scheme.a_plus(state.x, state.p, E), scheme.a_minus(state.x, state.p, E)


def theta0_from_initial(scheme: FactorizationScheme, params: ScarfParams, state: PhasePoint, E) -> complex:
    """Initial phase with A+ = c(E) exp(i theta0); complex in general."""
    c = c_of_E(params, E)
    if abs(c) < 1e-14:
        raise DegenerateError("c(E) = 0: the phase theta0 is undefined at a window endpoint")
    a_plus, _ = ladder_values(scheme, params, state, E)
    return -1j * cmath.log(a_plus / c)


def q_values(scheme: FactorizationScheme, params: ScarfParams, state: PhasePoint, E, t: float):
    """Integrals of motion Q+- = A+- exp(-+ i alpha(E) t)."""
    a_plus, a_minus = ladder_values(scheme, params, state, E)
    alpha = scheme.alphaH(complex(E))
    return a_plus * cmath.exp(-1j * alpha * t), a_minus * cmath.exp(1j * alpha * t)


@dataclass
class ResidualRow:
    name: str
    value: float
    threshold: float
    samples: int = 1

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.threshold)


@dataclass
class ResidualReport:
    rows: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.rows)

    def add(self, name, value, threshold, samples=1):
        self.rows.append(ResidualRow(name, float(value), float(threshold), samples))

    def to_records(self):
        return [
            {"check": r.name, "max_residual": r.value, "threshold": r.threshold, "samples": r.samples, "passed": r.passed}
            for r in self.rows
        ]

    def to_table(self) -> str:
        width = max([len(r.name) for r in self.rows] + [5])
        lines = [f"{'check':<{width}}  {'max_residual':>12}  {'threshold':>9}  status"]
        for r in self.rows:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{r.name:<{width}}  {r.value:12.3e}  {r.threshold:9.1e}  {status}")
        return "\n".join(lines)


def on_shell_points(params: ScarfParams, E, n: int, seed: int = 0, box=(-1.5, 1.5, -0.7, 0.7)):
    """Random phase points with p^2 + V(x) = E and either momentum sign.

    ``box`` bounds (Re, Im) of alpha0 x / 2; the default strip keeps
    |cosh(alpha0 x / 2)| >= cos(0.7), far enough from the poles of V that
    finite-difference brackets stay at their h^2 floor.
    """
    rng = np.random.default_rng(seed)
    pts = []
    scale = 2.0 / params.alpha0
    while len(pts) < n:
        x = scale * complex(rng.uniform(box[0], box[1]), rng.uniform(box[2], box[3]))
        try:
            V = eval_V(params, x)
        except PoleProximityError:
            continue
        p = cmath.sqrt(complex(E) - V)
        if rng.random() < 0.5:
            p = -p
        pts.append(PhasePoint(x, p))
    return pts


def verify_scheme(scheme: FactorizationScheme, params: ScarfParams, x_samples, E_samples,
                  h: float = 1e-5, n_bracket: int = 10, seed: int = 0) -> ResidualReport:
    """Residuals of the determining equations and of the deformed Poisson algebra."""
    report = ResidualReport()
    diff_h = 1e-3
    worst_f = worst_v = 0.0
    count = 0
    for E in E_samples:
        E = complex(E)
        s = scheme.root(E)
        alpha = scheme.alphaH(E)
        for x in x_samples:
            x = complex(x)
            try:
                V = eval_V(params, x)
                dV = eval_dV(params, x)
            except PoleProximityError:
                warnings.warn(f"skipping sample x={x!r}: too close to a pole of V")
                report.skipped.append(x)
                continue
            f = scheme.f(x)
            df = derivative(scheme.f, x, diff_h, order=4)
            dg = derivative(scheme.g, x, diff_h, order=4)
            dvarphi = derivative(scheme.varphi, x, diff_h, order=4)
            res_f = f - (2.0 / alpha) * (dvarphi + dg * s)
            res_v = f * dV - 2 * df * (E - V) - alpha * (scheme.g(x) * s + scheme.varphi(x) + scheme.phiH(E))
            worst_f = max(worst_f, abs(res_f))
            worst_v = max(worst_v, abs(res_v))
            count += 1
    report.add("f from g (determining eq. for f)", worst_f, SCHEME_TOL, count)
    report.add("potential condition (determining eq. for V)", worst_v, SCHEME_TOL, count)

    x_field = lambda x, p: x
    p_field = lambda x, p: p
    report.add("{x, p} - 1", abs(poisson_bracket(x_field, p_field, PhasePoint(0.3 + 0.1j, 0.2), h) - 1), BRACKET_TOL)

    bracket_plus = bracket_minus = bracket_beta = 0.0
    nb = 0
    H = lambda x, p: hamiltonian(params, x, p)
    Ap = lambda x, p: scheme.a_plus(x, p, H(x, p))
    Am = lambda x, p: scheme.a_minus(x, p, H(x, p))
    beta = scheme.betaH or beta_rhs(scheme, params)
    for k, E in enumerate(E_samples):
        E = complex(E)
        alpha = scheme.alphaH(E)
        for pt in on_shell_points(params, E, n_bracket, seed=seed + k):
            ap, am = Ap(pt.x, pt.p), Am(pt.x, pt.p)
            bracket_plus = max(bracket_plus, abs(poisson_bracket(Ap, H, pt, h) - 1j * alpha * ap))
            bracket_minus = max(bracket_minus, abs(poisson_bracket(Am, H, pt, h) + 1j * alpha * am))
            bracket_beta = max(bracket_beta, abs(poisson_bracket(Ap, Am, pt, h) + 1j * beta(E, pt.x)))
            nb += 1
    report.add("{A+, H} - i alpha A+", bracket_plus, BRACKET_TOL, nb)
    report.add("{A-, H} + i alpha A-", bracket_minus, BRACKET_TOL, nb)
    report.add("{A+, A-} + i beta", bracket_beta, BRACKET_TOL, nb)
    return report


def product_identity_residual(scheme: FactorizationScheme, params: ScarfParams, E, n: int = 100, seed: int = 0) -> float:
    """Max relative deviation of A+ A- from E + gamma0 - delta^2/E over random on-shell points."""
    E = complex(E)
    target = E + params.gamma0 - params.delta**2 / E
    worst = 0.0
    for pt in on_shell_points(params, E, n, seed=seed):
        ap, am = ladder_values(scheme, params, pt, E)
        worst = max(worst, abs(ap * am - target) / max(abs(target), 1e-300))
    return worst


def window_endpoint_check(params: ScarfParams, endpoints) -> float:
    return max(abs(c_of_E(params, e)) for e in endpoints)


__all__ = [
    "FactorizationScheme",
    "ResidualReport",
    "beta_rhs",
    "c_of_E",
    "ladder_values",
    "on_shell_points",
    "product_identity_residual",
    "q_values",
    "scarf_scheme",
    "theta0_from_initial",
    "verify_scheme",
]
