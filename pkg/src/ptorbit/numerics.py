"""Complex scalar helpers: branch-aware asinh, finite differences, Poisson brackets.

All quantities are IEEE double precision. Complex ``sqrt`` and ``log`` use the
principal branch (argument in (-pi, pi]).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .errors import BranchStepError, InvalidArgument, PtorbitError

DEFAULT_STEP = 1e-5
DEFAULT_BRANCH_WINDOW = 8


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def check_finite(z, name="value") -> complex:
    z = complex(z)
    if not _finite(z):
        raise InvalidArgument(f"{name} must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class PhasePoint:
    """Complex position and momentum at a real time."""

    x: complex
    p: complex
    t: float = 0.0


@dataclass(frozen=True)
class BranchContext:
    """Last accepted asinh value and the branch index it lives on.

    Branch ``n`` means the value is ``(-1)**n * asinh_principal(u) + i*pi*n``.
    """

    previous_value: complex
    family: int = 0

    @classmethod
    def seeded(cls, w: complex) -> "BranchContext":
        """Context whose previous value is ``w``; the family is inferred."""
        w = complex(w)
        w0 = asinh_principal(cmath.sinh(w))
        big = 1 << 40
        n_even = _nearest_in_family(w0, 0, w, -big, big)
        n_odd = _nearest_in_family(-w0, 1, w, -big, big)
        closer_even = abs(asinh_candidate(w0, n_even) - w) <= abs(asinh_candidate(w0, n_odd) - w)
        return cls(w, n_even if closer_even else n_odd)


def asinh_principal(u) -> complex:
    """Principal inverse hyperbolic sine, ``log(u + sqrt(u**2 + 1))``.

    >>> asinh_principal(0)
    0j
    """
    u = check_finite(u, "u")
    return cmath.asinh(u)


def asinh_candidate(w0: complex, n: int) -> complex:
    return (w0 if n % 2 == 0 else -w0) + 1j * math.pi * n


def _nearest_in_family(base: complex, parity: int, target: complex, lo: int, hi: int) -> int:
    """Branch index n of the given parity minimising |base + i*pi*n - target|."""
    n = 2 * round(((target - base).imag / math.pi - parity) / 2) + parity
    lo += (lo - parity) % 2
    hi -= (hi - parity) % 2
    return min(max(n, lo), hi)


def asinh_tracked(u, ctx: BranchContext, window: int = DEFAULT_BRANCH_WINDOW):
    """Continue asinh along a path by picking the branch nearest the last value.

    Candidates are ``(-1)**n * asinh_principal(u) + i*pi*n`` with ``n`` within
    ``window`` of the context's current family, so long drifts across branch
    strips stay trackable.

    Returns:
        (value, new_ctx)

    Raises:
        BranchStepError: if the jump from the previous value is at least half
            the distance between the chosen candidate and its closest rival.
    """
    w0 = asinh_principal(u)
    prev = ctx.previous_value
    lo, hi = ctx.family - window, ctx.family + window
    n_even = _nearest_in_family(w0, 0, prev, lo, hi)
    n_odd = _nearest_in_family(-w0, 1, prev, lo, hi)
    c_even = asinh_candidate(w0, n_even)
    c_odd = asinh_candidate(w0, n_odd)
    if abs(c_even - prev) <= abs(c_odd - prev):
        n, best, rival_base, rival_parity = n_even, c_even, -w0, 1
    else:
        n, best, rival_base, rival_parity = n_odd, c_odd, w0, 0
    m = _nearest_in_family(rival_base, rival_parity, best, n - window - 2, n + window + 2)
    rival = asinh_candidate(w0, m)
    spacing = min(2 * math.pi, abs(rival - best))
    jump = abs(best - prev)
    if jump >= 0.5 * spacing:
        raise BranchStepError(
            f"asinh branch ambiguous: jump {jump:.3e} vs candidate spacing {spacing:.3e}"
        )
    return best, BranchContext(best, n)


def derivative(fn: Callable[[complex], complex], z, h: float = DEFAULT_STEP, order: int = 2) -> complex:
    """Central difference of a holomorphic function along the real direction."""
    if h <= 0:
        raise InvalidArgument("step h must be positive")
    z = complex(z)
    if order == 2:
        vals = [fn(z + h), fn(z - h)]
        d = (vals[0] - vals[1]) / (2 * h)
    elif order == 4:
        vals = [fn(z - 2 * h), fn(z - h), fn(z + h), fn(z + 2 * h)]
        d = (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * h)
    else:
        raise InvalidArgument("order must be 2 or 4")
    if not all(_finite(complex(v)) for v in vals):
        raise PtorbitError(f"non-finite value in derivative stencil at {z!r}")
    return complex(d)


def numeric_derivative(F, at: PhasePoint, wrt: str, h: float = DEFAULT_STEP) -> complex:
    """Partial derivative of a phase-space field ``F(x, p)`` by central differences."""
    if wrt == "x":
        return derivative(lambda x: F(x, at.p), at.x, h)
    if wrt == "p":
        return derivative(lambda p: F(at.x, p), at.p, h)
    raise InvalidArgument(f"wrt must be 'x' or 'p', got {wrt!r}")


def poisson_bracket(F, G, at: PhasePoint, h: float = DEFAULT_STEP) -> complex:
    """{F, G} = dF/dx dG/dp - dF/dp dG/dx, with {x, p} = 1."""
    return numeric_derivative(F, at, "x", h) * numeric_derivative(G, at, "p", h) - numeric_derivative(
        F, at, "p", h
    ) * numeric_derivative(G, at, "x", h)
