"""JSON scenario files.

    {"alpha0": 2, "gamma0": 6, "delta": {"re": 0, "im": 2},
     "energy": {"re": -3, "im": 0},
     "initial": {"x0": {"re": 0.5, "im": 0.2}, "p_sign": "+"},
     "t_max": 10, "dt": 0.001, "label": "fig1"}

``initial`` is one of ``{"theta0": c}``, ``{"x0": c, "p_sign": "+"|"-"}`` or
``{"x0": c, "p0": c}``. An optional ``curves`` list holds further initial
objects drawn alongside ``initial`` by the plot command.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from .errors import InvalidArgument, OffShellError, UnsupportedCase
from .exact import SolutionSpec, solution_from_position, solution_from_state, solution_from_theta0
from .factorization import c_of_E
from .scarf import ScarfParams, energy_window, hamiltonian

_COMPLEX = {
    "type": "object",
    "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
    "required": ["re", "im"],
    "additionalProperties": False,
}

_INITIAL = {
    "oneOf": [
        {"type": "object", "properties": {"theta0": _COMPLEX}, "required": ["theta0"], "additionalProperties": False},
        {
            "type": "object",
            "properties": {"x0": _COMPLEX, "p_sign": {"enum": ["+", "-"]}},
            "required": ["x0", "p_sign"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"x0": _COMPLEX, "p0": _COMPLEX},
            "required": ["x0", "p0"],
            "additionalProperties": False,
        },
    ]
}

SCHEMA = {
    "type": "object",
    "properties": {
        "alpha0": {"type": "number", "exclusiveMinimum": 0},
        "gamma0": {"type": "number", "exclusiveMinimum": 0},
        "delta": _COMPLEX,
        "energy": _COMPLEX,
        "initial": _INITIAL,
        "curves": {"type": "array", "items": _INITIAL},
        "t_max": {"type": "number", "minimum": 0},
        "dt": {"type": ["number", "null"], "exclusiveMinimum": 0},
        "label": {"type": "string"},
    },
    "required": ["alpha0", "gamma0", "delta", "energy", "initial", "t_max"],
    "additionalProperties": False,
}

SHELL_TOL = 1e-8


class ConfigError(InvalidArgument):
    """Malformed scenario file; the message names the offending line or field."""


def _c(obj) -> complex:
    return complex(obj["re"], obj["im"])


@dataclass(frozen=True)
class Scenario:
    params: ScarfParams
    energy: complex
    initial: dict
    t_max: float
    dt: float | None = None
    label: str = "scenario"
    curves: tuple = field(default=())

    @classmethod
    def from_dict(cls, data) -> "Scenario":
        try:
            jsonschema.validate(data, SCHEMA)
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise ConfigError(f"field {where}: {exc.message}") from None
        params = ScarfParams(float(data["alpha0"]), float(data["gamma0"]), _c(data["delta"]))
        sc = cls(
            params=params,
            energy=_c(data["energy"]),
            initial=data["initial"],
            t_max=float(data["t_max"]),
            dt=None if data.get("dt") is None else float(data["dt"]),
            label=data.get("label", "scenario"),
            curves=tuple(data.get("curves", ())),
        )
        sc._check()
        return sc

    @classmethod
    def load(cls, path) -> "Scenario":
        text = Path(path).read_text()
        if not text.strip():
            raise ConfigError(f"{path}: line 1: empty config file")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(data)

    def _check(self):
        if self.energy == 0:
            raise ConfigError("field energy: E = 0 is not allowed")
        try:
            window = energy_window(self.params)
        except UnsupportedCase:
            window = None
        if window is not None:
            if abs(c_of_E(self.params, self.energy)) < 1e-9:
                warnings.warn(f"energy {self.energy} sits on the boundary of the allowed window")
            elif not window.contains(self.energy, tol=1e-12):
                raise ConfigError(
                    f"field energy: {self.energy} lies outside the allowed window [{window.lower}, {window.upper}]"
                )
        for k, ini in enumerate((self.initial,) + self.curves):
            if "p0" in ini:
                res = abs(hamiltonian(self.params, _c(ini["x0"]), _c(ini["p0"])) - self.energy)
                if res > SHELL_TOL * (1 + abs(self.energy)):
                    where = "initial" if k == 0 else f"curves/{k - 1}"
                    raise ConfigError(f"field {where}: (x0, p0) is off the energy shell, |H - E| = {res:.3e}")

    def solution(self, initial: dict | None = None) -> SolutionSpec:
        ini = self.initial if initial is None else initial
        if "theta0" in ini:
            return solution_from_theta0(self.params, self.energy, _c(ini["theta0"]))
        if "p0" in ini:
            try:
                return solution_from_state(self.params, _c(ini["x0"]), _c(ini["p0"]), self.energy)
            except OffShellError as exc:
                raise ConfigError(f"field initial: {exc}") from None
        return solution_from_position(self.params, self.energy, _c(ini["x0"]), ini["p_sign"])

    def solutions(self):
        return [self.solution(ini) for ini in (self.initial,) + self.curves]

    @property
    def step(self) -> float:
        return self.dt if self.dt is not None else self.solution().default_dt()
