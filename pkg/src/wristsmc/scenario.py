"""Scenario description, defaults and resolution of plant/controller objects.

A scenario document is JSON with a ``schema_version`` field. Every key is
optional; missing keys take the packaged defaults (``data/defaults.json``),
and unknown keys are rejected.
"""

from __future__ import annotations

import copy
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, fields
from functools import lru_cache
from importlib import resources
from typing import Any

from .beam import BeamSection, desired_bending_angle
from .control import PidGains, SmcGains
from .errors import ConfigError, UnknownParameter
from .plant import LumpedPlantParams

SCHEMA_VERSION = 1
MAX_SAMPLES = 10**7


@lru_cache(maxsize=None)
def _defaults_text() -> str:
    return resources.files("wristsmc").joinpath("data/defaults.json").read_text()


def defaults() -> dict:
    """A fresh copy of the packaged default configuration."""
    return json.loads(_defaults_text())


def default_section() -> BeamSection:
    return BeamSection(**defaults()["section"])


def printed_coefficients(assignment: str) -> tuple[float, float]:
    """(stiffness, damping) for a reading of the two published coefficients.

    ``dimensional`` takes 0.615 as stiffness (N m/rad) and 0.105 as damping
    (N m s/rad); ``as_printed`` swaps them, following the word order in which
    they were published.
    """
    first, second = defaults()["printed_coefficients"].values()
    if assignment == "dimensional":
        return first, second
    if assignment == "as_printed":
        return second, first
    raise ConfigError(f"unknown coefficient assignment {assignment!r}")


@dataclass(frozen=True)
class PlantConfig:
    kind: str = "lumped"
    coefficients: str = "dimensional"
    stiffness: float | None = None
    damping: float | None = None
    inertia: float | None = None
    f_max: float = 30.0
    nodes: int = 41
    pde_damping: float = 5.0


@dataclass(frozen=True)
class ControllerConfig:
    kind: str = "smc"
    gains: tuple = (50.0, 1.0, 40.0)
    switching: str = "tanh"
    model: str = "nominal"
    integral_limit: float = 1.0


@dataclass(frozen=True)
class Reference:
    kind: str = "step"
    final: float = 0.5236
    at: float = 0.0
    rate: float = 0.0
    hold: float = 0.0
    value: float = 0.0

    def target(self) -> float:
        return {"step": self.final, "ramp": self.hold, "hold": self.value}[self.kind]

    def retarget(self, angle: float) -> "Reference":
        key = {"step": "final", "ramp": "hold", "hold": "value"}[self.kind]
        return Reference(**{**asdict(self), key: angle})

    def value_at(self, t):
        if self.kind == "step":
            return self.final if t >= self.at else 0.0
        if self.kind == "ramp":
            return math.copysign(min(abs(self.rate) * t, abs(self.hold)), self.hold)
        return self.value

    def rate_at(self, t):
        if self.kind == "ramp" and abs(self.rate) * t < abs(self.hold):
            return math.copysign(abs(self.rate), self.hold)
        return 0.0


@dataclass(frozen=True)
class Disturbance:
    kind: str = "none"
    value: float = 0.0
    start: float = 0.0
    width: float = 0.0

    def value_at(self, t):
        if self.kind == "constant":
            return self.value
        if self.kind == "pulse" and self.start <= t < self.start + self.width:
            return self.value
        return 0.0


@dataclass(frozen=True)
class Perturbation:
    inertia: float = 1.0
    stiffness: float = 1.0
    damping: float = 1.0


@dataclass(frozen=True)
class MetricsConfig:
    settling_band: float = 0.02
    tail_fraction: float = 0.1
    chattering_weight: float = 0.01


@dataclass(frozen=True)
class SectionConfig:
    E: float
    I: float
    K: float
    A: float
    G: float
    L: float
    rho: float


_NESTED = {
    "plant": PlantConfig,
    "controller": ControllerConfig,
    "reference": Reference,
    "disturbance": Disturbance,
    "perturbation": Perturbation,
    "metrics": MetricsConfig,
    "section": SectionConfig,
}

_CHOICES = {
    ("plant", "kind"): ("lumped", "pde"),
    ("plant", "coefficients"): ("dimensional", "as_printed"),
    ("controller", "kind"): ("smc", "pid"),
    ("controller", "switching"): ("tanh", "sgn"),
    ("controller", "model"): ("nominal", "augmented"),
    ("reference", "kind"): ("step", "ramp", "hold"),
    ("disturbance", "kind"): ("none", "constant", "pulse"),
}


@dataclass(frozen=True)
class Scenario:
    """A closed-loop experiment; construct with :meth:`from_dict`."""

    label: str
    plant: PlantConfig
    controller: ControllerConfig
    reference: Reference
    f_des: float | None
    tmb_radius: float | None
    duration: float
    dt: float
    disturbance: Disturbance
    perturbation: Perturbation
    metrics: MetricsConfig
    section: SectionConfig
    seed: int = 0
    _hash: str = field(default="", compare=False, repr=False)

    @classmethod
    def default(cls) -> "Scenario":
        return cls.from_dict({})

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        data = dict(data)
        version = data.pop("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {version!r}")
        base = defaults()
        merged = base["scenario"]
        merged["section"] = base["section"]
        merged = _merge(merged, data, path="")
        return cls._build(merged)

    @classmethod
    def _build(cls, d: dict) -> "Scenario":
        kwargs: dict[str, Any] = {}
        for name, value in d.items():
            if name in _NESTED:
                for key, choices in _CHOICES.items():
                    if key[0] == name and value[key[1]] not in choices:
                        raise ConfigError(f"{name}.{key[1]} must be one of {choices}, got {value[key[1]]!r}")
                if name == "controller":
                    value = {**value, "gains": tuple(float(g) for g in value["gains"])}
                kwargs[name] = _NESTED[name](**value)
            else:
                kwargs[name] = value
        sc = cls(**kwargs)
        sc._validate()
        object.__setattr__(sc, "_hash", hashlib.sha256(canonical_json(sc.to_dict()).encode()).hexdigest())
        return sc

    def _validate(self):
        if not (self.duration > 0 and self.dt > 0):
            raise ConfigError("duration and dt must be positive")
        if self.duration / self.dt > MAX_SAMPLES:
            raise ConfigError(f"duration/dt exceeds {MAX_SAMPLES} samples")
        if len(self.controller.gains) != 3:
            raise ConfigError("controller.gains needs exactly three values")
        if self.plant.nodes < 5:
            raise ConfigError("plant.nodes must be at least 5")
        if not 0 < self.metrics.tail_fraction <= 1:
            raise ConfigError("metrics.tail_fraction must lie in (0, 1]")
        try:
            self.beam_section()
            self.truth_params()
            self.controller_gains()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.f_des is not None and not self.radius() > 0:
            raise ConfigError("tmb_radius must be positive")

    # -- resolution -------------------------------------------------------

    def to_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "_hash"}
        for name in _NESTED:
            d[name] = asdict(d[name])
        d["controller"]["gains"] = list(d["controller"]["gains"])
        return {"schema_version": SCHEMA_VERSION, **d}

    @property
    def config_hash(self) -> str:
        return self._hash

    def replace(self, **changes) -> "Scenario":
        d = self.to_dict()
        d.update(changes)
        return Scenario._build({k: v for k, v in d.items() if k != "schema_version"})

    def with_value(self, path: str, value) -> "Scenario":
        """Copy with the numeric field at dotted ``path`` set to ``value``."""
        d = self.to_dict()
        d.pop("schema_version")
        parts = path.split(".")
        node = d
        try:
            for part in parts[:-1]:
                node = node[int(part)] if isinstance(node, list) else node[part]
            last = int(parts[-1]) if isinstance(node, list) else parts[-1]
            current = node[last]
        except (KeyError, IndexError, ValueError, TypeError):
            raise UnknownParameter(path) from None
        numeric = isinstance(current, (int, float)) and not isinstance(current, bool)
        optional_numeric = current is None and parts[-1] in {"stiffness", "damping", "inertia", "f_des", "tmb_radius"}
        if not (numeric or optional_numeric) or isinstance(node, str):
            raise UnknownParameter(path)
        node[last] = value
        return Scenario._build(d)

    def beam_section(self) -> BeamSection:
        return BeamSection(**asdict(self.section))

    def radius(self) -> float:
        return self.tmb_radius if self.tmb_radius is not None else defaults()["tmb_radius"]

    def resolved_reference(self) -> Reference:
        """The reference, with its target angle taken from the TMB when f_des is set."""
        if self.f_des is None:
            return self.reference
        angle = desired_bending_angle(self.beam_section(), self.f_des, self.radius())
        return self.reference.retarget(angle)

    def nominal_params(self) -> LumpedPlantParams:
        """Unperturbed plant: what the controller designer believes."""
        p = self.plant
        k0, c0 = printed_coefficients(p.coefficients)
        inertia = p.inertia if p.inertia is not None else self.beam_section().lumped_inertia
        return LumpedPlantParams(
            inertia,
            p.stiffness if p.stiffness is not None else k0,
            p.damping if p.damping is not None else c0,
            p.f_max,
        )

    def truth_params(self) -> LumpedPlantParams:
        nom = self.nominal_params()
        q = self.perturbation
        return LumpedPlantParams(nom.inertia * q.inertia, nom.stiffness * q.stiffness,
                                 nom.damping * q.damping, nom.f_max)

    def controller_gains(self) -> SmcGains | PidGains:
        a, b, c = self.controller.gains
        if self.controller.kind == "smc":
            return SmcGains(a, b, c, self.controller.switching)
        return PidGains(a, b, c, self.controller.integral_limit)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _merge(base: dict, override: dict, path: str) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        where = f"{path}{key}"
        if key not in base:
            raise ConfigError(f"unknown key {where!r}")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"{where!r} must be an object")
            out[key] = _merge(base[key], value, where + ".")
        else:
            out[key] = value
    return out


def load_document(path) -> dict:
    """Read a JSON config file and check its schema version."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(f"config must declare schema_version {SCHEMA_VERSION}")
    return doc
