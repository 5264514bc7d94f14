"""Experiment configuration: flat ``key = value`` files plus flag overrides."""

from dataclasses import dataclass, fields, replace
from pathlib import Path

EXPERIMENTS = ("example1", "example2", "thermal")
LOG_BASES = {"natural": None, "two": 2.0}

_TIME_DEFAULTS = {
    "example1": (4.0, 8.0, 4e-5),
    "example2": (4.0, 8.0, 4e-5),
    "thermal": (0.0, 2.0, 4e-5),
}


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    x_min: float = 0.27
    x_max: float = 0.9
    x_step: float = 0.001
    t_min: float = 4.0
    t_max: float = 8.0
    dt: float = 4e-5
    beta: float = 1.0
    log_base: str = "natural"
    zero_eps: float = 1e-9
    match_tol: float = 0.01
    interaction_scale: float = 1.0
    output_dir: str = "out"
    seed: int = 0

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}")
        if self.log_base not in LOG_BASES:
            raise ValueError(f"log_base must be one of {tuple(LOG_BASES)}, got {self.log_base!r}")
        if not (self.x_step > 0 and self.x_min < self.x_max):
            raise ValueError("x grid must have x_min < x_max and x_step > 0")
        if not (self.dt > 0 and self.t_min < self.t_max):
            raise ValueError("time grid must have t_min < t_max and dt > 0")
        if self.experiment == "thermal" and not self.beta > 0:
            raise ValueError("thermal experiment needs beta > 0")

    @property
    def base(self):
        return LOG_BASES[self.log_base]

    @property
    def output_path(self) -> Path:
        return Path(self.output_dir)


FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}
_CASTS = {"float": float, "int": int, "str": str, float: float, int: int, str: str}


def coerce(key: str, value):
    if key not in FIELD_TYPES or key == "experiment":
        raise KeyError(f"unknown config key {key!r}")
    return _CASTS[FIELD_TYPES[key]](value)


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {n}: expected key = value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = coerce(key, value)
    return out


def load_config(experiment: str, path=None, overrides=None) -> ExperimentConfig:
    t_min, t_max, dt = _TIME_DEFAULTS.get(experiment, (4.0, 8.0, 4e-5))
    cfg = ExperimentConfig(experiment, t_min=t_min, t_max=t_max, dt=dt)
    values = {}
    if path is not None:
        values.update(parse_config_text(Path(path).read_text()))
    for key, value in (overrides or {}).items():
        values[key] = coerce(key, value)
    return replace(cfg, **values)
