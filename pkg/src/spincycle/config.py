"""Experiment configuration: defaults, TOML ingestion, and validation.

The configuration file is TOML.  A complete annotated example ships in the
repository as ``config.example.toml``.  Unknown keys are rejected so typos
cannot silently fall back to defaults.
"""

from __future__ import annotations

import hashlib

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field
from pathlib import Path

from .noise import RfDistribution, default_rf_distribution
from .spincore import SpinSystem, default_spin_system

VALID_MODELS = ("incoherent", "decoherent", "both")
VALID_MODES = ("gate", "pulse")


@dataclass(frozen=True)
class ExperimentConfig:
    spin_system: SpinSystem = field(default_factory=default_spin_system)
    distribution: RfDistribution = field(default_factory=default_rf_distribution)
    model: str = "both"
    n_max: int = 30
    relaxation: bool = True
    mode: str = "gate"
    cycle_duration: float = 0.034  # four entangler iterations, seconds
    nutation_hz: float = 17500.0
    noisy_prep_readout: bool = False
    deterministic: bool = True
    out_dir: str = "out"

    def __post_init__(self):
        if self.model not in VALID_MODELS:
            raise ValueError(f"model must be one of {VALID_MODELS}, got {self.model!r}")
        if self.mode not in VALID_MODES:
            raise ValueError(f"run.mode must be one of {VALID_MODES}, got {self.mode!r}")
        if self.n_max < 0:
            raise ValueError("run.n_max must be non-negative")
        if self.cycle_duration <= 0:
            raise ValueError("run.cycle_duration_s must be positive")
        if self.nutation_hz <= 0:
            raise ValueError("run.nutation_hz must be positive")

    def digest(self) -> str:
        """Stable hash of all configuration values, recorded in CSV output."""
        canon = repr((self.spin_system, self.distribution.points, self.distribution.weights,
                      self.model, self.n_max, self.relaxation, self.mode,
                      self.cycle_duration, self.nutation_hz, self.noisy_prep_readout))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]


class ConfigError(ValueError):
    """Raised when a configuration file is missing, malformed, or invalid."""


def _check_keys(section: dict, allowed: set[str], where: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")


def _spin_system_from(section: dict) -> SpinSystem:
    _check_keys(section, {"frequencies_hz", "couplings_hz", "t1_s", "t2_s"}, "[spin_system]")
    base = default_spin_system()
    freqs = section.get("frequencies_hz", base.frequencies)
    couplings = section.get("couplings_hz", base.couplings)
    t1 = section.get("t1_s", base.t1)
    t2 = section.get("t2_s", base.t2)
    try:
        return SpinSystem(n_qubits=len(freqs), frequencies=freqs,
                          couplings=couplings, t1=t1, t2=t2)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"invalid [spin_system]: {exc}") from exc


def _distribution_from(section: dict) -> RfDistribution:
    _check_keys(section, {"points", "weights"}, "[rf_distribution]")
    if ("points" in section) != ("weights" in section):
        raise ConfigError("[rf_distribution] must give both points and weights, or neither")
    if "points" not in section:
        return default_rf_distribution()
    try:
        return RfDistribution(points=section["points"], weights=section["weights"])
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"invalid [rf_distribution]: {exc}") from exc


def load_config(path: str | Path | None = None) -> ExperimentConfig:
    """Load and validate a configuration file; None gives the full default."""
    if path is None:
        return ExperimentConfig()
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"configuration file not found: {path}")
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc

    _check_keys(raw, {"model", "spin_system", "rf_distribution", "run", "output"},
                "the configuration root")
    run = raw.get("run", {})
    _check_keys(run, {"n_max", "relaxation", "mode", "cycle_duration_s",
                      "nutation_hz", "noisy_prep_readout", "deterministic"}, "[run]")
    output = raw.get("output", {})
    _check_keys(output, {"directory"}, "[output]")

    defaults = ExperimentConfig()
    try:
        return ExperimentConfig(
            spin_system=_spin_system_from(raw.get("spin_system", {})),
            distribution=_distribution_from(raw.get("rf_distribution", {})),
            model=raw.get("model", defaults.model),
            n_max=run.get("n_max", defaults.n_max),
            relaxation=run.get("relaxation", defaults.relaxation),
            mode=run.get("mode", defaults.mode),
            cycle_duration=run.get("cycle_duration_s", defaults.cycle_duration),
            nutation_hz=run.get("nutation_hz", defaults.nutation_hz),
            noisy_prep_readout=run.get("noisy_prep_readout", defaults.noisy_prep_readout),
            deterministic=run.get("deterministic", defaults.deterministic),
            out_dir=output.get("directory", defaults.out_dir),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
