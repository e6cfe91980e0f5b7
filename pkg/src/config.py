"""Configuration for the rate-region toolkit."""

import os
from dataclasses import dataclass, field, fields
from pathlib import Path

import yaml

from .exceptions import ConfigError

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config.yaml"


@dataclass
class GridConfig:
    """Grid resolutions used by sweeps and verifications.

    Attributes:
        grid_n: s-grid / P(X)-grid resolution for generic bounds
        aux_card: Auxiliary alphabet size for generic bounds
        weight_grid: Resolution of the auxiliary weight simplex
        s_grid: s-grid for the closed-form BSSC+BSC curves
        u_grid: u-grid for Region A
        fig3_grid: x-grid for the appendix comparison
        gerber_grid: y-grid for the convexity check
        claim1_grid: x-grid for the derivative-ratio check
    """

    grid_n: int = 101
    aux_card: int = 3
    weight_grid: int = 21
    s_grid: int = 513
    u_grid: int = 513
    fig3_grid: int = 2001
    gerber_grid: int = 1001
    claim1_grid: int = 2001


@dataclass
class ToleranceConfig:
    """Numerical tolerances."""

    containment: float = 1e-9
    identity: float = 1e-10
    grid_inequality: float = 1e-9
    derivative: float = 1e-6
    relabel: float = 1e-12


@dataclass
class ToolkitConfig:
    """Top-level toolkit configuration.

    Attributes:
        grids: Grid resolutions
        tolerances: Numerical tolerances
        threads: Worker threads for grid sweeps (1 = serial)
        seed: Default seed for randomized suites
        log_level: Logging level name
    """

    grids: GridConfig = field(default_factory=GridConfig)
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    threads: int = 1
    seed: int = 0
    log_level: str = "INFO"

    @classmethod
    def from_yaml(cls, path: str | Path = DEFAULT_CONFIG_PATH) -> "ToolkitConfig":
        """Load configuration from a YAML file.

        `${VAR}` placeholders are expanded from the environment; values that
        expand to an empty string keep the built-in default.
        """
        path = Path(path)
        try:
            with open(path) as f:
                raw = yaml.safe_load(f) or {}
        except FileNotFoundError as e:
            raise ConfigError(f"config file not found: {path}") from e
        except yaml.YAMLError as e:
            raise ConfigError(f"invalid YAML in {path}: {e}") from e

        grids = _section(GridConfig, raw.get("grids", {}))
        tolerances = _section(ToleranceConfig, raw.get("tolerances", {}))
        runtime = raw.get("runtime", {}) or {}
        logging_cfg = raw.get("logging", {}) or {}

        config = cls(grids=grids, tolerances=tolerances)
        threads = _expand(runtime.get("threads"))
        if threads not in (None, ""):
            config.threads = _to_int("runtime.threads", threads)
        seed = _expand(runtime.get("seed"))
        if seed not in (None, ""):
            config.seed = _to_int("runtime.seed", seed)
        level = _expand(logging_cfg.get("level"))
        if level:
            config.log_level = str(level).upper()
        return config

    @classmethod
    def from_env(cls, base: "ToolkitConfig | None" = None) -> "ToolkitConfig":
        """Apply environment overrides.

        Environment variables:
            RRKIT_THREADS: Worker threads for grid sweeps
            RRKIT_LOG_LEVEL: Logging level name
        """
        config = base or cls()
        threads = os.getenv("RRKIT_THREADS", "")
        if threads:
            config.threads = _to_int("RRKIT_THREADS", threads)
        level = os.getenv("RRKIT_LOG_LEVEL", "")
        if level:
            config.log_level = level.upper()
        return config

    @classmethod
    def load(cls, path: str | Path | None = None) -> "ToolkitConfig":
        """Load YAML defaults (RRKIT_CONFIG or the repository config.yaml), then env."""
        path = path or os.getenv("RRKIT_CONFIG") or DEFAULT_CONFIG_PATH
        base = cls.from_yaml(path) if Path(path).exists() else cls()
        config = cls.from_env(base)
        config.validate()
        return config

    def validate(self) -> None:
        """Validate configuration.

        Raises:
            ConfigError: If any field is out of range.
        """
        bad = []
        g = self.grids
        if g.aux_card < 1:
            bad.append("grids.aux_card")
        for name in ("grid_n", "weight_grid", "s_grid", "u_grid",
                     "fig3_grid", "gerber_grid", "claim1_grid"):
            if getattr(g, name) < 2:
                bad.append(f"grids.{name}")
        for f in fields(self.tolerances):
            if getattr(self.tolerances, f.name) < 0:
                bad.append(f"tolerances.{f.name}")
        if self.threads < 1:
            bad.append("threads")
        if self.log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            bad.append("log_level")

        if bad:
            raise ConfigError(f"Invalid configuration fields: {', '.join(bad)}")


def _expand(value):
    if isinstance(value, str):
        expanded = os.path.expandvars(value).strip()
        # unset variables are left as "${VAR}" by expandvars
        return "" if "${" in expanded else expanded
    return value


def _to_int(name: str, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{name} must be an integer, got {value!r}") from e


def _section(cls, raw: dict):
    known = {f.name: f.type for f in fields(cls)}
    unknown = set(raw or {}) - set(known)
    if unknown:
        raise ConfigError(f"Unknown {cls.__name__} keys: {', '.join(sorted(unknown))}")
    values = {}
    for key, value in (raw or {}).items():
        value = _expand(value)
        if value in (None, ""):
            continue
        try:
            values[key] = float(value) if known[key] in (float, "float") else int(value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{cls.__name__}.{key}: invalid value {value!r}") from e
    return cls(**values)
