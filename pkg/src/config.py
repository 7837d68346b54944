"""Configuration loader and validator."""
import os
import yaml
from pathlib import Path
from typing import Dict, Any, List, Optional
from dataclasses import dataclass, asdict, field

from src.errors import ConfigError

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config.yaml"
PHI_EVALUATOR_NAMES = ("direct", "eulerian", "components", "delcont")


@dataclass
class GuardsConfig:
    """Size guards for the exponential evaluators."""
    direct_max_edges: int = 20
    components_max_edges: int = 20
    eulerian_max_vertices: int = 24
    psi_max_vertices: int = 24
    delcont_max_core_vertices: int = 32
    oracle_max_chords: int = 8
    diagrams_max_chords: int = 6
    enumeration_max_vertices: int = 8


@dataclass
class SweepConfig:
    """Bounds and sample counts of the verification suites."""
    seed: int = 20240611
    delcont_max_n: int = 7
    agreement_max_n: int = 6
    agreement_pair_max_n: int = 7
    fourt_exhaustive_max_n: int = 6
    fourt_sample_n: int = 8
    fourt_samples: int = 10000
    relation_host_max_n: int = 3
    relation_samples: int = 1000
    relation_sample_host_n: int = 4
    dcv_host_max_n: int = 2
    cv_max_n: int = 7
    bound_max_n: int = 7
    bridge_max_chords: int = 5
    conjecture_max_n: int = 7
    psi_fourt_max_n: int = 5


@dataclass
class ReportsConfig:
    """Report output settings."""
    output_format: str = "json"
    output_dir: str = "output"
    include_timings: bool = False


@dataclass
class RuntimeConfig:
    """Worker pool settings."""
    threads: int = 1
    threads_env: str = "PHI_THREADS"


@dataclass
class BenchConfig:
    """Benchmark buckets."""
    sizes: List[int] = field(default_factory=lambda: [6, 8, 10, 12])
    densities: List[float] = field(default_factory=lambda: [0.2, 0.5])
    repeats: int = 3
    instances_per_bucket: int = 3


@dataclass
class Config:
    """Main configuration class."""
    guards: GuardsConfig
    sweeps: SweepConfig
    reports: ReportsConfig
    runtime: RuntimeConfig
    bench: BenchConfig
    default_evaluator: str = "eulerian"

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class RunConfig:
    """Effective settings of one CLI invocation; echoed into every report."""
    subcommand: str
    max_n: Optional[int]
    evaluator: str
    samples: Optional[int]
    seed: int
    output_format: str
    threads: int
    guards: GuardsConfig
    include_timings: bool = False
    suite: Optional[str] = None
    host_n: Optional[int] = None
    max_chords: Optional[int] = None

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _section(cls, values: Optional[Dict[str, Any]]):
    values = values or {}
    known = set(cls.__dataclass_fields__)
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown keys for {cls.__name__}: {sorted(unknown)}")
    return cls(**values)


def default_config() -> Config:
    return Config(
        guards=GuardsConfig(),
        sweeps=SweepConfig(),
        reports=ReportsConfig(),
        runtime=RuntimeConfig(),
        bench=BenchConfig(),
    )


def load_config(config_path: str = str(DEFAULT_CONFIG_PATH)) -> Config:
    """Load configuration from YAML file."""
    config_file = Path(config_path)
    if not config_file.exists():
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    with open(config_file, 'r') as f:
        config_dict = yaml.safe_load(f) or {}

    config = Config(
        guards=_section(GuardsConfig, config_dict.get('guards')),
        sweeps=_section(SweepConfig, config_dict.get('sweeps')),
        reports=_section(ReportsConfig, config_dict.get('reports')),
        runtime=_section(RuntimeConfig, config_dict.get('runtime')),
        bench=_section(BenchConfig, config_dict.get('bench')),
        default_evaluator=config_dict.get('default_evaluator', "eulerian"),
    )
    if config.reports.output_format not in ("json", "csv", "text"):
        raise ConfigError(f"reports.output_format must be json, csv or text, "
                          f"got {config.reports.output_format!r}")
    if config.default_evaluator not in PHI_EVALUATOR_NAMES:
        raise ConfigError(f"default_evaluator must be one of {list(PHI_EVALUATOR_NAMES)}, "
                          f"got {config.default_evaluator!r}")
    return config


def resolve_threads(flag: Optional[int], config: Config) -> int:
    """--threads flag, then the environment variable, then config.yaml."""
    if flag is not None:
        return max(1, flag)
    env_value = os.environ.get(config.runtime.threads_env)
    if env_value:
        try:
            return max(1, int(env_value))
        except ValueError:
            raise ConfigError(f"{config.runtime.threads_env}={env_value!r} is not an integer")
    return max(1, config.runtime.threads)


def apply_guard_overrides(guards: GuardsConfig, overrides: Optional[List[str]]) -> GuardsConfig:
    """Apply KEY=VALUE overrides such as direct_max_edges=24 on top of the configured guards."""
    values = asdict(guards)
    for item in overrides or []:
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or key not in values:
            raise ConfigError(f"bad guard override {item!r}; keys: {sorted(values)}")
        try:
            values[key] = int(raw)
        except ValueError:
            raise ConfigError(f"guard {key} needs an integer, got {raw!r}")
    return GuardsConfig(**values)
