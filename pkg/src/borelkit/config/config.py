import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional, Type

import dacite
import yaml
from dacite import from_dict
from yaml.loader import SafeLoader

from borelkit.config.utils_config import (
    DerivativeKind,
    LimitEnumeration,
    OutputFormat,
    Suite,
    cast_str_to_derivative_kind,
    cast_str_to_suite,
    serialize,
)
from borelkit.constants import (
    CASES_ENV,
    DEFAULT_CASES,
    DEFAULT_DEPTH,
    DEFAULT_UNIVERSE_SIZE,
    DEFAULT_WIDTH,
    DEPTH_ENV,
    UNIVERSE_ENV,
    WIDTH_ENV,
)
from borelkit.logging import get_logger

logger = get_logger(__name__)

DEFAULT_SEED = 42


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name, None)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"Ignoring {name}={value}, it should be an integer")
        return default


@dataclass
class LoggingArgs:
    """Arguments related to logging"""

    log_level: Optional[str] = None

    def __post_init__(self):
        if self.log_level is None:
            self.log_level = "warning"
        if self.log_level not in ["debug", "info", "warning", "error", "critical"]:
            raise ValueError(
                f"log_level should be a string selected in ['debug', 'info', 'warning', 'error', 'critical'] and not {self.log_level}"
            )


@dataclass
class BoundsArgs:
    """Size bounds of random instances and finite truncations; defaults come from the environment"""

    depth: Optional[int] = None
    width: Optional[int] = None
    universe: Optional[int] = None

    def __post_init__(self):
        if self.depth is None:
            self.depth = _env_int(DEPTH_ENV, DEFAULT_DEPTH)
        if self.width is None:
            self.width = _env_int(WIDTH_ENV, DEFAULT_WIDTH)
        if self.universe is None:
            self.universe = _env_int(UNIVERSE_ENV, DEFAULT_UNIVERSE_SIZE)
        for name in ("depth", "width", "universe"):
            value = getattr(self, name)
            if value < 1:
                raise ValueError(f"{name} should be a positive integer and not {value}")


@dataclass
class VerifyArgs:
    suite: Suite
    seed: Optional[int] = None
    cases: Optional[int] = None
    counterexample_dir: Optional[Path] = None

    def __post_init__(self):
        if isinstance(self.suite, str):
            self.suite = cast_str_to_suite(self.suite)
        if self.seed is None:
            self.seed = DEFAULT_SEED
        if self.cases is None:
            self.cases = _env_int(CASES_ENV, DEFAULT_CASES)
        if self.cases < 1:
            raise ValueError(f"cases should be a positive integer and not {self.cases}")
        if isinstance(self.counterexample_dir, str):
            self.counterexample_dir = Path(self.counterexample_dir)
        if self.counterexample_dir is None:
            self.counterexample_dir = Path(".")


@dataclass
class Config:
    """Main configuration class"""

    logging: LoggingArgs = field(default_factory=LoggingArgs)
    bounds: BoundsArgs = field(default_factory=BoundsArgs)
    verify: Optional[VerifyArgs] = None
    output_format: OutputFormat = OutputFormat.JSON
    enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED

    def save_as_yaml(self, file_path: str):
        config_dict = serialize(self)
        file_path = str(file_path)
        with open(file_path, "w") as f:
            yaml.dump(config_dict, f)

        # Sanity test config can be reloaded
        _ = get_config_from_file(file_path, config_class=self.__class__)

    def as_dict(self) -> dict:
        return serialize(self)


def get_config_from_dict(config_dict: dict, config_class: Type = Config, skip_unused_config_keys: bool = False):
    """Get a config object from a dictionary

    Args:
        config_dict: dictionary of arguments
        config_class: type of the config object to build
        skip_unused_config_keys: whether to skip unused first-nesting-level keys in the config file
    """
    if skip_unused_config_keys:
        logger.warning("skip_unused_config_keys set")
        config_dict = {
            field.name: config_dict[field.name] for field in fields(config_class) if field.name in config_dict
        }
    return from_dict(
        data_class=config_class,
        data=config_dict,
        config=dacite.Config(
            cast=[Path],
            type_hooks={
                Suite: cast_str_to_suite,
                DerivativeKind: cast_str_to_derivative_kind,
                OutputFormat: lambda x: OutputFormat[x.upper()],
                LimitEnumeration: lambda x: LimitEnumeration[x.upper()],
            },
            strict=True,
        ),
    )


def get_config_from_file(
    config_path: str, config_class: Type = Config, skip_unused_config_keys: bool = False
) -> Config:
    """Get a config object from a YAML file"""
    with open(config_path) as f:
        config_dict = yaml.load(f, Loader=SafeLoader)
    return get_config_from_dict(
        config_dict or {}, config_class=config_class, skip_unused_config_keys=skip_unused_config_keys
    )
