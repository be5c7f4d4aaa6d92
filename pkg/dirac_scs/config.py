"""Configuration management for dirac-scs."""

from __future__ import annotations

import argparse
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from . import logger
from .constants import (
    DEFAULT_COLOR_MODE,
    DEFAULT_LOG_TIMES_MODE,
    DEFAULT_OUTPUT_DIR,
    PARAMETER_SCHEMAS,
    VALID_COLOR_MODES,
    VALID_LOG_TIME_MODES,
    VALID_SUBCOMMANDS,
)
from .errors import ConfigError, ValidationError

ParameterValue = Union[float, int, str]

_INT_RE = re.compile(r"^[+-]?\d+$")
_FLOAT_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
_KEY_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def schema_for(subcommand: str) -> dict[str, tuple[type, object]]:
    if subcommand not in PARAMETER_SCHEMAS:
        raise ValidationError(f"unknown subcommand {subcommand!r}; expected one of {VALID_SUBCOMMANDS}")
    return PARAMETER_SCHEMAS[subcommand]


def coerce_value(kind: type, text: str, key: str, line: Optional[int] = None) -> ParameterValue:
    """Convert one raw value to its schema type."""
    text = text.strip()
    if kind is str:
        return text
    if kind is int:
        if not _INT_RE.match(text):
            raise ConfigError(f"malformed integer for {key}: {text!r}", line)
        return int(text)
    if not _FLOAT_RE.match(text):
        raise ConfigError(f"malformed number for {key}: {text!r}", line)
    return float(text)


def parse_config(text: str, subcommand: str = "evolve") -> dict[str, ParameterValue]:
    """Parse the line-oriented `key = value` dialect.

    '#' starts a comment, strings are unquoted, numbers are decimal or
    scientific.  Duplicate keys, unknown keys, malformed numbers and lines
    without '=' raise ConfigError carrying the 1-based line number.
    """
    schema = schema_for(subcommand)
    parsed: dict[str, ParameterValue] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if not _KEY_RE.match(key):
            raise ConfigError(f"malformed key {key!r}", lineno)
        if key in parsed:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        if key not in schema:
            raise ConfigError(f"unknown key {key!r} for {subcommand}", lineno)
        parsed[key] = coerce_value(schema[key][0], value, key, lineno)
    return parsed


def load_config_file(path: Union[str, Path], subcommand: str) -> dict[str, ParameterValue]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config(text, subcommand)


def default_parameters(subcommand: str) -> dict[str, ParameterValue]:
    return {key: default for key, (_, default) in schema_for(subcommand).items()}  # type: ignore[misc]


@dataclass
class RunConfig:
    """Resolved configuration for one CLI run."""

    subcommand: str
    parameters: dict[str, ParameterValue] = field(default_factory=dict)
    output_dir: Path = Path(DEFAULT_OUTPUT_DIR)
    threads: int = 1
    seed: Optional[int] = None

    logger: Optional["logger.ScsLogger"] = None
    verbose: bool = False
    debug: bool = False
    log_times: str = DEFAULT_LOG_TIMES_MODE
    color: str = DEFAULT_COLOR_MODE

    def __post_init__(self):
        """Post-initialization processing."""
        if self.logger is None:
            self.logger = logger.ScsLogger.from_config(self)
        self.output_dir = Path(self.output_dir)

        if self.log_times not in VALID_LOG_TIME_MODES:
            raise ValidationError(f"log_times must be one of {VALID_LOG_TIME_MODES}")
        if self.color not in VALID_COLOR_MODES:
            raise ValidationError(f"color must be one of {VALID_COLOR_MODES}")
        if self.threads < 0:
            raise ValidationError(f"threads must be >= 0, got {self.threads}")

        schema = schema_for(self.subcommand)
        merged = default_parameters(self.subcommand)
        for key, value in self.parameters.items():
            if key not in schema:
                raise ValidationError(f"unknown key {key!r} for {self.subcommand}")
            kind = schema[key][0]
            if kind is not str and isinstance(value, str):
                value = coerce_value(kind, value, key)
            if isinstance(value, float) and not math.isfinite(value):
                raise ValidationError(f"parameter {key} must be finite, got {value}")
            merged[key] = value
        self.parameters = merged

    def get(self, key: str):
        return self.parameters[key]

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """Merge schema defaults, then --config FILE, then explicit flags."""
        parameters: dict[str, ParameterValue] = {}
        if getattr(args, "config", None):
            parameters.update(load_config_file(args.config, args.subcommand))
        for key in schema_for(args.subcommand):
            value = getattr(args, key, None)
            if value is not None:
                parameters[key] = value
        return cls(
            subcommand=args.subcommand,
            parameters=parameters,
            output_dir=args.output_dir,
            threads=args.threads,
            seed=args.seed,
            verbose=args.verbose,
            debug=args.debug,
            log_times=args.log_times,
            color=args.color,
        )
