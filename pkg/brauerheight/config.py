# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from enum import Enum
from typing import Any, Mapping, Optional

from sympy import isprime

from .exceptions import ConfigError
from .utils.conversion import try_enum
from .witt import DEFAULT_LENGTH_CAP

__all__ = ("OutputFormat", "RunConfig", "DEFAULT_SEED")

DEFAULT_SEED = 20240229

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

_ENVIRON_INTS = (
    ("witt_length_cap", "BRAUERHEIGHT_WITT_CAP"),
    ("width", "BRAUERHEIGHT_WIDTH"),
)


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every command.

    Attributes
    ----------
    p: Optional[:class:`int`]
        The characteristic.
    d: :class:`int`
        Degree of the coefficient field over F_p.
    truncation: :class:`int`
        Total degree N kept in formal group laws.
    hmax: :class:`int`
        Largest height looked for in ``[p](t)``.
    i_max: :class:`int`
        Highest tower level computed.
    window: Optional[:class:`int`]
        Fixed exponent window; ``None`` uses ``p^i (n+2)`` per level.
    window_growth: :class:`int`
        Factor applied to an exhausted window.
    window_cap: Optional[:class:`int`]
        Largest window tried.
    output_format: :class:`OutputFormat`
        json, csv or text.
    width: :class:`int`
        Work items processed in parallel.
    seed: :class:`int`
        Seed of randomised checks.
    witt_cache_dir: Optional[:class:`str`]
        Directory of the structural polynomial cache.
    witt_length_cap: :class:`int`
        Longest Witt vectors with structural polynomials.
    log_level: Optional[:class:`str`]
        Logging level of the command line tool; ``None`` means WARNING.
    """

    p: Optional[int] = None
    d: int = 1
    truncation: int = 64
    hmax: int = 10
    i_max: int = 3
    window: Optional[int] = None
    window_growth: int = 2
    window_cap: Optional[int] = None
    output_format: OutputFormat = OutputFormat.TEXT
    width: int = 1
    seed: int = DEFAULT_SEED
    witt_cache_dir: Optional[str] = None
    witt_length_cap: int = DEFAULT_LENGTH_CAP
    log_level: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.output_format, OutputFormat):
            value = try_enum(OutputFormat, self.output_format)
            if not isinstance(value, OutputFormat):
                raise ConfigError(f"unknown output format {self.output_format!r}")
            object.__setattr__(self, "output_format", value)

        if self.log_level is not None:
            level = str(self.log_level).upper()
            if level not in _LOG_LEVELS:
                raise ConfigError(f"unknown log level {self.log_level!r}")
            object.__setattr__(self, "log_level", level)

        if self.p is not None and not isprime(self.p):
            raise ConfigError(f"p must be prime, got {self.p}")
        checks = (
            ("d", self.d, 1),
            ("truncation", self.truncation, 2),
            ("hmax", self.hmax, 1),
            ("i_max", self.i_max, 1),
            ("window_growth", self.window_growth, 2),
            ("width", self.width, 1),
            ("witt_length_cap", self.witt_length_cap, 1),
        )
        for name, value, low in checks:
            if value < low:
                raise ConfigError(f"{name} must be at least {low}, got {value}")
        if self.window is not None and self.window < 1:
            raise ConfigError(f"window must be positive, got {self.window}")
        if self.window_cap is not None and self.window is not None:
            if self.window_cap < self.window:
                raise ConfigError(f"window cap {self.window_cap} is below window {self.window}")

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None, **overrides: Any) -> RunConfig:
        """Build a config from ``BRAUERHEIGHT_*`` variables, then ``overrides``.

        ``None`` overrides are ignored so unset command line flags keep
        the environment value.
        """
        environ = os.environ if environ is None else environ
        values: dict = {}
        if environ.get("BRAUERHEIGHT_CACHE_DIR"):
            values["witt_cache_dir"] = environ["BRAUERHEIGHT_CACHE_DIR"]
        if environ.get("BRAUERHEIGHT_LOG_LEVEL"):
            values["log_level"] = environ["BRAUERHEIGHT_LOG_LEVEL"]
        for name, key in _ENVIRON_INTS:
            if environ.get(key):
                try:
                    values[name] = int(environ[key])
                except ValueError:
                    raise ConfigError(f"{key} must be an integer, got {environ[key]!r}") from None

        known = {f.name for f in fields(cls)}
        for name, value in overrides.items():
            if name not in known:
                raise ConfigError(f"unknown setting {name!r}")
            if value is not None:
                values[name] = value
        return cls(**values)

    def with_(self, **changes: Any) -> RunConfig:
        return replace(self, **changes)
