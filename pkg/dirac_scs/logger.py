"""Logging utilities for dirac-scs."""

import sys
import logging
import pdb
import traceback
import datetime
from pprint import pformat
from typing import Optional

from . import utils
from .constants import (
    VALID_LOG_TIME_MODES,
    DEFAULT_LOG_TIMES_MODE,
    DEFAULT_COLOR_MODE,
)


ANSI = {
    "magenta": "\033[35m",
    "green": "\033[32m",
    "yellow": "\033[33m",
    "red": "\033[31m",
    "bright-red": "\033[91m",
    "blue": "\033[34m",
    "cyan": "\033[36m",
    "bold": "\033[1m",
    "reset": "\033[0m",
}

LEVEL_COLORS = {
    logging.DEBUG: "magenta",
    logging.INFO: "green",
    logging.WARNING: "yellow",
    logging.ERROR: "red",
    logging.CRITICAL: "bright-red",
}


class ColorAndTimeFormatter(logging.Formatter):
    """Prefix records with level, optional clock/elapsed time, and ANSI color."""

    def __init__(self, log_times: str = "none", color: str = "auto"):
        if log_times not in VALID_LOG_TIME_MODES:
            raise ValueError(f"Invalid log_times value {log_times}.")
        super().__init__()
        self.log_times = log_times
        self.color = color
        self.start_time = datetime.datetime.now()

    @property
    def use_color(self) -> bool:
        if self.color == "on":
            return True
        return self.color == "auto" and sys.stderr.isatty()

    def _build_format_string(self, record: logging.LogRecord, elapsed: str) -> str:
        if self.use_color:
            level = ANSI[LEVEL_COLORS.get(record.levelno, "reset")]
            clock, since, message, reset = ANSI["blue"], ANSI["cyan"], ANSI["bold"], ANSI["reset"]
        else:
            level = clock = since = message = reset = ""
        fmt = level + "%(levelname)s: "
        if self.log_times in ("normal", "both"):
            fmt += clock + "%(asctime)s.%(msecs)03d "
        if self.log_times in ("elapsed", "both"):
            fmt += since + elapsed + " "
        return fmt + reset + message + "%(message)s" + reset

    def format(self, record: logging.LogRecord) -> str:
        self.start_time, elapsed = utils.elapsed_time(self.start_time)
        formatter = logging.Formatter(
            self._build_format_string(record, elapsed), datefmt="%Y-%m-%d-%H:%M:%S"
        )
        return formatter.format(record)


class ScsLogger:
    """Logger that counts problems and follows the return-a-status convention.

    error() and exception() return False, info() and warning() return True, so
    workflow steps can end with `return self.logger.error(...)`.
    """

    def __init__(
        self,
        verbose: bool = False,
        debug_mode: bool = False,
        log_times: str = DEFAULT_LOG_TIMES_MODE,
        color: str = DEFAULT_COLOR_MODE,
        configure: bool = True,
    ):
        self.verbose = verbose
        self.debug_mode = debug_mode
        self.log_times = log_times
        self.color = color
        self.errors: list[str] = []
        self.warnings: list[str] = []
        self.exceptions: list[str] = []
        self.failed_checks: list[str] = []
        self.start_time = datetime.datetime.now()
        self.logger = logging.getLogger("dirac_scs")
        if configure:
            self._configure_logger()

    def _configure_logger(self) -> None:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(ColorAndTimeFormatter(log_times=self.log_times, color=self.color))
        logging.basicConfig(
            level=logging.DEBUG if self.verbose else logging.INFO,
            handlers=[handler],
            force=True,
        )

    def _lformat(self, *args) -> str:
        return " ".join(map(str, args))

    def error(self, *args) -> bool:
        """Log an error message and return False."""
        msg = self._lformat(*args)
        self.errors.append(msg)
        self.logger.error(msg)
        if self.debug_mode:
            pdb.set_trace()
        return False

    def info(self, *args) -> bool:
        """Log an info message and return True."""
        self.logger.info(self._lformat(*args))
        return True

    def warning(self, *args) -> bool:
        """Log a warning message and return True."""
        msg = self._lformat(*args)
        self.warnings.append(msg)
        self.logger.warning(msg)
        return True

    def debug(self, *args) -> None:
        """Log a debug message."""
        self.logger.debug(self._lformat(*args))
        return None

    def check(self, name: str, value: float, tolerance: float) -> bool:
        """Log a residual-type check; return whether |value| <= tolerance."""
        passed = bool(abs(value) <= tolerance)
        if passed:
            self.debug(f"check {name}: {value:.3e} <= {tolerance:.1e}")
        else:
            self.failed_checks.append(name)
            self.warning(f"check {name} FAILED: {value:.3e} > {tolerance:.1e}")
        return passed

    def exception(self, e: BaseException, *args) -> bool:
        """Record an exception, optionally entering the post-mortem debugger."""
        msg = self._lformat(*args)
        self.exceptions.append(msg)
        self.error(msg)
        if self.debug_mode:
            print(f"\n*** DEBUG MODE: {type(e).__name__}: {e} ***")
            traceback.print_tb(e.__traceback__)
            pdb.post_mortem(e.__traceback__)
            raise e
        return False

    @property
    def elapsed_time(self) -> str:
        return utils.elapsed_time(self.start_time)[1]

    def print_log_counters(self) -> None:
        """Print summary of logged messages."""
        self.info(f"Exceptions: {len(self.exceptions)}")
        self.info(f"Errors: {len(self.errors)}")
        self.info(f"Warnings: {len(self.warnings)}")
        if self.failed_checks:
            self.info(f"Failed checks: {len(self.failed_checks)}")
        self.info(f"Elapsed: {self.elapsed_time[:-4]}")

    @classmethod
    def pformat(cls, *args, **keys) -> str:
        return pformat(*args, **keys)

    @classmethod
    def from_config(cls, config) -> "ScsLogger":
        """Create an ScsLogger from a RunConfig."""
        return cls(
            verbose=config.verbose,
            debug_mode=config.debug,
            log_times=config.log_times,
            color=config.color,
        )


@utils.once
def default_logger() -> ScsLogger:
    """Process-wide logger for library calls made without an explicit one.

    It does not reconfigure the root logger; the CLI does that.
    """
    return ScsLogger(configure=False)


def resolve(logger: Optional[ScsLogger]) -> ScsLogger:
    return logger if logger is not None else default_logger()
