"""Utility functions for dirac-scs."""

import io
import os
import csv
import json
import math
import datetime
import functools
import hashlib
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence, TypeVar

import numpy as np
from ruamel.yaml import YAML  # type: ignore

from .constants import FLOAT_FORMAT

# NOTE: to keep this module easily importable everywhere in our code, avoid
# dirac_scs imports other than constants.

T = TypeVar("T")
R = TypeVar("R")


# --------------------------- YAML helpers to isolate ruamel.yaml details -------------------


def get_yaml() -> YAML:
    """Return the ruamel.yaml instance used for run manifests (key order kept)."""
    yaml = YAML()
    yaml.indent(mapping=2, sequence=4, offset=2)
    yaml.default_flow_style = False
    return yaml


def yaml_dumps(obj) -> str:
    """Render a manifest-like object as YAML text."""
    with io.StringIO() as string_stream:
        get_yaml().dump(obj, string_stream)
        return string_stream.getvalue()


def yaml_loads(text: str):
    with io.StringIO(text) as string_stream:
        return get_yaml().load(string_stream)


# --------------------------- number formatting and artifact writers ------------------------


def fmt_float(value: Any) -> str:
    """Format a scalar at 17 significant digits; ints and strings pass through."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), FLOAT_FORMAT)
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a header plus rows; floats at 17 significant digits, '\\n' endings."""
    path = Path(path)
    with open(path, "w", newline="") as opened:
        writer = csv.writer(opened, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(["" if v is None else fmt_float(v) for v in row])
    return path


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return None
        return float(format(value, FLOAT_FORMAT))
    return obj


def json_dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, 17 significant digits, trailing newline."""
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def write_json(path: Path, obj: Any) -> Path:
    path = Path(path)
    path.write_text(json_dumps(obj))
    return path


# -----------------------------------------------------------------------------


def elapsed_time(start_time: datetime.datetime) -> tuple[datetime.datetime, str]:
    """Return (now, "HH:MM:SS.mmm") for the time since `start_time`."""
    now = datetime.datetime.now()
    delta = now - start_time
    total_seconds = int(delta.total_seconds())
    hours = total_seconds // 3600
    minutes = (total_seconds % 3600) // 60
    seconds = total_seconds % 60
    text = f"{hours:02d}:{minutes:02d}:{seconds:02d}.{delta.microseconds // 1000:03d}"
    if delta.days:
        text = f"{delta.days} days, " + text
    return now, text


# -------------------------------------------------------------------------


def once(func):
    """
    A decorator that ensures a function is executed only once.
    Subsequent calls return the cached result.
    """
    _has_run = False
    _result = None

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        nonlocal _has_run, _result
        if not _has_run:
            _result = func(*args, **kwargs)
            _has_run = True
        return _result

    return wrapper


def resolve_jobs(jobs: int) -> int:
    """0 means one worker per CPU."""
    if jobs == 0:
        return os.cpu_count() or 1
    return max(1, jobs)


def ordered_map(func: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> list[R]:
    """Map `func` over `items`, in a process pool when jobs > 1.

    Executor.map yields in submission order, so the result does not depend on
    the worker count.  `func` must be a picklable module-level callable.
    """
    workers = resolve_jobs(jobs)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as executor:
        return list(executor.map(func, items))


# ------------------------------- sha256 helpers -------------------------


def sha256_file(filepath) -> str:
    """Digest a file in blocks."""
    sha256_hash = hashlib.sha256()
    with open(filepath, "rb") as f:
        for byte_block in iter(lambda: f.read(4096), b""):
            sha256_hash.update(byte_block)
    return sha256_hash.hexdigest()
