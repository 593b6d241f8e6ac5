"""Filter files: JSON by default, raw little-endian float64 for ``.mklf``."""

import json
import logging
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from apps.transport.constants import FilterFileFormat, TransportErrorMessage
from apps.transport.exceptions import ParseError
from apps.transport.schemas import MklFilter
from constants.config import BINARY_FILTER_SUFFIX, FILTER_JSON_FORMAT, FILTER_PARAMS
from core.exceptions import DataError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_BINARY_DTYPE = np.dtype("<f8")


def filter_format(path: PathLike) -> FilterFileFormat:
    if Path(path).suffix.lower() == BINARY_FILTER_SUFFIX:
        return FilterFileFormat.BINARY
    return FilterFileFormat.JSON


def _numbers(values: Sequence[float]) -> str:
    return ", ".join(format(float(v), FILTER_JSON_FORMAT) for v in values)


def filter_to_json(f: MklFilter) -> str:
    """JSON text with 17 significant digits per number, so reloading is exact."""
    return (
        f'{{"a": [{_numbers(f.a.reshape(-1))}], '
        f'"s": [{_numbers(f.s)}]}}'
    )


def filter_from_obj(obj: object) -> MklFilter:
    """Build a filter from a decoded ``{"a": [9], "s": [3]}`` object.

    Raises:
        ParseError: On missing keys, wrong arity or non-finite numbers
    """
    if not isinstance(obj, dict) or "a" not in obj or "s" not in obj:
        raise ParseError(f"{ParseError.message}: expected keys 'a' and 's'")
    try:
        a = np.asarray(obj["a"], dtype=np.float64).reshape(-1)
        s = np.asarray(obj["s"], dtype=np.float64).reshape(-1)
    except (TypeError, ValueError) as err:
        raise ParseError(f"{ParseError.message}: {err}") from err
    if a.size != 9 or s.size != 3:
        raise ParseError(
            f"{TransportErrorMessage.WRONG_ARITY}, got a={a.size} s={s.size}"
        )
    try:
        return MklFilter.from_params(np.concatenate([a, s]))
    except DataError as err:
        raise ParseError(f"{ParseError.message}: {err.message}") from err


def save_filter(f: MklFilter, path: PathLike) -> Path:
    """Write a filter; the extension picks the encoding."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if filter_format(path) == FilterFileFormat.BINARY:
        path.write_bytes(f.params.astype(_BINARY_DTYPE).tobytes())
    else:
        path.write_text(filter_to_json(f) + "\n", encoding="utf-8")
    logger.debug(f"Filter saved - Path: {path}")
    return path


def load_filter(path: PathLike) -> MklFilter:
    """Read a filter written by ``save_filter``.

    Raises:
        ParseError: If the file is malformed or has the wrong number of values
    """
    path = Path(path)
    try:
        if filter_format(path) == FilterFileFormat.BINARY:
            raw = path.read_bytes()
            expected = FILTER_PARAMS * _BINARY_DTYPE.itemsize
            if len(raw) != expected:
                raise ParseError(
                    f"{ParseError.message}: {path} has {len(raw)} bytes, "
                    f"expected {expected}"
                )
            params = np.frombuffer(raw, dtype=_BINARY_DTYPE).astype(np.float64)
            try:
                return MklFilter.from_params(params)
            except DataError as err:
                raise ParseError(f"{ParseError.message}: {err.message}") from err
        obj = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as err:
        raise ParseError(f"{ParseError.message}: {path} does not exist") from err
    except (json.JSONDecodeError, UnicodeDecodeError) as err:
        raise ParseError(f"{ParseError.message}: {path}: {err}") from err
    return filter_from_obj(obj)


def save_filter_sequence(filters: Sequence[MklFilter], path: PathLike) -> Path:
    """Write a JSON array of filter objects."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    body = ",\n  ".join(filter_to_json(f) for f in filters)
    path.write_text(f"[\n  {body}\n]\n", encoding="utf-8")
    return path


def load_filter_sequence(path: PathLike) -> List[MklFilter]:
    """Read a JSON array of filter objects."""
    path = Path(path)
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as err:
        raise ParseError(f"{ParseError.message}: {path} does not exist") from err
    except (json.JSONDecodeError, UnicodeDecodeError) as err:
        raise ParseError(f"{ParseError.message}: {path}: {err}") from err
    if not isinstance(obj, list):
        raise ParseError(f"{ParseError.message}: {path} must hold a JSON array")
    return [filter_from_obj(item) for item in obj]
