# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from __future__ import annotations

from dataclasses import fields, is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Tuple, Union, get_args, get_origin

from typing_extensions import Self, get_type_hints

from ..core.field import FieldElement
from .conversion import try_enum

# larger integers are written as strings, JSON readers may lose them
_SAFE_INTEGER = 2**53


def _asdict_ignore_none(obj: Any) -> Any:
    """Convert a report into JSON-ready values, dropping ``None`` fields.

    Enums become their values; field elements and fractions become
    strings so that no value goes through a float.
    """
    if is_dataclass(obj) and not isinstance(obj, type):
        result = {}
        for f in fields(obj):
            if f.name.startswith("_"):
                continue
            value = getattr(obj, f.name)
            if value is None:
                continue
            result[f.name] = _asdict_ignore_none(value)
        return result

    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (FieldElement, Fraction)):
        return str(obj)
    if isinstance(obj, int) and not isinstance(obj, bool) and abs(obj) >= _SAFE_INTEGER:
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_asdict_ignore_none(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _asdict_ignore_none(v) for k, v in obj.items()}
    return obj


class ReportBase:
    """Mixin for result dataclasses written by the command line tool."""

    def to_dict(self) -> Dict[str, Any]:
        return _asdict_ignore_none(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> Self:
        """Rebuild a report from :meth:`to_dict` output.

        Nested reports and tuples of reports are restored from their type
        hints; enums through their values. Field elements stay strings.
        """
        hints = get_type_hints(cls)
        kwargs = {}
        for f in fields(cls):
            if f.name not in data:
                continue
            kwargs[f.name] = _convert(data[f.name], hints.get(f.name))
        return cls(**kwargs)


def _convert(value: Any, hint: Any) -> Any:
    if value is None or hint is None:
        return value

    origin = get_origin(hint)
    if origin is Union:
        args = [a for a in get_args(hint) if a is not type(None)]
        return _convert(value, args[0]) if len(args) == 1 else value
    if origin in (tuple, Tuple):
        args = get_args(hint)
        item = args[0] if args else None
        return tuple(_convert(v, item) for v in value)

    if isinstance(hint, type):
        if issubclass(hint, ReportBase) and isinstance(value, dict):
            return hint.from_dict(value)
        if issubclass(hint, Enum):
            return try_enum(hint, value)
        if hint is Fraction:
            return Fraction(value)
        if hint is int and isinstance(value, str):
            return int(value)
    return value
