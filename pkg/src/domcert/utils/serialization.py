"""
Canonical JSON and TOML output for configs and reports
"""

import json
import math
import numbers
from pathlib import Path
from typing import Any, Union

import tomli_w
from pydantic import BaseModel

INDENT = "  "
FLOAT_DIGITS = 17


def format_float(value: float) -> str:
    """17 significant digits, always with a decimal point or exponent; non-finite values are null."""
    if not math.isfinite(value):
        return "null"
    text = f"{value:.{FLOAT_DIGITS}g}"
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def _encode(value: Any, depth: int) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    pad = INDENT * (depth + 1)
    close = INDENT * depth
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(value[k], depth + 1)}" for k in sorted(value)
        ]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{pad}{_encode(item, depth + 1)}" for item in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def to_plain(data: Union[BaseModel, Any]) -> Any:
    if isinstance(data, BaseModel):
        return data.model_dump(mode="json")
    return data


def dumps_canonical(data: Union[BaseModel, Any]) -> str:
    """Sorted keys, two-space indent, 17-digit floats and a trailing newline.

    Identical inputs always give identical bytes.
    """
    return _encode(to_plain(data), 0) + "\n"


def dumps_toml(data: Union[BaseModel, Any]) -> str:
    """TOML rendering; None values are dropped since TOML has no null."""
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json", exclude_none=True)
    return tomli_w.dumps(data)


def write_document(data: Union[BaseModel, Any], path: Union[str, Path]) -> Path:
    """Write canonical JSON, or TOML when the path ends with .toml."""
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    text = dumps_toml(data) if target.suffix == ".toml" else dumps_canonical(data)
    target.write_text(text, encoding="utf-8")
    return target
