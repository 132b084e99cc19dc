"""
JSON interchange for signals and window families, and the canonical dump
every report goes through.

Family layout::

    {"L": 1, "M": 2, "N": 1,
     "windows": [{"entries": [{"k": [0, 0], "q": [1.0, 0.0, 0.0, 0.0]}]}]}

A bare number is accepted for ``q`` and read as a real quaternion.
"""
import json
import numbers
from typing import Any, Dict

import numpy as np

from models.quaternion import Quaternion
from models.signal import FiniteSignal, GaborParams, WindowFamily
from utils.errors import FamilyFormatError, ParameterError


def signal_to_dict(f: FiniteSignal) -> Dict[str, Any]:
    return {"entries": [{"k": [int(k[0]), int(k[1])], "q": q.to_list()} for k, q in f.items()]}


def family_to_dict(W: WindowFamily) -> Dict[str, Any]:
    data = W.params.to_dict()
    data["windows"] = [signal_to_dict(g) for g in W.windows]
    return data


def _is_int(value) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def _is_number(value) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _parse_quaternion(value, path: str) -> Quaternion:
    if _is_number(value):
        return Quaternion.real(value)
    if isinstance(value, list) and len(value) == 4 and all(_is_number(v) for v in value):
        return Quaternion.from_list(value)
    raise FamilyFormatError("expected a number or a list of four numbers", path=path)


def signal_from_dict(data, path: str = "signal") -> FiniteSignal:
    if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
        raise FamilyFormatError("expected an object with an 'entries' list", path=path)
    entries = {}
    for index, entry in enumerate(data["entries"]):
        where = f"{path}.entries[{index}]"
        if not isinstance(entry, dict):
            raise FamilyFormatError("expected an object with 'k' and 'q'", path=where)
        k = entry.get("k")
        if not (isinstance(k, list) and len(k) == 2 and all(_is_int(v) for v in k)):
            raise FamilyFormatError("expected a pair of integers", path=f"{where}.k")
        key = (int(k[0]), int(k[1]))
        if key in entries:
            raise FamilyFormatError(f"duplicate index {list(key)}", path=f"{where}.k")
        entries[key] = _parse_quaternion(entry.get("q"), f"{where}.q")
    return FiniteSignal(entries)


def family_from_dict(data) -> WindowFamily:
    if not isinstance(data, dict):
        raise FamilyFormatError("expected a JSON object at the top level", path="$")
    for name in ("L", "M", "N"):
        if not _is_int(data.get(name)):
            raise FamilyFormatError("expected a positive integer", path=name)
    windows = data.get("windows")
    if not isinstance(windows, list):
        raise FamilyFormatError("expected a list of windows", path="windows")
    parsed = [signal_from_dict(w, f"windows[{i}]") for i, w in enumerate(windows)]
    try:
        return WindowFamily(GaborParams(data["L"], data["M"], data["N"]), parsed)
    except ParameterError as exc:
        raise FamilyFormatError(str(exc), path="windows" if "windows" in str(exc) else "$")


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise FamilyFormatError(f"cannot read {path}: {exc.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyFormatError(f"invalid JSON in {path}: {exc.msg}", line=exc.lineno, column=exc.colno)


def load_family(path: str) -> WindowFamily:
    return family_from_dict(_read_json(path))


def _default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Quaternion):
        return value.to_list()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def dump_json(obj) -> str:
    """Canonical form: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, default=_default) + "\n"


def save_family(W: WindowFamily, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_json(family_to_dict(W)))


def load_signal(path: str) -> FiniteSignal:
    return signal_from_dict(_read_json(path))
