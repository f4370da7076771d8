"""Verification reports and byte-stable JSON output."""

from __future__ import annotations

import dataclasses
import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np


@dataclass(frozen=True)
class ResultItem:
    name: str
    value: Any
    passed: bool
    margin: float | None = None
    note: str = ""

    def as_dict(self) -> dict[str, Any]:
        out = {"name": self.name, "value": self.value, "passed": self.passed, "margin": self.margin}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    command: str
    inputs: dict[str, Any]
    #: plain statement of what the results establish
    claim: str
    results: list[ResultItem] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return bool(self.results) and all(r.passed for r in self.results)

    def add(self, name: str, value: Any, passed: bool, margin: float | None = None, note: str = "") -> None:
        self.results.append(ResultItem(name, value, bool(passed), margin, note))

    def as_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "claim": self.claim,
            "overall": "pass" if self.overall else "fail",
            "results": [r.as_dict() for r in self.results],
            "details": self.details,
        }


def _float(x: float) -> str:
    if not math.isfinite(x):
        # strict JSON has no infinities
        return json.dumps("inf" if x > 0 else "-inf" if x < 0 else "nan")
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def plain(obj: Any) -> Any:
    """Reduce library objects to dicts, lists and scalars (one level at a time)."""
    if hasattr(obj, "as_dict"):
        return obj.as_dict()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def dumps(obj: Any, indent: int = 2) -> str:
    """JSON with every float written to 17 significant digits."""
    out: list[str] = []

    def emit(o: Any, depth: int) -> None:
        o = plain(o)
        pad = " " * (indent * (depth + 1))
        end = " " * (indent * depth)
        if o is None or isinstance(o, bool):
            out.append(json.dumps(o))
        elif isinstance(o, int):
            out.append(str(o))
        elif isinstance(o, float):
            out.append(_float(o))
        elif isinstance(o, str):
            out.append(json.dumps(o))
        elif isinstance(o, dict):
            if not o:
                out.append("{}")
                return
            out.append("{\n")
            for i, (k, v) in enumerate(o.items()):
                out.append(f"{pad}{json.dumps(str(k))}: ")
                emit(v, depth + 1)
                out.append(",\n" if i < len(o) - 1 else "\n")
            out.append(end + "}")
        elif isinstance(o, (list, tuple)):
            if not o:
                out.append("[]")
                return
            if all(isinstance(plain(v), (int, float)) and not isinstance(v, bool) for v in o):
                out.append("[")
                for i, v in enumerate(o):
                    emit(v, depth + 1)
                    if i < len(o) - 1:
                        out.append(", ")
                out.append("]")
                return
            out.append("[\n")
            for i, v in enumerate(o):
                out.append(pad)
                emit(v, depth + 1)
                out.append(",\n" if i < len(o) - 1 else "\n")
            out.append(end + "]")
        else:
            raise TypeError(f"cannot serialize {type(o).__name__}")

    emit(obj, 0)
    return "".join(out) + "\n"
