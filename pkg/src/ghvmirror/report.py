"""Command reports: deterministic JSON and a plain-text rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

STATUSES = ("ok", "failed", "inconclusive")
EXIT_CODES = {"ok": 0, "failed": 1, "inconclusive": 2}
USAGE_EXIT = 3


def jsonable(x: Any) -> Any:
    """Plain JSON data; algebraic objects become their canonical strings."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, Enum):
        return jsonable(x.value)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    return str(x)


@dataclass
class Report:
    command: list[str]
    status: str
    result: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> dict:
        return {
            "command": list(self.command),
            "status": self.status,
            "result": jsonable(self.result),
            "diagnostics": [str(d) for d in self.diagnostics],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"command: {' '.join(self.command)}", f"status: {self.status}"]
        _text(jsonable(self.result), lines, 0)
        for d in self.diagnostics:
            lines.append(f"note: {d}")
        return "\n".join(lines) + "\n"


def _is_matrix(v) -> bool:
    return (isinstance(v, list) and v and all(isinstance(r, list) for r in v)
            and all(not isinstance(x, (list, dict)) for r in v for x in r))


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _text(value, lines: list[str], indent: int):
    pad = "  " * indent
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if _is_matrix(v):
                lines.append(f"{pad}{k} =")
                cells = [[_scalar(x) for x in row] for row in v]
                width = max(len(c) for row in cells for c in row)
                for row in cells:
                    lines.append(f"{pad}  [ " + "  ".join(c.rjust(width) for c in row) + " ]")
            elif (isinstance(v, dict) and v) or (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)):
                lines.append(f"{pad}{k}:")
                _text(v, lines, indent + 1)
            elif isinstance(v, list):
                lines.append(f"{pad}{k}: [{', '.join(_scalar(x) for x in v)}]")
            elif isinstance(v, dict):
                lines.append(f"{pad}{k}: {{}}")
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for i, v in enumerate(value):
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}- [{i}]")
                _text(v, lines, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
