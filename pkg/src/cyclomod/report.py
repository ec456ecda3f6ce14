"""Structured command results and their JSON / text rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA_VERSION = 1

ERROR = "ERROR"
NOTE = "NOTE"
INFO = "INFO"


@dataclass
class Diagnostic:
    severity: str
    message: str
    locus: str = ""

    def to_json(self) -> dict:
        return {"severity": self.severity, "message": self.message, "locus": self.locus}


@dataclass
class Report:
    command: str
    payload: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)

    @property
    def exit_status(self) -> int:
        return 1 if any(d.severity == ERROR for d in self.diagnostics) else 0

    def note(self, message: str, locus: str = "") -> None:
        self.diagnostics.append(Diagnostic(NOTE, message, locus))

    def error(self, message: str, locus: str = "") -> None:
        self.diagnostics.append(Diagnostic(ERROR, message, locus))

    def to_json(self) -> dict:
        out = {"schema": SCHEMA_VERSION, "command": self.command}
        out.update(self.payload)
        out["diagnostics"] = [d.to_json() for d in self.diagnostics]
        out["exit_status"] = self.exit_status
        return out

    def dumps(self) -> str:
        return json.dumps(jsonable(self.to_json()), indent=2, sort_keys=True)

    def text(self) -> str:
        rows = [(k, _short(v)) for k, v in self.payload.items()]
        width = max((len(k) for k, _ in rows), default=0)
        lines = [f"{k.ljust(width)}  {v}" for k, v in rows]
        for d in self.diagnostics:
            where = f" [{d.locus}]" if d.locus else ""
            lines.append(f"{d.severity}{where}: {d.message}")
        return "\n".join(lines)


def jsonable(value):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return jsonable(value.to_json())
    return value


def _short(value) -> str:
    value = jsonable(value)
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True)
