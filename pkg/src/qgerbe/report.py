"""Structured check reports: JSON (schema-validated) and aligned text output.

A report collects named results with status holds / fails / indeterminate.
Serialization is deterministic: identical inputs and seed produce identical
bytes apart from the timing field.
"""

from __future__ import annotations

import json
import time
from importlib import resources


class Report:
    def __init__(self, command: str, algebra=None, convention=None,
                 inputs=None, seed=None):
        self.command = command
        self.algebra = algebra
        self.convention = convention
        self.inputs = dict(inputs or {})
        self.seed = seed
        self.results = []
        self._t0 = time.monotonic()

    def add(self, name: str, status: str, witness=None):
        if status not in ("holds", "fails", "indeterminate"):
            raise ValueError(f"bad status {status!r}")
        self.results.append({"name": str(name), "status": status,
                             "witness": None if witness is None else str(witness)})

    def add_checks(self, checks):
        """Absorb a list of {name, holds, witness} or {name, status, witness}."""
        for c in checks:
            if "status" in c:
                self.add(c["name"], c["status"], c.get("witness"))
            else:
                self.add(c["name"], "holds" if c["holds"] else "fails",
                         c.get("witness"))

    @property
    def failed(self) -> bool:
        return any(r["status"] == "fails" for r in self.results)

    def to_dict(self) -> dict:
        conv = self.convention
        if conv is not None and hasattr(conv, "as_dict"):
            conv = conv.as_dict()
        return {
            "command": self.command,
            "algebra": self.algebra,
            "convention": conv,
            "inputs": self.inputs,
            "results": self.results,
            "timing_ms": int((time.monotonic() - self._t0) * 1000),
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.algebra:
            lines.append(f"algebra: {self.algebra}")
        for key in sorted(self.inputs):
            lines.append(f"{key}: {self.inputs[key]}")
        if self.results:
            width = max(len(r["name"]) for r in self.results)
            for r in self.results:
                line = f"{r['name']:<{width}}  {r['status']}"
                if r["witness"]:
                    line += f"  [{r['witness']}]"
                lines.append(line)
        return "\n".join(lines)


def load_schema() -> dict:
    text = resources.files("qgerbe").joinpath("report_schema.json").read_text()
    return json.loads(text)


def validate_report(report_dict: dict):
    """Raise jsonschema.ValidationError if the report violates the schema."""
    import jsonschema

    jsonschema.validate(report_dict, load_schema())
