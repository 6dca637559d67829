"""Deterministic text and JSON rendering of command results."""

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass
class Report:
    command: str = ""
    sections: list = field(default_factory=list)  # (title, [(key, value), ...])
    fields: dict = field(default_factory=dict)    # machine-readable payload
    checks: list = field(default_factory=list)    # invertible.Check

    def section(self, title, rows):
        self.sections.append((title, [(str(k), str(v)) for k, v in rows]))

    @property
    def status(self):
        if not self.checks:
            return "INFO"
        return "PASS" if all(c.status == "PASS" for c in self.checks) else "FAIL"

    @property
    def is_empty(self):
        return not (self.sections or self.fields or self.checks)


def to_json(report):
    if report.is_empty:
        return {}
    out = {"schema": SCHEMA_VERSION}
    if report.command:
        out["command"] = report.command
    out.update(report.fields)
    if report.checks:
        out["checks"] = [{"name": c.name, "status": c.status, "lhs": c.lhs, "rhs": c.rhs}
                         for c in report.checks]
    out["status"] = report.status
    return out


def to_text(report):
    lines = []
    for title, rows in report.sections:
        if lines:
            lines.append("")
        if title:
            lines.append(title)
            lines.append("-" * len(title))
        width = max((len(k) for k, _ in rows), default=0)
        for k, v in rows:
            lines.append(f"{k.ljust(width)}  {v}")
    if report.checks:
        if lines:
            lines.append("")
        for c in report.checks:
            lines.append(f"{c.status:<4}  {c.name}")
            if c.lhs or c.rhs:
                lines.append(f"      lhs: {c.lhs}")
                lines.append(f"      rhs: {c.rhs}")
        lines.append(f"status: {report.status}")
    return "\n".join(lines) + ("\n" if lines else "")


def emit(report, fmt="text"):
    if fmt == "json":
        return (json.dumps(to_json(report), indent=2, ensure_ascii=False) + "\n").encode()
    if fmt == "text":
        return to_text(report).encode()
    raise ValueError(f"unknown format {fmt!r}")
