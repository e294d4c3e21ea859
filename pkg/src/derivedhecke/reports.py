"""Structured verdicts shared by every verification routine.

A :class:`Report` is what each check returns. An :class:`AuditReport`
collects many of them and renders a canonical JSON document: sorted keys,
no timestamps, so identical inputs give byte-identical files. Wall-clock
timings go to a ``.timings.json`` sidecar instead.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path


def to_jsonable(obj):
    """Convert tuples, Fractions and dataclass-ish objects into plain JSON."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    return str(obj)


def canonical_json(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True) + "\n"


def digest(obj) -> str:
    blob = json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class Report:
    """Outcome of one check: a verdict plus whatever evidence it produced."""

    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    witness: object = None

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "details": to_jsonable(self.details),
            "witness": to_jsonable(self.witness),
        }


@dataclass
class CheckRecord:
    name: str
    inputs: dict
    verdict: str
    witness: object = None
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_dict(self):
        return {
            "name": self.name,
            "inputs_digest": digest(self.inputs),
            "inputs": to_jsonable(self.inputs),
            "verdict": self.verdict,
            "witness": to_jsonable(self.witness),
            "details": to_jsonable(self.details),
        }


@dataclass
class AuditReport:
    checks: list = field(default_factory=list)
    header: str | None = None

    def add(self, name, inputs, report_or_bool, elapsed=0.0, details=None, witness=None):
        """Record a check; ``None`` as the outcome records a skip."""
        if isinstance(report_or_bool, Report):
            verdict = "pass" if report_or_bool.passed else "fail"
            details = report_or_bool.details if details is None else details
            witness = report_or_bool.witness if witness is None else witness
        elif report_or_bool is None:
            verdict = "skip"
        else:
            verdict = "pass" if report_or_bool else "fail"
        rec = CheckRecord(name, inputs, verdict, witness, details or {}, elapsed)
        self.checks.append(rec)
        return rec

    @property
    def status(self):
        return "fail" if any(c.verdict == "fail" for c in self.checks) else "pass"

    def to_dict(self):
        out = {"checks": [c.to_dict() for c in self.checks], "status": self.status}
        if self.header:
            out["header"] = self.header
        return out

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    def to_markdown(self) -> str:
        return render_markdown(json.loads(self.to_json()))

    def timings(self):
        return [[c.name, round(c.elapsed, 6)] for c in self.checks]


def render_markdown(doc: dict, title: str = "Audit report") -> str:
    """Render a canonical report document as Markdown."""
    lines = [f"# {title}", ""]
    if doc.get("header"):
        lines += [f"_{doc['header']}_", ""]
    lines += [f"Overall status: **{doc['status']}**", ""]
    checks = doc.get("checks", [])
    if checks:
        lines += ["| check | verdict | inputs digest |", "|---|---|---|"]
        for c in checks:
            lines.append(f"| {c['name']} | {c['verdict']} | `{c['inputs_digest'][:12]}` |")
        lines.append("")
        for c in checks:
            if c["verdict"] == "fail" and c.get("witness") is not None:
                lines.append(f"- witness for {c['name']}: `{json.dumps(c['witness'], sort_keys=True)}`")
    return "\n".join(lines).rstrip() + "\n"


def emit_report(report: AuditReport, path) -> Path:
    """Write ``<path>`` (canonical JSON), the Markdown rendering and timings sidecar."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.to_json())
    path.with_suffix(".md").write_text(report.to_markdown())
    sidecar = path.with_name(path.stem + ".timings.json")
    sidecar.write_text(json.dumps(report.timings(), sort_keys=True, indent=2) + "\n")
    return path
