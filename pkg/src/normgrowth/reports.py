"""Report records and serialization.

Report bodies are deterministic: the same inputs and seeds produce the same
JSON and CSV bytes.  Timestamps live in the header only.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

CSV_COLUMNS = ["check", "group", "n", "inputs", "lhs", "rhs", "margin", "pass"]


@dataclass
class CheckResult:
    """Outcome of one check instance.

    margin is rhs-relative: positive means the inequality held with room.
    skipped results count as neither pass nor fail in summaries.
    """

    check: str
    group: str
    n: int
    inputs: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    skipped: bool = False
    seed: Optional[int] = None
    note: str = ""

    def row(self) -> dict:
        return {
            "check": self.check,
            "group": self.group,
            "n": self.n,
            "inputs": self.inputs,
            "lhs": repr(self.lhs),
            "rhs": repr(self.rhs),
            "margin": repr(self.margin),
            "pass": "skip" if self.skipped else str(self.passed),
        }

    def as_dict(self) -> dict:
        d = {
            "check": self.check,
            "group": self.group,
            "n": self.n,
            "inputs": self.inputs,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "pass": self.passed,
        }
        if self.skipped:
            d["skipped"] = True
        if self.seed is not None:
            d["seed"] = self.seed
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class ReportDocument:
    """A full report: header (may carry a timestamp), body, summary."""

    title: str
    results: list[CheckResult] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    timestamp: Optional[str] = None

    def stamp(self) -> None:
        self.timestamp = datetime.now(timezone.utc).isoformat()

    @property
    def fail_count(self) -> int:
        return sum(1 for r in self.results if not r.passed and not r.skipped)

    @property
    def pass_count(self) -> int:
        return sum(1 for r in self.results if r.passed and not r.skipped)

    @property
    def skip_count(self) -> int:
        return sum(1 for r in self.results if r.skipped)

    @property
    def verdict(self) -> str:
        return "PASS" if self.fail_count == 0 else "FAIL"

    def body_dict(self) -> dict:
        """Everything except the header; deterministic."""
        return {
            "title": self.title,
            "meta": self.meta,
            "results": [r.as_dict() for r in self.results],
            "summary": {
                "pass": self.pass_count,
                "fail": self.fail_count,
                "skip": self.skip_count,
                "verdict": self.verdict,
            },
        }

    def to_json(self) -> str:
        doc = {"header": {"generated": self.timestamp}}
        doc.update(self.body_dict())
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for r in self.results:
            writer.writerow(r.row())
        return buf.getvalue()

    def summary_lines(self) -> list[str]:
        lines = [
            f"{self.title}: {self.pass_count} pass, "
            f"{self.fail_count} fail, {self.skip_count} skip -> {self.verdict}"
        ]
        for r in self.results:
            if not r.passed and not r.skipped:
                lines.append(
                    f"  FAIL {r.check} {r.group} {r.inputs} "
                    f"lhs={r.lhs!r} rhs={r.rhs!r}"
                )
        return lines


def write_report(doc: ReportDocument, path: str, fmt: str = "json") -> None:
    if fmt == "json":
        text = doc.to_json()
    elif fmt == "csv":
        text = doc.to_csv()
    else:
        raise ValueError(f"unknown format {fmt!r}")
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
