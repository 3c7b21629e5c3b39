"""Report records and their JSON-lines / TSV serialization.

A scan produces one record per catalog group, ordered by group name.
Rationals are serialized as "num/den" strings in lowest terms so output
is exact and byte-stable across runs; wall-clock timings are omitted
unless explicitly requested, keeping default output deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .classify import ClassificationReport
from .degrees import rat_str

TSV_COLUMNS = ("name", "order", "spectrumSize", "caseTag", "verdict")


@dataclass
class Report:
    name: str
    order: int
    center_order: int
    spectrum: list[str]              # "num/den", decreasing
    case_tag: dict
    verdict: str
    audit_results: dict | None = None
    timings: dict | None = None

    @property
    def spectrum_size(self) -> int:
        return len(self.spectrum)

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "centerOrder": self.center_order,
            "spectrum": self.spectrum,
            "spectrumSize": self.spectrum_size,
            "caseTag": self.case_tag,
            "verdict": self.verdict,
            "auditResults": self.audit_results,
            "timings": self.timings,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_obj(), separators=(", ", ": "))

    def to_tsv_line(self) -> str:
        tag = self.case_tag["case"]
        params = ",".join(f"{k}={self.case_tag[k]}" for k in ("p", "q", "m", "n")
                          if self.case_tag.get(k) is not None)
        if params:
            tag += f"({params})"
        return "\t".join(str(v) for v in
                         (self.name, self.order, self.spectrum_size, tag,
                          self.verdict))


def case_tag_obj(report: ClassificationReport) -> dict:
    tag = report.tag
    obj: dict = {"case": tag.case.value}
    for key in ("p", "q", "m", "n"):
        value = getattr(tag, key)
        if value is not None:
            obj[key] = value
    return obj


def from_classification(report: ClassificationReport,
                        audit_results: dict | None = None,
                        timings: dict | None = None) -> Report:
    return Report(
        name=report.name,
        order=report.order,
        center_order=report.center_order,
        spectrum=[rat_str(v) for v in report.computed.values],
        case_tag=case_tag_obj(report),
        verdict=report.verdict,
        audit_results=audit_results,
        timings=timings,
    )


def emit(reports: list[Report], fmt: str) -> str:
    """Serialize a report stream: JSON-lines or a flat TSV with header."""
    if fmt == "json":
        return "\n".join(r.to_json_line() for r in reports) + "\n"
    if fmt == "tsv":
        lines = ["\t".join(TSV_COLUMNS)]
        lines.extend(r.to_tsv_line() for r in reports)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
