from __future__ import annotations

import json
import time
from contextlib import contextmanager
from typing import Dict, Iterator, List

import pandas as pd
from pydantic import BaseModel, Field

from hopf.checks import CheckResult

REPORT_SCHEMA_VERSION = "1.0"
STATUSES = ("pass", "fail", "documented")


class CheckRecord(BaseModel):
    name: str
    target: str = ""
    status: str
    witness: str = ""
    degree: int | None = None
    wall_time: float = 0.0
    details: Dict[str, str] = Field(default_factory=dict)


class Report(BaseModel):
    schema_version: str = REPORT_SCHEMA_VERSION
    target: str
    degree: int | None = None
    records: List[CheckRecord] = Field(default_factory=list)

    def add(self, record: CheckRecord) -> CheckRecord:
        if record.status not in STATUSES:
            raise ValueError(f"unknown status {record.status!r}, expected one of {list(STATUSES)}")
        self.records.append(record)
        return record

    def sorted_records(self) -> List[CheckRecord]:
        return sorted(self.records, key=lambda r: r.name)

    def counts(self) -> Dict[str, int]:
        counts = {status: 0 for status in STATUSES}
        for record in self.records:
            counts[record.status] += 1
        return counts

    @property
    def failed(self) -> bool:
        return any(record.status == "fail" for record in self.records)

    def record(self, name: str) -> CheckRecord:
        for record in self.records:
            if record.name == name:
                return record
        raise KeyError(f"{self.target}: no record named {name}")

    def stable_view(self) -> dict:
        """The deterministic part of the report: sorted records without wall times."""
        return {
            "schema_version": self.schema_version,
            "target": self.target,
            "degree": self.degree,
            "records": [r.model_dump(exclude={"wall_time"}) for r in self.sorted_records()],
        }

    def to_json(self) -> str:
        payload = self.model_dump()
        payload["records"] = [r.model_dump() for r in self.sorted_records()]
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "name": r.name,
                "target": r.target,
                "status": r.status,
                "degree": "" if r.degree is None else r.degree,
                "witness": r.witness,
            }
            for r in self.sorted_records()
        ]
        return pd.DataFrame(rows, columns=["name", "target", "status", "degree", "witness"])

    def render(self) -> str:
        counts = self.counts()
        header = f"{self.target} (degree {self.degree}): " + ", ".join(f"{k}={v}" for k, v in counts.items())
        if not self.records:
            return header
        return header + "\n" + self.to_frame().to_string(index=False)


def record_from_check(result: CheckResult, target: str = "", degree: int | None = None, wall_time: float = 0.0) -> CheckRecord:
    return CheckRecord(
        name=result.name,
        target=target,
        status="pass" if result.passed else "fail",
        witness=result.witness,
        degree=degree,
        wall_time=wall_time,
        details=dict(result.details),
    )


@contextmanager
def timed() -> Iterator[List[float]]:
    """Yields a one-slot list that holds the elapsed seconds after the block."""
    elapsed = [0.0]
    start = time.perf_counter()
    try:
        yield elapsed
    finally:
        elapsed[0] = round(time.perf_counter() - start, 4)
