import csv
from datetime import datetime, timezone
import json
import os
from pathlib import Path
from typing import Dict


RUNS_DIR = Path(os.getenv("QGALILEI_RUNS_DIR", "runs"))
SUMMARY_NAME = "experiment_summary.csv"
BASE_COLUMNS = [
    "timestamp",
    "run_type",
    "target",
    "degree",
    "passed",
    "failed",
    "documented",
    "metadata",
]


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


def save_run_artifact(payload: dict, run_name: str, runs_dir: Path | None = None) -> Path:
    runs_dir = Path(runs_dir or RUNS_DIR)
    runs_dir.mkdir(parents=True, exist_ok=True)
    out_file = runs_dir / f"{_utc_now().strftime('%Y%m%dT%H%M%SZ')}_{run_name}.json"
    out_file.write_text(json.dumps(payload, indent=2, sort_keys=True), encoding="utf-8")
    return out_file


def log_experiment(
    run_type: str,
    target: str,
    degree: int | None,
    counts: Dict[str, int],
    metadata: Dict[str, str] | None = None,
    runs_dir: Path | None = None,
) -> Path:
    runs_dir = Path(runs_dir or RUNS_DIR)
    runs_dir.mkdir(parents=True, exist_ok=True)
    summary_path = runs_dir / SUMMARY_NAME
    row = {
        "timestamp": _utc_now().isoformat(),
        "run_type": run_type,
        "target": target,
        "degree": "" if degree is None else str(degree),
        "passed": str(counts.get("pass", 0)),
        "failed": str(counts.get("fail", 0)),
        "documented": str(counts.get("documented", 0)),
        "metadata": json.dumps(metadata or {}, ensure_ascii=True, sort_keys=True),
    }
    write_header = not summary_path.exists()
    with summary_path.open("a", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=BASE_COLUMNS)
        if write_header:
            writer.writeheader()
        writer.writerow(row)
    return summary_path
