import csv
import json

from utils.experiment_tracking import BASE_COLUMNS, SUMMARY_NAME, log_experiment, save_run_artifact


def test_artifact_is_timestamped_json(tmp_path) -> None:
    out_file = save_run_artifact({"target": "group_B", "records": []}, "check_group_B", tmp_path)
    assert out_file.parent == tmp_path
    assert out_file.name.endswith("Z_check_group_B.json")
    assert json.loads(out_file.read_text(encoding="utf-8"))["target"] == "group_B"


def test_summary_header_is_written_once(tmp_path) -> None:
    counts = {"pass": 5, "fail": 0, "documented": 2}
    log_experiment("check", "dual_B", 4, counts, runs_dir=tmp_path)
    summary = log_experiment("limits", "group_A", None, counts, {"pairs": "yes"}, runs_dir=tmp_path)
    assert summary == tmp_path / SUMMARY_NAME
    with summary.open(encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert list(rows[0]) == BASE_COLUMNS
    assert [r["run_type"] for r in rows] == ["check", "limits"]
    assert rows[0]["degree"] == "4" and rows[1]["degree"] == ""
    assert rows[0]["documented"] == "2"
    assert json.loads(rows[1]["metadata"]) == {"pairs": "yes"}
