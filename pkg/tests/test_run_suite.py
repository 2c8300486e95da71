import json

import pytest

from evaluation.run_suite import run_suite
from hopf.presets import DEFAULT_DEGREE, PRESET_NAMES
from main import EXIT_OK, main

# Records whose status is fixed by a printed form or a basis choice.
EXPECTED_STATUS = {
    "dual_A": {"dual_star": "documented", "dual_antipodes": "documented", "reconstructed.star": "pass"},
    "dual_B": {
        "dual_commutators": "documented",
        "dual_coproducts": "documented",
        "dual_antipodes": "documented",
        "dual_star": "pass",
        "lm_match": "pass",
        "lm_match_preset": "pass",
    },
}


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_every_preset_checks_clean_at_the_default_degree(name: str, tmp_path) -> None:
    output = tmp_path / f"{name}.json"
    argv = ["check", "--preset", name, "--degree", str(DEFAULT_DEGREE), "--trials", "2", "--no-artifact"]
    code = main(argv + ["--output", str(output)])
    records = {r["name"]: r for r in json.loads(output.read_text(encoding="utf-8"))["records"]}
    assert [(n, r["witness"]) for n, r in records.items() if r["status"] == "fail"] == []
    assert code == EXIT_OK
    for record_name, status in EXPECTED_STATUS.get(name, {}).items():
        assert records[record_name]["status"] == status, record_name


def test_dual_a_star_record_shows_both_bases() -> None:
    report = run_suite("dual_A", 4, lm_trials=0)
    record = report.record("dual_star")
    assert record.status == "documented"
    assert record.witness == "K* = -i*(1/kappa)*P + K"
    assert record.details == {"tau < a < v: H*": "H", "tau < a < v: P*": "P", "tau < a < v: K*": "K"}


def test_dual_b_printed_commutator_is_itemized() -> None:
    report = run_suite("dual_B", 4, lm_trials=0)
    record = report.record("dual_commutators")
    assert record.status == "documented"
    assert record.witness == "[K, H]: derived i*P"
    assert any(key.startswith("[K, H] [P^2]") for key in record.details)
