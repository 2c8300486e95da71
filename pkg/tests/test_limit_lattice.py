from evaluation.limit_lattice import lattice_frame, limit_chains, run_limit_lattice, sigma_commutator_record
from evaluation.report import CheckRecord
from hopf.presets import build_preset


def test_chains_cover_singles_then_pairs() -> None:
    h = build_preset("group_A")
    assert limit_chains(h, include_pairs=False) == [("inv_kappa",), ("inv_rho",)]
    assert limit_chains(h) == [("inv_kappa",), ("inv_rho",), ("inv_kappa", "inv_rho")]


def test_group_a_limits_pass() -> None:
    records = run_limit_lattice(build_preset("group_A"), include_pairs=True)
    assert [r.name for r in records] == ["limit[kappa->inf]", "limit[rho->inf]", "limit[kappa->inf,rho->inf]"]
    assert all(r.status == "pass" for r in records), [r.witness for r in records]
    assert records[0].details["coassociativity"] == "pass"


def test_sigma_limit_of_dual_b_collapses_the_bracket() -> None:
    record = sigma_commutator_record(build_preset("dual_B", 3))
    assert record.status == "pass"
    assert record.details["[K, H]"] == "i*P"


def test_dual_b_lattice_carries_the_sigma_record() -> None:
    records = run_limit_lattice(build_preset("dual_B", 3), include_pairs=False, star_degree=3)
    names = [r.name for r in records]
    assert names[-1] == "limit_sigma_commutator"
    assert "limit[sigma->inf]" in names


def test_frame_lists_failed_checks() -> None:
    records = [
        CheckRecord(name="limit[rho->inf]", status="pass", details={"counit": "pass"}),
        CheckRecord(name="limit[kappa->inf]", status="fail", details={"counit": "pass", "star": "fail"}),
    ]
    frame = lattice_frame(records)
    assert frame["limit"].tolist() == ["limit[kappa->inf]", "limit[rho->inf]"]
    assert frame["failed_checks"].tolist() == ["star", ""]
