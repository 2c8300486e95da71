from __future__ import annotations

import sys
from pathlib import Path
from typing import Callable, List

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from algebra.freealg import NCPoly
from algebra.series import (
    ASSOCIATIVITY_DEGREE,
    CONJUGATION_DEGREE,
    GROUP_LAW_DEGREE,
    GroupLawResidualError,
    group_law_associativity,
    group_law_extract,
    verify_conjugation_closed_form,
    verify_inverse_law,
)
from duality.pairing import ReconstructionError
from duality.reconstruction import DualityEngine, basis_convention_record, exponential_star_check, native_basis_stars
from evaluation.comparison import compare_elements, printed_images, structure_images
from evaluation.limit_lattice import run_limit_lattice
from evaluation.report import CheckRecord, Report, record_from_check, timed
from hopf.checks import STAR_DEGREE, CheckResult, check_presentation, run_hopf_checks
from hopf.lm import (
    LM_LAYOUT,
    LM_RANDOM_DEGREE,
    LM_RANDOM_TRIALS,
    compare_coproducts,
    derive_matrices,
    lm_cocommutator,
    lm_coproduct,
    random_trials,
)
from hopf.presets import DEFAULT_DEGREE, DUAL_PRESETS, EXPONENTIAL_ORDER, GROUP_PRESETS, build_preset, family
from hopf.spec import HopfSpec
from utils.spec_loader import load_spec_file


def _timed_check(report: Report, fn: Callable[[], CheckResult], target: str, degree: int | None, prefix: str = "") -> CheckResult:
    with timed() as elapsed:
        result = fn()
    record = record_from_check(result, target, degree, elapsed[0])
    record.name = prefix + record.name
    report.add(record)
    return result


def _hopf_records(report: Report, h: HopfSpec, prefix: str = "") -> List[CheckResult]:
    star_degree = STAR_DEGREE if h.degree is None else min(STAR_DEGREE, h.degree)
    results = []
    with timed() as elapsed:
        checks = run_hopf_checks(h, star_degree)
    for result in checks:
        record = record_from_check(result, h.name, h.degree, elapsed[0] / len(checks))
        record.name = prefix + record.name
        report.add(record)
        results.append(result)
    return results


def _series_records(report: Report, h: HopfSpec) -> None:
    fam = family(h.name)
    p = h.presentation
    if fam == "B":
        with timed() as elapsed:
            conjugation = verify_conjugation_closed_form(p, CONJUGATION_DEGREE)
        if conjugation.mismatches:
            status = "fail"
        else:
            status = "documented" if conjugation.deltas else "pass"
        details = dict(conjugation.deltas)
        details["derived_matrix"] = conjugation.derived_matrix
        report.add(
            CheckRecord(
                name="conjugation_closed_form",
                target=h.name,
                status=status,
                witness="; ".join(conjugation.mismatches[:3]),
                degree=CONJUGATION_DEGREE,
                wall_time=elapsed[0],
                details=details,
            )
        )

    ordering = EXPONENTIAL_ORDER[fam]
    with timed() as elapsed:
        try:
            law = group_law_extract(p, ordering, GROUP_LAW_DEGREE)
        except GroupLawResidualError as exc:
            law = None
            record = CheckRecord(
                name="group_law", target=h.name, status="documented", witness=str(exc), degree=GROUP_LAW_DEGREE
            )
    if law is not None:
        rank = p.rank
        record = CheckRecord(
            name="group_law",
            target=h.name,
            status="pass",
            degree=GROUP_LAW_DEGREE,
            details={g: series.to_text(rank) for g, series in law.compositions.items()},
        )
        low = group_law_extract(p, ordering, ASSOCIATIVITY_DEGREE)
        failures = group_law_associativity(low)
        report.add(
            CheckRecord(
                name="group_law_associativity",
                target=h.name,
                status="fail" if failures else "pass",
                witness=", ".join(failures),
                degree=ASSOCIATIVITY_DEGREE,
            )
        )
    record.wall_time = elapsed[0]
    report.add(record)

    broken = [g for g in h.generators if not verify_inverse_law(p, g, GROUP_LAW_DEGREE)]
    report.add(
        CheckRecord(
            name="inverse_law",
            target=h.name,
            status="fail" if broken else "pass",
            witness=", ".join(broken),
            degree=GROUP_LAW_DEGREE,
        )
    )


def lm_records(report: Report, h: HopfSpec, fam: str, suffix: str, trials: int, seed: int) -> None:
    h_list, x_vec = LM_LAYOUT[fam]
    mu, nu = derive_matrices(h, h_list, x_vec)
    result = lm_coproduct(h.presentation, h_list, x_vec, mu, nu, h.degree)
    match = compare_coproducts(result, h.coproducts)
    match.name = f"lm_match{suffix}"
    report.add(record_from_check(match, h.name, h.degree))
    if suffix:
        return
    try:
        cocommutators = lm_cocommutator(result)
        report.add(
            CheckRecord(
                name="lm_cocommutator",
                target=h.name,
                status="pass",
                degree=h.degree,
                details={g: t.to_text(h.presentation.rank) for g, t in cocommutators.items()},
            )
        )
    except RuntimeError as exc:
        report.add(CheckRecord(name="lm_cocommutator", target=h.name, status="fail", witness=str(exc), degree=h.degree))
    if trials:
        outcomes = random_trials(trials, LM_RANDOM_DEGREE, seed)
        failed = [r.name for r in outcomes if not r.passed]
        report.add(
            CheckRecord(
                name="lm_random",
                target="lm_carrier",
                status="fail" if failed else "pass",
                witness=", ".join(failed),
                degree=LM_RANDOM_DEGREE,
                details={"trials": str(trials), "seed": str(seed)},
            )
        )


def _duality_records(report: Report, preset: HopfSpec, degree: int, trials: int, seed: int) -> None:
    fam = family(preset.name)
    engine = DualityEngine.for_family(fam, degree)
    print(f"[Dual] Reconstructing {preset.name} from {engine.group.name} at degree {degree}")
    with timed() as elapsed:
        try:
            reconstructed = engine.reconstruct_hopf(f"{preset.name}_reconstructed")
        except ReconstructionError as exc:
            report.add(
                CheckRecord(name="duality_reconstruction", target=preset.name, status="fail", witness=str(exc), degree=degree)
            )
            return
    report.add(
        CheckRecord(
            name="duality_reconstruction",
            target=preset.name,
            status="pass",
            degree=degree,
            wall_time=elapsed[0],
            details=reconstructed.describe(),
        )
    )
    results = _hopf_records(report, reconstructed, prefix="reconstructed.")
    structure_passes = all(r.passed for r in results)

    derived = structure_images(reconstructed)
    printed = printed_images(preset.name, degree)
    rank = reconstructed.presentation.rank
    for name, kind in (("dual_commutators", "["), ("dual_coproducts", "Delta("), ("dual_antipodes", "S(")):
        subset = {k: v for k, v in printed.items() if k.startswith(kind)}
        report.add(compare_elements(name, preset.name, derived, subset, structure_passes, degree, rank))

    universe = reconstructed.generators
    not_hermitian = [g for g in universe if reconstructed.stars[g] != NCPoly.generator(g, universe)]
    status, details = ("fail" if not_hermitian else "pass"), {}
    if not_hermitian and fam == "A" and structure_passes:
        # the exponential a < v < tau basis moves K* by a multiple of P; tau < a < v keeps all three hermitian
        native = native_basis_stars(degree)
        details = {f"tau < a < v: {g}*": native[g].to_text(rank) for g in universe}
        if all(native[g] == NCPoly.generator(g, universe) for g in universe):
            status = "documented"
    report.add(
        CheckRecord(
            name="dual_star",
            target=preset.name,
            status=status,
            witness=", ".join(f"{g}* = {reconstructed.stars[g].to_text(rank)}" for g in not_hermitian),
            degree=degree,
            details=details,
        )
    )
    nonzero = [g for g in universe if not reconstructed.counits[g].is_zero()]
    report.add(
        CheckRecord(
            name="dual_counit",
            target=preset.name,
            status="fail" if nonzero else "pass",
            witness=", ".join(nonzero),
            degree=degree,
        )
    )
    if fam == "A":
        _timed_check(report, lambda: basis_convention_record(degree), preset.name, degree)

    lm_records(report, reconstructed, fam, "", trials, seed)
    lm_records(report, preset, fam, "_preset", 0, seed)


def run_suite(
    target: str | None = None,
    degree: int = DEFAULT_DEGREE,
    spec_path: str | Path | None = None,
    include_pairs: bool = False,
    lm_trials: int = LM_RANDOM_TRIALS,
    seed: int = 0,
) -> Report:
    """Consistency, axioms, star, series, duality, LM and limits for one preset or file."""
    if spec_path is not None:
        loaded = load_spec_file(spec_path, None)
        name = loaded.name
        report = Report(target=name, degree=loaded.presentation.degree)
        print(f"[Suite] {name} from {spec_path}")
        if loaded.hopf is None:
            _timed_check(report, lambda: check_presentation(loaded.presentation), name, loaded.presentation.degree)
            return report
        _hopf_records(report, loaded.hopf)
        return report

    if target not in GROUP_PRESETS + DUAL_PRESETS:
        raise ValueError(f"unknown preset {target!r}")
    if target in GROUP_PRESETS:
        h = build_preset(target)
        report = Report(target=target, degree=None)
        print(f"[Suite] {target} (exact)")
        _hopf_records(report, h)
        _timed_check(report, lambda: exponential_star_check(h, STAR_DEGREE), target, STAR_DEGREE)
        _series_records(report, h)
    else:
        h = build_preset(target, degree)
        report = Report(target=target, degree=degree)
        print(f"[Suite] {target} at degree {degree}")
        _hopf_records(report, h)
        _duality_records(report, h, degree, lm_trials, seed)
    print(f"[Limits] {target}")
    for record in run_limit_lattice(h, include_pairs, STAR_DEGREE if h.degree is None else min(STAR_DEGREE, h.degree)):
        report.add(record)
    print(f"[Suite] {target}: {report.counts()}")
    return report
