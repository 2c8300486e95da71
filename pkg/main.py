import argparse
import json
import os
from pathlib import Path

from algebra.scalar import Scalar
from duality.pairing import ReconstructionError
from duality.reconstruction import DualityEngine
from evaluation.limit_lattice import lattice_frame, run_limit_lattice
from evaluation.report import Report
from evaluation.run_suite import lm_records, run_suite
from hopf.checks import STAR_DEGREE
from hopf.lm import LM_RANDOM_TRIALS
from hopf.presets import DEFAULT_DEGREE, DUAL_PRESETS, GROUP_PRESETS, PRESET_NAMES, build_preset, family
from utils.experiment_tracking import RUNS_DIR, log_experiment, save_run_artifact
from utils.interpreter import Interpreter
from utils.parsing import ParseError
from utils.spec_loader import SpecFileError, load_spec_file

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_LOAD_ERROR = 2


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name, "")
    return int(value) if value.strip() else default


def _persist(report: Report, args: argparse.Namespace, run_type: str) -> int:
    if args.output:
        Path(args.output).write_text(report.to_json(), encoding="utf-8")
        print(f"[Suite] Wrote report: {args.output}")
    if not args.no_artifact:
        out_file = save_run_artifact(json.loads(report.to_json()), f"{run_type}_{report.target}", args.runs_dir)
        log_experiment(run_type, report.target, report.degree, report.counts(), runs_dir=args.runs_dir)
        print(f"[Suite] Saved run artifact: {out_file}")
    return EXIT_FAIL if report.failed else EXIT_OK


def _finish_report(report: Report, args: argparse.Namespace, run_type: str) -> int:
    print(report.to_json() if args.json else report.render())
    return _persist(report, args, run_type)


def cmd_check(args: argparse.Namespace) -> int:
    report = run_suite(
        args.preset,
        args.degree,
        spec_path=args.spec,
        include_pairs=args.pairs,
        lm_trials=args.trials,
        seed=args.seed,
    )
    return _finish_report(report, args, "check")


def cmd_dual(args: argparse.Namespace) -> int:
    fam = family(args.preset)
    engine = DualityEngine.for_family(fam, args.degree)
    print(f"[Dual] {engine!r}")
    try:
        reconstructed = engine.reconstruct_hopf(f"{args.preset}_reconstructed")
    except ReconstructionError as exc:
        print(f"[Dual] Reconstruction failed: {exc}")
        return EXIT_FAIL
    summary = reconstructed.describe()
    if args.json:
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        for key, value in summary.items():
            print(f"{key} = {value}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    if args.spec:
        loaded = load_spec_file(args.spec, args.degree)
        presentation, hopf = loaded.presentation, loaded.hopf
        degree = presentation.degree
    else:
        degree = None if args.preset in GROUP_PRESETS else args.degree
        hopf = build_preset(args.preset, degree)
        presentation = hopf.presentation
    value = Interpreter(presentation, degree, hopf=hopf).evaluate_text(args.expression)
    if isinstance(value, Scalar):
        print(value.to_text())
    else:
        print(value.to_text(presentation.rank))
    return EXIT_OK


def cmd_limits(args: argparse.Namespace) -> int:
    if args.spec:
        h = load_spec_file(args.spec, args.degree).hopf
        if h is None:
            raise SpecFileError(f"{args.spec}: limits need a Hopf structure")
    else:
        h = build_preset(args.preset, None if args.preset in GROUP_PRESETS else args.degree)
    print(f"[Limits] {h.name}")
    star_degree = STAR_DEGREE if h.degree is None else min(STAR_DEGREE, h.degree)
    records = run_limit_lattice(h, include_pairs=not args.singles, star_degree=star_degree)
    report = Report(target=h.name, degree=h.degree, records=records)
    print(lattice_frame(records).to_string(index=False))
    return _persist(report, args, "limits")


def cmd_lm(args: argparse.Namespace) -> int:
    h = build_preset(args.preset, args.degree)
    report = Report(target=h.name, degree=h.degree)
    print(f"[LM] {h.name}: matching the coproducts, {args.trials} random trials with seed {args.seed}")
    lm_records(report, h, family(h.name), "", args.trials, args.seed)
    print(report.render())
    return EXIT_FAIL if report.failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Two-dimensional quantum Galilei groups and their duals")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", choices=PRESET_NAMES, default="group_A")
    common.add_argument("--spec", default=None, help="structured-text algebra file")
    common.add_argument("--degree", type=int, default=_env_int("QGALILEI_DEGREE", DEFAULT_DEGREE))
    common.add_argument("--json", action="store_true")
    common.add_argument("--output", default=None)
    common.add_argument("--no-artifact", action="store_true")
    common.add_argument("--runs-dir", default=os.getenv("QGALILEI_RUNS_DIR", str(RUNS_DIR)))
    common.add_argument("--seed", type=int, default=_env_int("QGALILEI_SEED", 0))
    common.add_argument("--trials", type=int, default=LM_RANDOM_TRIALS)

    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", parents=[common], help="run the verification suite")
    check.add_argument("--pairs", action="store_true", help="include paired parameter limits")
    check.set_defaults(handler=cmd_check)
    dual = sub.add_parser("dual", parents=[common], help="reconstruct a dual structure by the pairing")
    dual.set_defaults(handler=cmd_dual)
    evaluate = sub.add_parser("eval", parents=[common], help="normal-order an expression")
    evaluate.add_argument("expression")
    evaluate.set_defaults(handler=cmd_eval)
    limits = sub.add_parser("limits", parents=[common], help="run the limit lattice")
    limits.add_argument("--singles", action="store_true", help="single parameter limits only")
    limits.set_defaults(handler=cmd_limits)
    lm = sub.add_parser("lm", parents=[common], help="coalgebra construction from commuting matrices")
    lm.set_defaults(handler=cmd_lm)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command in ("dual", "lm") and args.preset not in DUAL_PRESETS:
        args.preset = args.preset.replace("group", "dual")
    if args.spec and args.command == "check":
        args.preset = None
    try:
        return args.handler(args)
    except (ParseError, SpecFileError, FileNotFoundError) as exc:
        print(f"error: {exc}")
        return EXIT_LOAD_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
