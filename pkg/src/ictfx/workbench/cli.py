"""Command line interface.

Machine output is canonical JSON (sorted keys, two-space indent,
trailing newline) and is byte-identical with the HTTP API's response for
the same document and seed. Exit codes: 0 success, 1 unusable input or
I/O failure, 2 for ``audit``/``validate`` when the scenario fails.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from ..audit import audit_scenario
from ..model import Severity
from ..uncertainty import calibrate_k
from .report import (
    AssessmentOptions,
    render_baseline_human,
    render_human,
    render_sensitivity_human,
    report_to_dict,
    run_assessment,
    run_baseline_table,
    run_sensitivity,
    sensitivity_to_dict,
)
from .serialization import DocumentError, canonical_json, parse_scenario

ENV_ADDR = "ICTFX_ADDR"
DEFAULT_ADDR = "127.0.0.1:8355"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ictfx",
        description="Assess environmental effects induced by ICT services.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_options(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format",
            choices=("human", "machine"),
            default="human",
            help="human-readable text or canonical JSON (default: human)",
        )
        p.add_argument("--out", type=Path, help="write output to this file instead of stdout")

    assess = sub.add_parser("assess", help="run a full assessment of a scenario file")
    assess.add_argument("scenario_file", type=Path)
    assess.add_argument("--seed", type=int, help="seed for bootstrap and Monte Carlo")
    assess.add_argument(
        "--lenient", action="store_true", help="preserve unknown fields instead of rejecting"
    )
    add_output_options(assess)

    sens = sub.add_parser("sensitivity", help="parameter sensitivity of the headline effect")
    sens.add_argument("scenario_file", type=Path)
    sens.add_argument("--mode", choices=("tornado", "montecarlo"), required=True)
    sens.add_argument("--samples", type=int, default=10_000)
    sens.add_argument("--seed", type=int)
    add_output_options(sens)

    base = sub.add_parser("baseline", help="tabulate the counterfactual baseline")
    base.add_argument("scenario_file", type=Path)
    base.add_argument("--horizon", type=int, required=True, help="periods past introduction")
    add_output_options(base)

    audit = sub.add_parser("audit", help="audit a scenario; exit 2 on error-severity flags")
    audit.add_argument("scenario_file", type=Path)
    add_output_options(audit)

    cal = sub.add_parser(
        "calibrate-k",
        help="coefficient making a case-study average reproduce a population average",
    )
    cal.add_argument("--case-avg", type=float, required=True)
    cal.add_argument("--population-avg", type=float, required=True)
    add_output_options(cal)

    val = sub.add_parser("validate", help="validate a scenario file; exit 2 when invalid")
    val.add_argument("scenario_file", type=Path)
    val.add_argument(
        "--lenient", action="store_true", help="preserve unknown fields instead of rejecting"
    )
    add_output_options(val)

    serve = sub.add_parser("serve", help="run the HTTP API")
    serve.add_argument(
        "--addr",
        default=None,
        help=f"HOST:PORT to bind (default: ${ENV_ADDR} or {DEFAULT_ADDR})",
    )
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError("unreadable-file", str(path), str(exc)) from None


def _cmd_assess(args: argparse.Namespace) -> int:
    document = parse_scenario(_read(args.scenario_file), strict=not args.lenient)
    report = run_assessment(document, AssessmentOptions(seed=args.seed))
    if args.format == "machine":
        _emit(canonical_json(report_to_dict(report)), args.out)
    else:
        _emit(render_human(report), args.out)
    return 0


def _cmd_sensitivity(args: argparse.Namespace) -> int:
    document = parse_scenario(_read(args.scenario_file))
    options = AssessmentOptions(seed=args.seed, monte_carlo_samples=args.samples)
    report = run_sensitivity(document, args.mode, options)
    if args.format == "machine":
        _emit(canonical_json(sensitivity_to_dict(report)), args.out)
    else:
        _emit(render_sensitivity_human(report), args.out)
    return 0


def _cmd_baseline(args: argparse.Namespace) -> int:
    document = parse_scenario(_read(args.scenario_file))
    table = run_baseline_table(document, args.horizon)
    if args.format == "machine":
        _emit(canonical_json(table), args.out)
    else:
        _emit(render_baseline_human(table), args.out)
    return 0


def _cmd_audit(args: argparse.Namespace) -> int:
    document = parse_scenario(_read(args.scenario_file))
    flags = audit_scenario(document.scenario)
    if args.format == "machine":
        payload = {
            "schema_version": 1,
            "flags": [
                {
                    "code": f.code,
                    "severity": f.severity.value,
                    "message": f.message,
                    "rule_source": f.rule_source,
                }
                for f in flags
            ],
        }
        _emit(canonical_json(payload), args.out)
    else:
        if flags:
            lines = [f"Audit flags ({len(flags)}):"]
            lines += [
                f"  [{f.severity.value}] {f.code}: {f.message}" for f in flags
            ]
        else:
            lines = ["Audit flags: none"]
        _emit("\n".join(lines) + "\n", args.out)
    return 2 if any(f.severity is Severity.ERROR for f in flags) else 0


def _cmd_calibrate(args: argparse.Namespace) -> int:
    try:
        k = calibrate_k(args.case_avg, args.population_avg)
    except ValueError as exc:
        raise DocumentError("calibration-impossible", "", str(exc)) from None
    if args.format == "machine":
        _emit(canonical_json({"k": k}), args.out)
    else:
        _emit(
            f"k = {k:.6g}  (population average {args.population_avg:g} / "
            f"case-study average {args.case_avg:g})\n",
            args.out,
        )
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    from ..model import validate_scenario

    document = parse_scenario(
        _read(args.scenario_file), strict=not args.lenient, validate=False
    )
    result = validate_scenario(document.scenario)
    if args.format == "machine":
        payload = {
            "schema_version": 1,
            "valid": result.valid,
            "issues": [
                {
                    "code": i.code,
                    "path": i.path,
                    "message": i.message,
                    "severity": i.severity.value,
                }
                for i in result.issues
            ],
        }
        _emit(canonical_json(payload), args.out)
    else:
        if result.issues:
            lines = ["valid" if result.valid else "INVALID"]
            lines += [
                f"  [{i.severity.value}] {i.code} at {i.path}: {i.message}"
                for i in result.issues
            ]
        else:
            lines = ["valid", "  no issues"]
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if result.valid else 2


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    addr = args.addr or os.environ.get(ENV_ADDR) or DEFAULT_ADDR
    host, sep, port_text = addr.rpartition(":")
    if not sep or not port_text.isdigit():
        raise DocumentError(
            "invalid-address", "--addr", f"expected HOST:PORT, got {addr!r}"
        )
    try:
        uvicorn.run(create_app(), host=host, port=int(port_text), log_level="info")
    except OSError as exc:
        raise DocumentError("bind-failure", addr, str(exc)) from None
    return 0


_COMMANDS = {
    "assess": _cmd_assess,
    "sensitivity": _cmd_sensitivity,
    "baseline": _cmd_baseline,
    "audit": _cmd_audit,
    "calibrate-k": _cmd_calibrate,
    "validate": _cmd_validate,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DocumentError as exc:
        location = f" at {exc.path}" if exc.path else ""
        sys.stderr.write(f"error [{exc.code}]{location}: {exc.message}\n")
        for issue in exc.issues:
            sys.stderr.write(
                f"  [{issue.severity.value}] {issue.code} at {issue.path}: {issue.message}\n"
            )
        return 1


if __name__ == "__main__":
    sys.exit(main())
