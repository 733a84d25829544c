"""Command-line frontend.

Every compute command reads a JSON config file (``--config``), optionally
overridden per run (``--seed``, ``--m``), and emits JSON, CSV or plain text.
JSON output wraps the result together with the parsed spec so runs are
auditable; text output renders probabilities at two decimals.  Exit codes:
0 success, 2 config parse error, 3 domain error, 4 threshold not attained
within the search bounds.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import configio
from .configio import ConfigError, SCHEMA_VERSION
from .decision import Decision, DecisionReport, analyze_trial
from .frequentist import lambda_freq, min_sample_size_freq
from .oc import OcResult, run_scenario_grid, results_to_csv
from .quadrature import IntegrationError
from .reports import ReportTemplate, generate_report_text
from .samplesize import (
    NotAttainedError,
    SampleSizeResult,
    SearchMethod,
    lambda_curve,
    min_sample_size_deterministic,
    min_sample_size_simulated,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_NOT_ATTAINED = 4

COMPUTE_COMMANDS = (
    "sample-size",
    "sample-size-sim",
    "analyze",
    "oc-sim",
    "freq-design",
    "curve",
    "report",
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selecta",
        description="Bayesian treatment-selection design toolkit for two-arm phase II trials",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("sample-size", "deterministic (plug-in score) sample size search"),
        ("sample-size-sim", "simulation-averaged sample size search"),
        ("analyze", "posterior analysis of a completed trial"),
        ("oc-sim", "operating characteristics over a scenario grid"),
        ("freq-design", "frequentist comparator score and sample size"),
        ("curve", "score-versus-size curve data"),
        ("report", "protocol / SAP / summary text generation"),
    ]:
        cmd = sub.add_parser(name, help=helptext)
        cmd.add_argument("--config", required=True, help="path to the JSON config file")
        cmd.add_argument(
            "--output", choices=("json", "csv", "text"), default="json",
            help="output format (default json)",
        )
        cmd.add_argument("--out", default=None, help="write output to this file instead of stdout")
        cmd.add_argument("--seed", type=int, default=None, help="override the config seed")
        cmd.add_argument("--m", type=int, default=None, help="override the replicate count")
        cmd.add_argument("--quiet", action="store_true", help="suppress stdout when --out is given")
    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--port", type=int, default=8652, help="listen port (default 8652)")
    serve.add_argument("--host", default="127.0.0.1", help="bind address (default 127.0.0.1)")
    return parser


def _load_config(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must contain a JSON object")
    return data


def _apply_overrides(data: dict, args) -> dict:
    data = dict(data)
    if args.seed is not None:
        data["seed"] = args.seed
    if args.m is not None:
        data["replicates"] = args.m
    return data


def _sample_size_text(spec_dict: dict, result: SampleSizeResult) -> str:
    lines = ["sample size result", ""]
    lines += [f"{key}: {value}" for key, value in _flatten(spec_dict).items()]
    lines.append("")
    if result.under_lower_bound:
        lines.append("n_min: under lower bound (criterion holds at every scanned size)")
    else:
        lines.append(f"n_min: {result.n_min}")
    lines.append(f"method: {result.method.value}")
    lines.append(f"threshold: {result.threshold:.2f}")
    return "\n".join(lines) + "\n"


def _decision_text(spec_dict: dict, report: DecisionReport) -> str:
    decision_text = (
        "select treatment A"
        if report.decision == Decision.SELECT_A
        else "consider other factors"
    )
    lines = ["trial analysis", ""]
    lines += [f"{key}: {value}" for key, value in _flatten(spec_dict).items()]
    lines.append("")
    lines.append(f"p_correct: {report.p_correct:.2f}")
    lines.append(f"p_ambiguous: {report.p_ambiguous:.2f}")
    lines.append(f"p_below: {report.p_below:.2f}")
    lines.append(f"lambda_star: {report.lambda_star:.2f}")
    lines.append(f"decision: {decision_text}")
    return "\n".join(lines) + "\n"


def _flatten(data: dict, prefix: str = "") -> dict:
    flat: dict = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        else:
            flat[name] = value
    return flat


def _envelope(command: str, spec_dict: dict, result_dict) -> str:
    return json.dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "spec": spec_dict,
            "result": result_dict,
        },
        indent=2,
    ) + "\n"


def _run_compute(args) -> tuple[str, str]:
    """Returns (rendered output, format actually used)."""
    data = _apply_overrides(_load_config(args.config), args)
    command = args.command

    if command in ("sample-size", "sample-size-sim"):
        spec = configio.design_spec_from_dict(data)
        search = (
            min_sample_size_deterministic
            if command == "sample-size"
            else min_sample_size_simulated
        )
        result = search(spec)
        spec_dict = configio.design_spec_to_dict(spec)
        if args.output == "json":
            return _envelope(command, spec_dict, configio.sample_size_result_to_dict(result)), "json"
        if args.output == "csv":
            return configio.sample_size_result_to_csv(result), "csv"
        return _sample_size_text(spec_dict, result), "text"

    if command == "analyze":
        inputs = configio.decision_inputs_from_dict(data)
        report = analyze_trial(inputs)
        spec_dict = configio.decision_inputs_to_dict(inputs)
        if args.output == "json":
            return _envelope(command, spec_dict, configio.decision_report_to_dict(report)), "json"
        if args.output == "csv":
            return configio.decision_report_to_csv(report), "csv"
        return _decision_text(spec_dict, report), "text"

    if command == "oc-sim":
        raw_scenarios = data.get("scenarios")
        if not isinstance(raw_scenarios, list) or not raw_scenarios:
            raise ConfigError("oc-sim config must contain a nonempty 'scenarios' array")
        overrides = {k: v for k, v in data.items() if k in ("seed", "replicates")}
        scenarios = [
            configio.oc_scenario_from_dict({**entry, **overrides})
            for entry in raw_scenarios
        ]
        rows = run_scenario_grid(scenarios)
        paired = list(zip(scenarios, (result for _, result in rows)))
        if args.output == "json":
            payload = [
                {
                    "label": label,
                    "scenario": configio.oc_scenario_to_dict(scenario),
                    "result": configio.oc_result_to_dict(result),
                }
                for (label, result), scenario in zip(rows, scenarios)
            ]
            return _envelope(command, {"scenarios": len(scenarios)}, payload), "json"
        if args.output == "csv":
            return results_to_csv(paired), "csv"
        lines = ["operating characteristics", ""]
        for scenario, result in paired:
            lines.append(
                f"{scenario.label or 'scenario'} (n={scenario.n_per_arm}): "
                f"xi={result.xi * 100:.1f}% nu={result.nu * 100:.1f}% "
                f"(se {result.mc_standard_error * 100:.2f}pp, m={result.replicates_used})"
            )
        return "\n".join(lines) + "\n", "text"

    if command == "freq-design":
        design = configio.freq_design_from_dict({k: v for k, v in data.items() if k != "n"})
        spec_dict = configio.freq_design_to_dict(design)
        if "n" in data:
            n = data["n"]
            if not isinstance(n, int) or n < 1:
                raise ConfigError("'n' must be a positive integer")
            score = lambda_freq(n, design)
            if args.output == "json":
                return _envelope(command, spec_dict, {"n": n, "lambda": score}), "json"
            if args.output == "csv":
                return f"n,lambda\n{n},{score!r}\n", "csv"
            return f"frequentist score\n\nn: {n}\nlambda: {score:.2f}\n", "text"
        result = min_sample_size_freq(design)
        if args.output == "json":
            return _envelope(command, spec_dict, configio.sample_size_result_to_dict(result)), "json"
        if args.output == "csv":
            return configio.sample_size_result_to_csv(result), "csv"
        return _sample_size_text(spec_dict, result), "text"

    if command == "curve":
        spec = configio.design_spec_from_dict(data.get("spec", data))
        method = SearchMethod(data.get("method", "deterministic"))
        n_from = data.get("n_from", spec.n_lo)
        n_to = data.get("n_to", spec.n_hi)
        if not isinstance(n_from, int) or not isinstance(n_to, int):
            raise ConfigError("'n_from' and 'n_to' must be integers")
        points = lambda_curve(spec, n_from, n_to, method)
        spec_dict = configio.design_spec_to_dict(spec)
        if args.output == "json":
            payload = {"method": method.value, "points": [[n, v] for n, v in points]}
            return _envelope(command, spec_dict, payload), "json"
        if args.output == "csv":
            return configio.curve_to_csv(points), "csv"
        lines = [f"score curve ({method.value})", ""]
        lines += [f"{n}: {value:.4f}" for n, value in points]
        return "\n".join(lines) + "\n", "text"

    if command == "report":
        return _run_report(data), "text"

    raise ConfigError(f"unknown command {command!r}")


def _run_report(data: dict) -> str:
    template_raw = data.get("template")
    try:
        template = ReportTemplate(template_raw)
    except ValueError:
        raise ConfigError(
            f"'template' must be one of {[t.value for t in ReportTemplate]}, got {template_raw!r}"
        ) from None
    kind = data.get("kind", "design")
    if kind == "design":
        spec = configio.design_spec_from_dict(_require_section(data, "spec"))
        method = SearchMethod(data.get("method", "deterministic"))
        if method == SearchMethod.DETERMINISTIC:
            result = min_sample_size_deterministic(spec)
        elif method == SearchMethod.SIMULATED:
            result = min_sample_size_simulated(spec)
        else:
            raise ConfigError("design reports accept method 'deterministic' or 'simulated'")
        return generate_report_text(spec, result, template)
    if kind == "analysis":
        inputs = configio.decision_inputs_from_dict(_require_section(data, "spec"))
        report = analyze_trial(inputs)
        return generate_report_text(inputs, report, template)
    if kind == "oc":
        scenario = configio.oc_scenario_from_dict(_require_section(data, "spec"))
        result: OcResult = run_scenario_grid([scenario])[0][1]
        return generate_report_text(scenario, result, template)
    raise ConfigError(f"'kind' must be 'design', 'analysis' or 'oc', got {kind!r}")


def _require_section(data: dict, field: str) -> dict:
    section = data.get(field)
    if not isinstance(section, dict):
        raise ConfigError(f"config must contain a '{field}' object")
    return section


def _emit_error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return EXIT_OK

    try:
        output, _ = _run_compute(args)
    except ConfigError as exc:
        _emit_error("config", str(exc))
        return EXIT_CONFIG
    except NotAttainedError as exc:
        _emit_error("not_attained", str(exc))
        return EXIT_NOT_ATTAINED
    except (ValueError, IntegrationError) as exc:
        _emit_error("domain", str(exc))
        return EXIT_DOMAIN

    if args.out is not None:
        Path(args.out).write_text(output)
        if not args.quiet:
            sys.stdout.write(output)
    else:
        sys.stdout.write(output)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
