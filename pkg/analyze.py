"""
Command-line entry point for graph energy analysis.

    python analyze.py energy "C~"
    python analyze.py bounds Cr --format json
    python analyze.py scan 7 --workers 4
    python analyze.py verify --grid-points 100000
"""

import argparse
import io
import json
import os
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import pandas as pd
import yaml

from bounds import BOUND_KEYS, BoundReport, build_report
from enumeration import (IngestDiagnostic, IngestError, ScanError, EnumerationSummary,
                         ingest_graph6, scan)
from graph_core import Graph, UnsupportedOrderError, from_graph6
from property_checks import PropertyResult, SuiteSettings, run_property_suite
from spectra import SpectrumError


COMMANDS = ("energy", "bounds", "classify", "scan", "verify")
FORMATS = ("text", "json", "csv")
WORKERS_ENV = "GRAPH_ENERGY_WORKERS"

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_VIOLATION = 2
EXIT_USAGE = 64

BANNER = "=" * 60


class UsageError(ValueError):
    """Bad command line, configuration or input."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which is reserved for violations here
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    """One CLI invocation after merging flags, environment and config file."""

    command: str
    input: Optional[str] = None
    workers: int = 1
    format: str = "text"
    strict: bool = False
    allow_long: bool = False
    progress: bool = False
    suite: SuiteSettings = field(default_factory=SuiteSettings)

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command '{self.command}'")
        if self.command == "verify":
            if self.input is not None:
                raise UsageError("verify takes no input")
        elif self.input is None:
            raise UsageError(f"{self.command} needs exactly one input")
        if self.workers < 1:
            raise UsageError(f"workers must be at least 1, got {self.workers}")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")
        try:
            self.suite.validate()
        except ValueError as exc:
            raise UsageError(str(exc)) from exc


def load_config(path: str) -> Dict:
    """
    Load a YAML run configuration.

    Raises:
        UsageError: missing file or not a YAML mapping
    """
    if not Path(path).exists():
        raise UsageError(f"config file not found: {path}")
    with open(path, 'r') as f:
        config = yaml.safe_load(f) or {}
    if not isinstance(config, dict):
        raise UsageError(f"config file {path} must contain a mapping")
    return config


def _workers_from_env(env) -> Optional[int]:
    raw = env.get(WORKERS_ENV)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be an integer, got '{raw}'")


def build_run_config(args: argparse.Namespace, env=None) -> RunConfig:
    """
    Merge settings: flag > GRAPH_ENERGY_WORKERS (workers only) > --config file > defaults.
    """
    env = os.environ if env is None else env
    config = load_config(args.config) if args.config else {}

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        return config.get(key, default)

    workers = args.workers
    if workers is None:
        workers = _workers_from_env(env)
    if workers is None:
        workers = config.get('workers', 1)

    suite_values = {f.name: config.get(f.name, f.default) for f in fields(SuiteSettings)}
    if getattr(args, 'grid_points', None) is not None:
        suite_values['grid_points'] = args.grid_points

    run = RunConfig(
        command=args.command,
        input=getattr(args, 'input', None),
        workers=int(workers),
        format=pick(args.format, 'format', "text"),
        strict=bool(pick(args.strict, 'strict', False)),
        allow_long=bool(pick(getattr(args, 'allow_long', None), 'allow_long', False)),
        progress=bool(pick(args.progress, 'progress', False)),
        suite=SuiteSettings(**suite_values),
    )
    run.validate()
    return run


# ---------------------------------------------------------------------------
# Input
# ---------------------------------------------------------------------------

def resolve_input(text: str) -> Tuple[str, object]:
    """
    Classify a positional input.

    Returns:
        ("order", n) for an integer, ("stdin", None) for '-',
        ("file", path) for an existing file, otherwise ("graph6", text)
    """
    try:
        return "order", int(text)
    except ValueError:
        pass
    if text == "-":
        return "stdin", None
    if Path(text).is_file():
        return "file", Path(text)
    return "graph6", text


def _report_diagnostics(diagnostics: List[IngestDiagnostic]):
    # stderr keeps json/csv output on stdout parseable
    for diag in diagnostics:
        print(f"  Warning: line {diag.line_number}: {diag.message}", file=sys.stderr)


def load_graphs(run: RunConfig) -> List[Graph]:
    """Decode the graphs named by a non-order input."""
    kind, value = resolve_input(run.input)
    if kind == "order":
        raise UsageError(f"{run.command} expects a graph, got the order {value}")
    if kind == "graph6":
        return [from_graph6(value)]

    diagnostics: List[IngestDiagnostic] = []
    if kind == "stdin":
        graphs = list(ingest_graph6(sys.stdin, strict=run.strict, diagnostics=diagnostics))
    else:
        with open(value, 'r') as f:
            graphs = list(ingest_graph6(f, strict=run.strict, diagnostics=diagnostics))
    _report_diagnostics(diagnostics)
    return graphs


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, float):
        return f"{value:.10f}"
    return str(value)


def _csv_row(report: BoundReport) -> Dict:
    data = report.to_dict()
    row = {key: data[key] for key in ("graph6", "n", "m", "avg_degree", "avg_degree_exact",
                                      "max_degree", "min_degree", "det", "singular",
                                      "energy", "mu1", "mu2")}
    row["eigenvalues"] = " ".join(f"{x:.10f}" for x in data["eigenvalues"])
    for key in BOUND_KEYS:
        row[f"bound_{key}"] = data["bounds"][key]
    row["quantity_C"] = data["quantity_C"]
    for key in ("conjecture1", "conjecture2"):
        row[f"target_{key}"] = data["targets"][key]
        row[f"margin_{key}"] = data["margins"][key]
        row[f"verdict_{key}"] = data["verdicts"][key]
    row["conjecture1_certified"] = data["verdicts"]["conjecture1_certified"]
    row["coverage"] = "|".join(data["coverage"])
    return row


def _energy_dict(report: BoundReport) -> Dict:
    data = report.to_dict()
    return {key: data[key] for key in ("graph6", "n", "m", "eigenvalues", "energy",
                                       "det", "singular", "verdicts")}


def render_energy(reports: List[BoundReport], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([_energy_dict(r) for r in reports], indent=2)
    if fmt == "csv":
        frame = pd.DataFrame([_csv_row(r) for r in reports])
        return frame[["graph6", "n", "m", "eigenvalues", "energy", "det", "singular",
                      "verdict_conjecture1", "verdict_conjecture2"]].to_csv(index=False)

    lines = []
    for r in reports:
        lines += [BANNER, f"GRAPH ENERGY: {r.graph_id}", BANNER,
                  f"  n: {r.n}",
                  f"  m: {r.m}",
                  f"  eigenvalues: {', '.join(f'{x:.10f}' for x in r.eigenvalues)}",
                  f"  energy: {r.energy:.10f}",
                  f"  det: {r.det}",
                  f"  singular: {str(not r.nonsingular).lower()}"]
        if not r.nonsingular:
            lines.append(f"  conjecture1: {r.conjecture1.value}")
            lines.append(f"  conjecture2: {r.conjecture2.value}")
        lines.append("")
    return "\n".join(lines)


def render_bounds(reports: List[BoundReport], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2)
    if fmt == "csv":
        return pd.DataFrame([_csv_row(r) for r in reports]).to_csv(index=False)

    lines = []
    for r in reports:
        lines += [BANNER, f"ENERGY BOUNDS: {r.graph_id}", BANNER,
                  f"  n: {r.n}   m: {r.m}   avg degree: {r.avg_degree} "
                  f"({float(r.avg_degree):.10f})",
                  f"  max degree: {r.max_degree}   min degree: {r.min_degree}",
                  f"  det: {r.det}",
                  f"  energy: {r.energy:.10f}",
                  f"  mu1: {r.mu1:.10f}   mu2: {r.mu2:.10f}",
                  "",
                  "Lower bounds:"]
        for key in BOUND_KEYS:
            value = r.bounds.get(key)
            reason = f" ({r.inapplicable[key]})" if value is None and key in r.inapplicable else ""
            lines.append(f"  {key}: {_fmt(value)}{reason}")
        lines += [f"  quantity C: {_fmt(r.quantity_C)}",
                  "",
                  "Conjectures:",
                  f"  max + min degree: target {r.conjecture1_target}, "
                  f"margin {r.conjecture1_margin:+.10f}, {r.conjecture1.value}"
                  + (" (certified)" if r.conjecture1_certified else ""),
                  f"  n - 1 + avg degree: target {r.conjecture2_target:.10f}, "
                  f"margin {r.conjecture2_margin:+.10f}, {r.conjecture2.value}",
                  f"  coverage: {', '.join(label.value for label in r.coverage) or 'n/a'}",
                  ""]
    return "\n".join(lines)


def render_classify(reports: List[BoundReport], fmt: str) -> str:
    rows = [{"graph6": r.graph_id, "n": r.n,
             "coverage": [label.value for label in r.coverage] or ["not-applicable"]}
            for r in reports]
    if fmt == "json":
        return json.dumps(rows, indent=2)
    if fmt == "csv":
        return pd.DataFrame([dict(row, coverage="|".join(row["coverage"]))
                             for row in rows]).to_csv(index=False)
    return "\n".join(f"{row['graph6']}: {', '.join(row['coverage'])}" for row in rows) + "\n"


def render_summary(summary: EnumerationSummary, fmt: str, label: str) -> str:
    if fmt == "json":
        return json.dumps(summary.to_dict(), indent=2)

    totals = pd.DataFrame({
        "key": ["order", "total_graphs", "nonsingular_count", "conjecture2_violations",
                "conjecture1_violations", "unexpected_violations"],
        "value": [summary.order if summary.order is not None else label,
                  summary.total_graphs, summary.nonsingular_count,
                  len(summary.conjecture2_violations), len(summary.conjecture1_violations),
                  len(summary.unexpected_violations)],
    })
    if fmt == "csv":
        buffer = io.StringIO()
        summary.violations_frame().to_csv(buffer, index=False)
        buffer.write("\n")
        totals.to_csv(buffer, index=False)
        coverage = summary.coverage_frame().rename(columns={"label": "key", "graphs": "value"})
        coverage["key"] = "coverage_" + coverage["key"]
        coverage.to_csv(buffer, index=False, header=False)
        return buffer.getvalue()

    lines = [BANNER, f"CONJECTURE SCAN: {label}", BANNER,
             f"  Graphs scanned: {summary.total_graphs}",
             f"  Non-singular: {summary.nonsingular_count}",
             "",
             "Coverage (non-singular, n >= 5):",
             summary.coverage_frame().to_string(index=False),
             ""]
    violations = summary.violations_frame()
    if violations.empty:
        lines.append("Violations: none")
    else:
        lines.append("Violations:")
        lines.append(violations.to_string(index=False, float_format=lambda x: f"{x:.10f}"))
    lines.append("")
    unexpected = len(summary.unexpected_violations)
    if unexpected:
        lines.append(f"✗ {unexpected} unexpected violation(s)")
    else:
        lines.append("✓ No unexpected violations")
    return "\n".join(lines) + "\n"


def render_results(results: List[PropertyResult], fmt: str) -> str:
    records = [{"name": r.name, "passed": r.passed, "checked": r.checked, "detail": r.detail}
               for r in results]
    if fmt == "json":
        return json.dumps(records, indent=2)
    if fmt == "csv":
        return pd.DataFrame(records).to_csv(index=False)
    lines = [BANNER, "PROPERTY SUITE", BANNER]
    for r in results:
        mark = "✓" if r.passed else "✗"
        lines.append(f"  {mark} {r.name} ({r.checked} checked)")
        if r.detail:
            lines.append(f"      {r.detail}")
    failed = sum(not r.passed for r in results)
    lines += ["", f"{len(results) - failed}/{len(results)} properties passed"]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_energy(run: RunConfig) -> int:
    reports = [build_report(g) for g in load_graphs(run)]
    print(render_energy(reports, run.format))
    return EXIT_OK


def cmd_bounds(run: RunConfig) -> int:
    reports = [build_report(g) for g in load_graphs(run)]
    print(render_bounds(reports, run.format))
    return EXIT_OK


def cmd_classify(run: RunConfig) -> int:
    reports = [build_report(g) for g in load_graphs(run)]
    print(render_classify(reports, run.format))
    return EXIT_OK


def cmd_scan(run: RunConfig) -> int:
    kind, value = resolve_input(run.input)
    if kind == "order":
        summary = scan(n=value, workers=run.workers, allow_long=run.allow_long,
                       progress=run.progress)
        label = f"n = {value}"
    else:
        graphs = load_graphs(run)
        summary = scan(graphs=graphs, workers=run.workers, progress=run.progress)
        label = "corpus" if kind != "graph6" else value
    print(render_summary(summary, run.format, label))
    return EXIT_VIOLATION if summary.unexpected_violations else EXIT_OK


def cmd_verify(run: RunConfig) -> int:
    results = run_property_suite(run.suite)
    print(render_results(results, run.format))
    return EXIT_OK if all(r.passed for r in results) else EXIT_PROPERTY_FAILURE


HANDLERS = {
    "energy": cmd_energy,
    "bounds": cmd_bounds,
    "classify": cmd_classify,
    "scan": cmd_scan,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('--config', type=str, default=None, help='Path to YAML config file')
    common.add_argument('--format', type=str, default=None, choices=FORMATS,
                        help='Output format (default: text)')
    common.add_argument('--strict', action='store_true', default=None,
                        help='Abort on the first malformed graph6 line')
    common.add_argument('--progress', action='store_true', default=None,
                        help='Show a progress bar during scans')
    common.add_argument('--workers', type=int, default=None,
                        help=f'Worker processes for scans (default: ${WORKERS_ENV} or 1)')

    parser = _Parser(description="Graph energy, energy lower bounds and conjecture scans")
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    for name, help_text in (("energy", "Eigenvalues, energy and determinant"),
                            ("bounds", "Every lower bound, targets, verdicts and coverage"),
                            ("classify", "Sufficient conditions that certify the average-degree conjecture")):
        cmd = sub.add_parser(name, parents=[common], help=help_text)
        cmd.add_argument('input', help="graph6 string, corpus file, or '-' for stdin")

    scan_parser = sub.add_parser('scan', parents=[common], help="Check all graphs of an order or a corpus")
    scan_parser.add_argument('input', help="Order n, corpus file, graph6 string or '-'")
    scan_parser.add_argument('--allow-long', action='store_true', default=None,
                             help='Permit n = 10 (about 12 million graphs)')

    verify_parser = sub.add_parser('verify', parents=[common], help="Run the property suite")
    verify_parser.add_argument('--grid-points', type=int, default=None,
                               help='Lemma grid resolution (default: 100000)')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
        run = build_run_config(args)
        return HANDLERS[run.command](run)
    except (UsageError, IngestError, UnsupportedOrderError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScanError, SpectrumError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_PROPERTY_FAILURE
    except ValueError as exc:   # graph6 parse errors and invalid graphs
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
