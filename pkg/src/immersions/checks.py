"""Theorem checkers, batch sweeps, and report persistence.

Each checker compares a chromatic bound against exactly computed
invariants and records the outcome in a CheckReport.  The bounds, with
t the largest immersion order under the named flags:

- main:     chi <= ceil(3 * t_strong_odd / 2), integer form (3t+1) div 2,
            for graphs with alpha <= 2.
- appendix: the constructive builder achieves t >= ceil(n/3) under
            strong+odd, for graphs with alpha <= 2.
- vergara:  n <= 2 * t_plain + 1, for graphs with alpha <= 2.
- alpha3:   chi <= 4 * t_strong_odd, for graphs with alpha = 3; rows
            with t_strong_odd < 2 are out-of-regime (the theorem's
            proof regime assumes larger t), recorded but never counted
            as failures.

Batch rows always materialize every leading column so the CSV schema
is fixed; timings are kept in memory only, never serialized, so output
is byte-identical across runs and worker counts.
"""

from __future__ import annotations

import csv
import io
import json
import multiprocessing
import sys
import time
from dataclasses import dataclass, field

from .construct import build_third_immersion
from .coloring import chromatic_number
from .errors import InapplicableCheckError, SizeCapError
from .families import enumerate_alpha_le2, enumerate_graphs, sample_alpha_le2
from .graphs import Graph, encode_graph6, independence_number, parse_graph6
from .immersion import (
    PLAIN,
    STRONG_ODD,
    certificate_to_json,
    max_clique_immersion,
    verify_certificate,
)

CHECK_NAMES = ("main", "appendix", "vergara", "alpha3")


@dataclass(frozen=True)
class CheckOutcome:
    bound_value: int
    holds: bool | None
    regime: str = "ok"  # ok | out-of-regime | inapplicable

    @property
    def status(self) -> str:
        if self.regime != "ok":
            return self.regime
        return "true" if self.holds else "false"


@dataclass
class CheckReport:
    graph6: str
    n: int
    alpha: int | None = None
    chi: int | None = None
    t_max_plain: int | None = None
    t_max_strong_odd: int | None = None
    bounds: dict[str, CheckOutcome] = field(default_factory=dict)
    runtime_ms: dict[str, float] = field(default_factory=dict)


def _outcome_main(n: int, chi: int, t_strong_odd: int) -> CheckOutcome:
    bound = (3 * t_strong_odd + 1) // 2
    return CheckOutcome(bound, chi <= bound)


def _outcome_appendix(g: Graph) -> CheckOutcome:
    bound = -(-g.n // 3)
    cert = build_third_immersion(g)
    accepted = verify_certificate(g, cert, STRONG_ODD).accepted
    return CheckOutcome(bound, accepted and cert.t >= bound)


def _outcome_vergara(n: int, t_plain: int) -> CheckOutcome:
    bound = 2 * t_plain + 1
    return CheckOutcome(bound, n <= bound)


def _outcome_alpha3(chi: int, t_strong_odd: int) -> CheckOutcome:
    bound = 4 * t_strong_odd
    if t_strong_odd < 2:
        return CheckOutcome(bound, None, "out-of-regime")
    return CheckOutcome(bound, chi <= bound)


def check_theorem_main(g: Graph) -> CheckReport:
    report = CheckReport(encode_graph6(g), g.n, alpha=independence_number(g))
    if report.alpha > 2:
        raise InapplicableCheckError(f"main check needs alpha <= 2, got {report.alpha}")
    report.chi = chromatic_number(g)[0]
    report.t_max_strong_odd = max_clique_immersion(g, STRONG_ODD)[0]
    report.bounds["main"] = _outcome_main(g.n, report.chi, report.t_max_strong_odd)
    return report


def check_appendix(g: Graph) -> CheckReport:
    report = CheckReport(encode_graph6(g), g.n, alpha=independence_number(g))
    if report.alpha > 2:
        raise InapplicableCheckError(f"appendix check needs alpha <= 2, got {report.alpha}")
    report.bounds["appendix"] = _outcome_appendix(g)
    return report


def check_vergara(g: Graph) -> CheckReport:
    report = CheckReport(encode_graph6(g), g.n, alpha=independence_number(g))
    if report.alpha > 2:
        raise InapplicableCheckError(f"vergara check needs alpha <= 2, got {report.alpha}")
    report.t_max_plain = max_clique_immersion(g, PLAIN)[0]
    report.bounds["vergara"] = _outcome_vergara(g.n, report.t_max_plain)
    return report


def check_alpha3(g: Graph) -> CheckReport:
    report = CheckReport(encode_graph6(g), g.n, alpha=independence_number(g))
    if report.alpha != 3:
        raise InapplicableCheckError(f"alpha3 check needs alpha = 3, got {report.alpha}")
    report.chi = chromatic_number(g)[0]
    report.t_max_strong_odd = max_clique_immersion(g, STRONG_ODD)[0]
    report.bounds["alpha3"] = _outcome_alpha3(report.chi, report.t_max_strong_odd)
    return report


def evaluate_graph(g: Graph, checks: tuple[str, ...]) -> CheckReport:
    """Full row: every leading column plus the requested check outcomes."""
    for name in checks:
        if name not in CHECK_NAMES:
            raise ValueError(f"unknown check {name!r}; known: {', '.join(CHECK_NAMES)}")
    report = CheckReport(encode_graph6(g), g.n)
    clock = time.perf_counter
    start = clock()
    report.alpha = independence_number(g)
    report.runtime_ms["alpha"] = (clock() - start) * 1000
    start = clock()
    report.chi = chromatic_number(g)[0]
    report.runtime_ms["chi"] = (clock() - start) * 1000
    start = clock()
    report.t_max_plain = max_clique_immersion(g, PLAIN)[0] if g.n else 0
    report.runtime_ms["t_max_plain"] = (clock() - start) * 1000
    start = clock()
    report.t_max_strong_odd = max_clique_immersion(g, STRONG_ODD)[0] if g.n else 0
    report.runtime_ms["t_max_strong_odd"] = (clock() - start) * 1000

    for name in checks:
        start = clock()
        if name == "main":
            if report.alpha > 2:
                outcome = CheckOutcome((3 * report.t_max_strong_odd + 1) // 2, None, "inapplicable")
            else:
                outcome = _outcome_main(g.n, report.chi, report.t_max_strong_odd)
        elif name == "appendix":
            if report.alpha > 2 or g.n == 0:
                outcome = CheckOutcome(-(-g.n // 3), None, "inapplicable")
            else:
                outcome = _outcome_appendix(g)
        elif name == "vergara":
            if report.alpha > 2:
                outcome = CheckOutcome(2 * report.t_max_plain + 1, None, "inapplicable")
            else:
                outcome = _outcome_vergara(g.n, report.t_max_plain)
        else:
            if report.alpha != 3:
                outcome = CheckOutcome(4 * report.t_max_strong_odd, None, "inapplicable")
            else:
                outcome = _outcome_alpha3(report.chi, report.t_max_strong_odd)
        report.bounds[name] = outcome
        report.runtime_ms[f"check_{name}"] = (clock() - start) * 1000
    return report


def _worker(task: tuple[str, tuple[str, ...]]) -> CheckReport:
    line, checks = task
    return evaluate_graph(parse_graph6(line), checks)


def _parse_generator_spec(spec: str):
    name, _, rest = spec.partition(":")
    params: dict[str, int] = {}
    if rest:
        for item in rest.split(","):
            key, _, value = item.partition("=")
            try:
                params[key.strip()] = int(value)
            except ValueError as exc:
                raise ValueError(f"bad generator parameter {item!r} in {spec!r}") from exc
    if name not in ("alpha2", "all", "sample"):
        raise ValueError(f"unknown generator family {name!r} in {spec!r}")
    if "n" not in params:
        raise ValueError(f"generator {name!r} needs n=<size> in {spec!r}")
    if name == "alpha2":
        return enumerate_alpha_le2(params["n"])
    if name == "all":
        return enumerate_graphs(params["n"])
    return sample_alpha_le2(params["n"], params.get("count", 100), params.get("seed", 0))


def _resolve_source(source) -> list[str]:
    """Normalize any accepted batch source to a list of graph6 words."""
    if isinstance(source, str):
        family = source.partition(":")[0]
        if family in ("alpha2", "all", "sample"):
            return [encode_graph6(g) for g in _parse_generator_spec(source)]
        with open(source, "r", encoding="ascii") as handle:
            lines = [line.strip() for line in handle]
        return [line for line in lines if line and line != ">>graph6<<"]
    return [encode_graph6(g) for g in source]


def _csv_bytes(rows: list[CheckReport], checks: tuple[str, ...]) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    header = ["graph6", "n", "alpha", "chi", "t_max_plain", "t_max_strong_odd"]
    for name in checks:
        header += [f"{name}_bound", f"{name}_holds"]
    writer.writerow(header)
    for report in rows:
        row = [
            report.graph6,
            report.n,
            report.alpha,
            report.chi,
            report.t_max_plain,
            report.t_max_strong_odd,
        ]
        for name in checks:
            outcome = report.bounds[name]
            row += [outcome.bound_value, outcome.status]
        writer.writerow(row)
    return buffer.getvalue().encode("ascii")


def _json_bytes(rows: list[CheckReport], checks: tuple[str, ...]) -> bytes:
    payload = {
        "checks": list(checks),
        "rows": [
            {
                "graph6": report.graph6,
                "n": report.n,
                "alpha": report.alpha,
                "chi": report.chi,
                "t_max_plain": report.t_max_plain,
                "t_max_strong_odd": report.t_max_strong_odd,
                "checks": {
                    name: {
                        "bound": report.bounds[name].bound_value,
                        "status": report.bounds[name].status,
                    }
                    for name in checks
                },
            }
            for report in rows
        ],
    }
    return (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode("ascii")


def _quarantine_payload(report: CheckReport, failed: list[str]) -> dict:
    g = parse_graph6(report.graph6)
    chi, coloring = chromatic_number(g)
    _, plain_cert = max_clique_immersion(g, PLAIN)
    _, strong_odd_cert = max_clique_immersion(g, STRONG_ODD)
    return {
        "graph6": report.graph6,
        "n": report.n,
        "alpha": report.alpha,
        "chi": chi,
        "coloring": list(coloring.colors),
        "t_max_plain": report.t_max_plain,
        "t_max_strong_odd": report.t_max_strong_odd,
        "failed_checks": failed,
        "certificate_plain": json.loads(certificate_to_json(plain_cert, PLAIN)),
        "certificate_strong_odd": json.loads(certificate_to_json(strong_odd_cert, STRONG_ODD)),
    }


def run_batch(source, checks, workers: int = 1, out: str | None = None, fmt: str = "csv") -> int:
    """Evaluate every graph, write the report, return the exit code.

    Exit 0 when every applicable check holds, 1 when any fails, 2 on
    input problems.  Output is byte-identical for a fixed input
    regardless of worker count: results are collected in input order
    and contain no timing data.
    """
    checks = tuple(checks)
    try:
        if not checks:
            raise ValueError("at least one check is required")
        for name in checks:
            if name not in CHECK_NAMES:
                raise ValueError(f"unknown check {name!r}; known: {', '.join(CHECK_NAMES)}")
        if fmt not in ("csv", "json"):
            raise ValueError(f"unknown format {fmt!r}")
        lines = _resolve_source(source)
        for line in lines:
            parse_graph6(line)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    tasks = [(line, checks) for line in lines]
    if workers > 1 and len(tasks) > 1:
        with multiprocessing.get_context("fork").Pool(workers) as pool:
            rows = list(pool.imap(_worker, tasks, chunksize=1))
    else:
        rows = [_worker(task) for task in tasks]

    data = _csv_bytes(rows, checks) if fmt == "csv" else _json_bytes(rows, checks)
    if out is None:
        sys.stdout.write(data.decode("ascii"))
    else:
        with open(out, "wb") as handle:
            handle.write(data)

    failures: list[dict] = []
    for report in rows:
        failed = [name for name, outcome in report.bounds.items() if outcome.status == "false"]
        if failed and any(name in ("main", "vergara") for name in failed):
            failures.append(_quarantine_payload(report, failed))
    if failures:
        blob = json.dumps({"violations": failures}, sort_keys=True, indent=2) + "\n"
        if out is not None:
            with open(f"{out}.quarantine.json", "w", encoding="ascii") as handle:
                handle.write(blob)
        else:
            sys.stderr.write(blob)

    any_false = any(
        outcome.status == "false" for report in rows for outcome in report.bounds.values()
    )
    return 1 if any_false else 0
