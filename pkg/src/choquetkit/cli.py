"""Command-line front door for the toolkit.

Every command reads and writes the canonical JSON forms from jsonio, so
repeated runs over the same inputs produce byte-identical files. Exit
codes: 0 success, 1 domain inconsistency (a report was written), 2
malformed input, 3 internal limit.
"""

from __future__ import annotations

import enum
import functools
import socket
import sys
from dataclasses import replace
from pathlib import Path

import click

from . import jsonio
from .aggregate import (
    AGGREGATOR_NAMES,
    AxiomCheckConfig,
    check_spl,
    stock_aggregator,
    theorem1_suite,
)
from .errors import ChoquetkitError, DegenerateEndpoints, MalformedDocument, TooLarge
from .identify import FitOptions, fit_capacity
from .inter import MonotonicityViolation, make_inter_items, solve_capacity_scale
from .intra import InconsistencyReport, UtilityScale, build_constraint_graph, solve_scale
from .model import rank
from .setfn import CriteriaSet


class ExitStatus(enum.IntEnum):
    OK = 0
    INCONSISTENT = 1
    MALFORMED = 2
    LIMIT = 3


class _Malformed(click.ClickException):
    exit_code = int(ExitStatus.MALFORMED)


class _Limit(click.ClickException):
    exit_code = int(ExitStatus.LIMIT)


def _mapped_errors(f):
    """Translate toolkit errors into exit codes: limits are 3, all other
    validation failures are malformed input, 2."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except TooLarge as e:
            raise _Limit(str(e)) from None
        except (ChoquetkitError, ValueError) as e:
            raise _Malformed(str(e)) from None

    return wrapper


def _criteria_ids(doc, what: str) -> CriteriaSet:
    ids = jsonio._field(doc, "criteria", list, what)
    for cid in ids:
        jsonio._require(cid, str, "criterion id")
    return CriteriaSet(tuple(ids))


@click.group()
def main():
    """Multicriteria decision aid around the Choquet integral."""


@main.command("intra-solve")
@click.option("--criteria", "criteria_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Criteria definition JSON: [{id, levels, zero, one}].")
@click.option("--judgments", "judgments_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Difference judgments JSON: [{criterion, better, worse, category}].")
@click.option("--context", type=click.Choice(["zero", "one"]), default="zero",
              show_default=True,
              help="Reference level the other criteria rest at during questioning.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False),
              help="Output file for the scales or the inconsistency report.")
@_mapped_errors
def cmd_intra_solve(criteria_path, judgments_path, context, out_path):
    """Solve per-criterion utility scales from difference judgments."""
    _, attrs = jsonio.criteria_from_json(jsonio.read_document(criteria_path))
    judged = jsonio.intra_judgments_from_json(jsonio.read_document(judgments_path))
    per_criterion = {a.criterion_id: [] for a in attrs}
    for cid, judgment in judged:
        if cid not in per_criterion:
            raise MalformedDocument(f"judgment refers to unknown criterion {cid!r}")
        per_criterion[cid].append(judgment)

    scales: list[UtilityScale] = []
    failures: dict[str, dict] = {}
    for attr in attrs:
        graph = build_constraint_graph(attr, per_criterion[attr.criterion_id])
        try:
            outcome = solve_scale(graph, attr)
        except DegenerateEndpoints as e:
            failures[attr.criterion_id] = {"degenerate": str(e)}
            continue
        if isinstance(outcome, InconsistencyReport):
            failures[attr.criterion_id] = jsonio.inconsistency_to_json(outcome)
        else:
            scales.append(outcome)

    if failures:
        jsonio.write_document(out_path, {"inconsistent": failures})
        click.echo(f"inconsistent judgments on {sorted(failures)}; report written to {out_path}")
        sys.exit(int(ExitStatus.INCONSISTENT))
    jsonio.write_document(
        out_path, {"context": context, "scales": jsonio.scales_to_json(scales)}
    )
    click.echo(f"solved {len(scales)} scale(s) to {out_path}")


@main.command("inter-solve")
@click.option("--judgments", "judgments_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON {criteria: [ids], judgments: [{better, worse, category}]} "
                   "with coalition keys.")
@click.option("--enforce-monotone", is_flag=True,
              help="Add covering-pair bounds instead of only auditing them.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False),
              help="Output file for the capacity or the conflict report.")
@_mapped_errors
def cmd_inter_solve(judgments_path, enforce_monotone, out_path):
    """Solve a capacity from coalition difference judgments."""
    doc = jsonio.read_document(judgments_path)
    criteria = _criteria_ids(jsonio._require(doc, dict, "judgment file"), "judgment file")
    make_inter_items(criteria.n)
    judgments = jsonio.inter_judgments_from_json(
        criteria, jsonio._field(doc, "judgments", list, "judgment file")
    )
    try:
        outcome = solve_capacity_scale(
            criteria.n, judgments, enforce_monotone=enforce_monotone
        )
    except DegenerateEndpoints as e:
        jsonio.write_document(out_path, {"degenerate": str(e)})
        click.echo(f"degenerate judgments; report written to {out_path}")
        sys.exit(int(ExitStatus.INCONSISTENT))
    if isinstance(outcome, InconsistencyReport):
        jsonio.write_document(
            out_path, {"inconsistent": jsonio.inconsistency_to_json(outcome)}
        )
        click.echo(f"inconsistent judgments; report written to {out_path}")
        sys.exit(int(ExitStatus.INCONSISTENT))
    if isinstance(outcome, MonotonicityViolation):
        jsonio.write_document(
            out_path,
            {"monotonicity_conflict": jsonio.monotonicity_to_json(criteria, outcome)},
        )
        click.echo(f"judgments violate monotonicity; report written to {out_path}")
        sys.exit(int(ExitStatus.INCONSISTENT))
    jsonio.write_document(
        out_path,
        {
            "criteria": list(criteria.ids),
            "capacity": jsonio.capacity_to_json(criteria, outcome),
        },
    )
    click.echo(f"solved capacity over {criteria.n} criteria to {out_path}")


@main.command("identify")
@click.option("--data", "data_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Scored acts JSON: [{profile, score}].")
@click.option("--baseline", "baseline_path",
              type=click.Path(exists=True, dir_okay=False),
              help="Capacity JSON {criteria, capacity} the fit must not lose to.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False),
              help="Output file for the fit report.")
@_mapped_errors
def cmd_identify(data_path, baseline_path, out_path):
    """Fit a capacity to scored acts by monotone least squares."""
    data = jsonio.scored_acts_from_json(jsonio.read_document(data_path))
    if not data:
        raise MalformedDocument("data file holds no scored acts")
    n = len(data[0].profile)
    if baseline_path is not None:
        doc = jsonio.read_document(baseline_path)
        criteria = _criteria_ids(jsonio._require(doc, dict, "baseline"), "baseline")
        if criteria.n != n:
            raise MalformedDocument(
                f"baseline covers {criteria.n} criteria, data has {n}"
            )
        baseline = jsonio.capacity_from_json(
            criteria, jsonio._field(doc, "capacity", dict, "baseline")
        )
        options = FitOptions(baseline=baseline)
    else:
        criteria = CriteriaSet(tuple(f"c{i + 1}" for i in range(n)))
        options = FitOptions()
    report = fit_capacity(n, data, options)
    jsonio.write_document(out_path, jsonio.fit_report_to_json(criteria, report))
    click.echo(f"fitted capacity with rmse {report.rmse:.3e} to {out_path}")


@main.command("rank")
@click.option("--model", "model_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Decision model JSON: {criteria, scales, capacity}.")
@click.option("--acts", "acts_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Acts JSON: [{id, assignments}].")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False),
              help="Output file for the ranking.")
@_mapped_errors
def cmd_rank(model_path, acts_path, out_path):
    """Evaluate and rank acts under a decision model."""
    _, model = jsonio.model_from_json(jsonio.read_document(model_path))
    named = jsonio.acts_from_json(jsonio.read_document(acts_path))
    by_act = {id(act): act_id for act_id, act in named}
    ranked = rank(model, [act for _, act in named])
    rows = [(by_act[id(act)], value) for act, value in ranked]
    jsonio.write_document(out_path, {"ranking": jsonio.ranking_to_json(rows)})
    click.echo(f"ranked {len(rows)} act(s) to {out_path}")


_COUNTEREXAMPLE_CAP = 10


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    return value


def _axiom_report_to_json(report) -> dict:
    return {
        "passed": report.passed,
        "counterexample_count": len(report.counterexamples),
        "counterexamples": [
            {
                "inputs": _jsonable(ce.inputs),
                "expected": ce.expected,
                "got": ce.got,
                "deviation": ce.deviation,
            }
            for ce in report.counterexamples[:_COUNTEREXAMPLE_CAP]
        ],
    }


@main.command("axioms-check")
@click.option("--capacity", "capacity_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Capacity JSON: {criteria, capacity}.")
@click.option("--aggregator", required=True, type=click.Choice(AGGREGATOR_NAMES),
              help="Aggregation operator to put through the axioms.")
@click.option("--samples", default=1000, show_default=True,
              type=click.IntRange(min=1), help="Randomized samples per axiom.")
@click.option("--seed", default=0, show_default=True, type=int,
              help="Seed for the sampling plan.")
@_mapped_errors
def cmd_axioms_check(capacity_path, aggregator, samples, seed):
    """Run the characterization axioms against one aggregator."""
    doc = jsonio.read_document(capacity_path)
    criteria = _criteria_ids(jsonio._require(doc, dict, "capacity file"), "capacity file")
    capacity = jsonio.capacity_from_json(
        criteria, jsonio._field(doc, "capacity", dict, "capacity file")
    )
    cfg = AxiomCheckConfig(samples=samples, seed=seed)
    F = stock_aggregator(aggregator)
    suite = theorem1_suite(F, cfg, capacities=[capacity])
    spl = check_spl(F, capacity, replace(cfg, samples=max(1, samples // 10)))
    axioms = {r.axiom: _axiom_report_to_json(r) for r in suite.reports}
    axioms[spl.axiom] = _axiom_report_to_json(spl)
    passed = suite.passed and spl.passed
    click.echo(
        jsonio.canonical_dumps(
            {
                "aggregator": aggregator,
                "axioms": axioms,
                "choquet_deviation": suite.choquet_deviation,
                "passed": passed,
            }
        ),
        nl=False,
    )
    if not passed:
        sys.exit(int(ExitStatus.INCONSISTENT))


@main.command("serve")
@click.option("--port", default=8000, show_default=True, type=int,
              help="TCP port to listen on; 0 lets the OS pick.")
@click.option("--state", "state_dir", default="sessions", show_default=True,
              type=click.Path(file_okay=False),
              help="Directory holding one JSON file per session.")
def cmd_serve(port, state_dir):
    """Serve the interactive elicitation API over HTTP."""
    import uvicorn

    from .service import create_app

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind(("127.0.0.1", port))
        port = probe.getsockname()[1]
    except OSError as e:
        probe.close()
        raise _Limit(f"cannot bind port {port}: {e}") from None
    probe.close()

    app = create_app(Path(state_dir))
    click.echo(f"serving on http://127.0.0.1:{port} with state in {state_dir}")
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")


if __name__ == "__main__":
    main()
