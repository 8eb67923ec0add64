"""End-to-end tests of the command-line surface.

Every command is driven through click's test runner over real files, and
the exit-code contract is pinned: 0 success, 1 inconsistency with a
report written, 2 malformed input, 3 internal limit.
"""

import json
import random
import socket

import pytest
from click.testing import CliRunner

from choquetkit import jsonio
from choquetkit.aggregate import choquet
from choquetkit.cli import main
from choquetkit.setfn import make_capacity

runner = CliRunner()


def write(path, doc):
    jsonio.write_document(path, doc)
    return str(path)


def comfort_criteria(tmp_path):
    return write(
        tmp_path / "criteria.json",
        [{"id": "comfort", "levels": ["low", "mid", "high"], "zero": "low", "one": "high"}],
    )


def comfort_judgments(tmp_path, triples):
    doc = [
        {"criterion": "comfort", "better": b, "worse": w, "category": c}
        for b, w, c in triples
    ]
    return write(tmp_path / "judgments.json", doc)


# -- intra-solve --


def test_intra_solve_writes_normalized_scales(tmp_path):
    judgments = comfort_judgments(
        tmp_path,
        [("mid", "low", "small"), ("high", "mid", "mean"), ("high", "low", "very large")],
    )
    out = tmp_path / "scales.json"
    result = runner.invoke(
        main,
        ["intra-solve", "--criteria", comfort_criteria(tmp_path),
         "--judgments", judgments, "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    doc = jsonio.read_document(out)
    assert doc["context"] == "zero"
    scale = doc["scales"]["comfort"]
    assert scale["low"] == 0.0
    assert scale["high"] == 1.0
    assert scale["mid"] == pytest.approx(0.4)


def test_intra_solve_reruns_are_byte_identical(tmp_path):
    criteria = comfort_criteria(tmp_path)
    judgments = comfort_judgments(
        tmp_path,
        [("mid", "low", "small"), ("high", "mid", "mean"), ("high", "low", "very large")],
    )
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for out in (first, second):
        result = runner.invoke(
            main,
            ["intra-solve", "--criteria", criteria, "--judgments", judgments,
             "--out", str(out)],
        )
        assert result.exit_code == 0
    assert first.read_bytes() == second.read_bytes()


def test_intra_solve_records_the_one_context(tmp_path):
    judgments = comfort_judgments(tmp_path, [("high", "low", "extreme")])
    out = tmp_path / "scales.json"
    result = runner.invoke(
        main,
        ["intra-solve", "--criteria", comfort_criteria(tmp_path),
         "--judgments", judgments, "--context", "one", "--out", str(out)],
    )
    assert result.exit_code == 0
    assert jsonio.read_document(out)["context"] == "one"


def test_intra_solve_inconsistent_triple_cites_all_three_judgments(tmp_path):
    judgments = comfort_judgments(
        tmp_path,
        [("high", "mid", "very small"), ("mid", "low", "very small"),
         ("high", "low", "extreme")],
    )
    out = tmp_path / "report.json"
    result = runner.invoke(
        main,
        ["intra-solve", "--criteria", comfort_criteria(tmp_path),
         "--judgments", judgments, "--out", str(out)],
    )
    assert result.exit_code == 1
    report = jsonio.read_document(out)["inconsistent"]["comfort"]
    assert sorted(report["cycle"]) == ["j1", "j2", "j3"]
    assert report["total_slack"] == -2.0


def test_intra_solve_dropping_any_cited_judgment_restores_consistency(tmp_path):
    triples = [
        ("high", "mid", "very small"),
        ("mid", "low", "very small"),
        ("high", "low", "extreme"),
    ]
    criteria = comfort_criteria(tmp_path)
    for drop in range(3):
        kept = [t for k, t in enumerate(triples) if k != drop]
        judgments = comfort_judgments(tmp_path, kept)
        out = tmp_path / f"out{drop}.json"
        result = runner.invoke(
            main,
            ["intra-solve", "--criteria", criteria, "--judgments", judgments,
             "--out", str(out)],
        )
        assert result.exit_code == 0, result.output


def test_intra_solve_unknown_level_is_malformed(tmp_path):
    judgments = comfort_judgments(tmp_path, [("splendid", "low", "small")])
    result = runner.invoke(
        main,
        ["intra-solve", "--criteria", comfort_criteria(tmp_path),
         "--judgments", judgments, "--out", str(tmp_path / "out.json")],
    )
    assert result.exit_code == 2


def test_intra_solve_unknown_criterion_is_malformed(tmp_path):
    judgments = write(
        tmp_path / "judgments.json",
        [{"criterion": "noise", "better": "a", "worse": "b", "category": "small"}],
    )
    result = runner.invoke(
        main,
        ["intra-solve", "--criteria", comfort_criteria(tmp_path),
         "--judgments", judgments, "--out", str(tmp_path / "out.json")],
    )
    assert result.exit_code == 2


def test_intra_solve_broken_json_is_malformed(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops", encoding="utf-8")
    result = runner.invoke(
        main,
        ["intra-solve", "--criteria", comfort_criteria(tmp_path),
         "--judgments", str(bad), "--out", str(tmp_path / "out.json")],
    )
    assert result.exit_code == 2


def test_intra_solve_missing_file_is_malformed(tmp_path):
    result = runner.invoke(
        main,
        ["intra-solve", "--criteria", comfort_criteria(tmp_path),
         "--judgments", str(tmp_path / "absent.json"),
         "--out", str(tmp_path / "out.json")],
    )
    assert result.exit_code == 2


def test_intra_solve_no_judgments_reports_degenerate_endpoints(tmp_path):
    judgments = write(tmp_path / "judgments.json", [])
    out = tmp_path / "report.json"
    result = runner.invoke(
        main,
        ["intra-solve", "--criteria", comfort_criteria(tmp_path),
         "--judgments", judgments, "--out", str(out)],
    )
    assert result.exit_code == 1
    assert "degenerate" in jsonio.read_document(out)["inconsistent"]["comfort"]


# -- inter-solve --


def inter_doc(tmp_path, ids, judgments, name="inter.json"):
    return write(tmp_path / name, {"criteria": ids, "judgments": judgments})


def test_inter_solve_worked_example(tmp_path):
    doc = inter_doc(
        tmp_path,
        ["a", "b"],
        [
            {"better": "a", "worse": "", "category": "small"},
            {"better": "b", "worse": "a", "category": "very small"},
            {"better": "a,b", "worse": "b", "category": "small"},
            {"better": "a,b", "worse": "", "category": "very large"},
        ],
    )
    out = tmp_path / "capacity.json"
    result = runner.invoke(main, ["inter-solve", "--judgments", doc, "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert jsonio.read_document(out) == {
        "criteria": ["a", "b"],
        "capacity": {"": 0.0, "a": 0.4, "b": 0.6, "a,b": 1.0},
    }


def test_inter_solve_surfaces_monotonicity_conflicts(tmp_path):
    doc = inter_doc(
        tmp_path,
        ["a", "b"],
        [
            {"better": "a", "worse": "", "category": "extreme"},
            {"better": "a,b", "worse": "", "category": "very small"},
        ],
    )
    out = tmp_path / "report.json"
    result = runner.invoke(main, ["inter-solve", "--judgments", doc, "--out", str(out)])
    assert result.exit_code == 1
    conflict = jsonio.read_document(out)["monotonicity_conflict"]
    assert {"subset": "a", "superset": "a,b"} in conflict["pairs"]
    assert conflict["values"]["a"] == 3.0
    assert conflict["values"]["a,b"] == 1.0


def test_inter_solve_enforcing_an_impossible_order_yields_a_cycle(tmp_path):
    doc = inter_doc(
        tmp_path,
        ["a", "b"],
        [
            {"better": "a", "worse": "", "category": "extreme"},
            {"better": "a,b", "worse": "", "category": "very small"},
        ],
    )
    out = tmp_path / "report.json"
    result = runner.invoke(
        main, ["inter-solve", "--judgments", doc, "--enforce-monotone", "--out", str(out)]
    )
    assert result.exit_code == 1
    report = jsonio.read_document(out)["inconsistent"]
    assert sorted(report["cycle"]) == ["j1", "j2"]


def repairable_doc(tmp_path):
    # Only the full act and one pair are judged; the unjudged singletons
    # float to the top and overtake the judged pair unless the covering
    # bounds are enforced.
    return inter_doc(
        tmp_path,
        ["a", "b", "c"],
        [
            {"better": "a,b,c", "worse": "", "category": "very large"},
            {"better": "a,b,c", "worse": "a,b", "category": "very small"},
        ],
    )


def test_inter_solve_reports_a_repairable_violation(tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(
        main, ["inter-solve", "--judgments", repairable_doc(tmp_path), "--out", str(out)]
    )
    assert result.exit_code == 1
    conflict = jsonio.read_document(out)["monotonicity_conflict"]
    assert {"subset": "a", "superset": "a,b"} in conflict["pairs"]


def test_inter_solve_enforce_monotone_repairs_the_violation(tmp_path):
    out = tmp_path / "capacity.json"
    result = runner.invoke(
        main,
        ["inter-solve", "--judgments", repairable_doc(tmp_path),
         "--enforce-monotone", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    doc = jsonio.read_document(out)
    assert doc["capacity"]["a,b"] == pytest.approx(0.8)
    assert doc["capacity"]["a"] == pytest.approx(0.8)
    assert doc["capacity"]["c"] == 1.0
    make_capacity(3, [doc["capacity"][k] for k in ["", "a", "b", "a,b", "c", "a,c", "b,c", "a,b,c"]])


def test_inter_solve_without_judgments_is_degenerate(tmp_path):
    doc = inter_doc(tmp_path, ["a", "b"], [])
    out = tmp_path / "report.json"
    result = runner.invoke(main, ["inter-solve", "--judgments", doc, "--out", str(out)])
    assert result.exit_code == 1
    assert "degenerate" in jsonio.read_document(out)


def test_inter_solve_seven_criteria_hits_the_enumeration_limit(tmp_path):
    doc = inter_doc(tmp_path, [f"c{i}" for i in range(7)], [])
    result = runner.invoke(
        main, ["inter-solve", "--judgments", doc, "--out", str(tmp_path / "out.json")]
    )
    assert result.exit_code == 3


def test_inter_solve_unknown_coalition_member_is_malformed(tmp_path):
    doc = inter_doc(
        tmp_path, ["a", "b"], [{"better": "z", "worse": "", "category": "small"}]
    )
    result = runner.invoke(
        main, ["inter-solve", "--judgments", doc, "--out", str(tmp_path / "out.json")]
    )
    assert result.exit_code == 2


def test_inter_solve_reruns_are_byte_identical(tmp_path):
    doc = inter_doc(
        tmp_path,
        ["a", "b"],
        [
            {"better": "a", "worse": "", "category": "small"},
            {"better": "a,b", "worse": "", "category": "very large"},
        ],
    )
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for out in (first, second):
        result = runner.invoke(main, ["inter-solve", "--judgments", doc, "--out", str(out)])
        assert result.exit_code == 0
    assert first.read_bytes() == second.read_bytes()


# -- identify --


def scored_data(tmp_path, capacity, count=40, seed=5, name="data.json"):
    rng = random.Random(seed)
    rows = []
    for _ in range(count):
        x = tuple(rng.random() for _ in range(capacity.n))
        rows.append({"profile": list(x), "score": choquet(capacity.game, x)})
    return write(tmp_path / name, rows)


def test_identify_recovers_a_capacity_from_noiseless_scores(tmp_path):
    truth = make_capacity(2, (0.0, 0.3, 0.5, 1.0))
    data = scored_data(tmp_path, truth)
    out = tmp_path / "fit.json"
    result = runner.invoke(main, ["identify", "--data", data, "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = jsonio.read_document(out)
    assert report["criteria"] == ["c1", "c2"]
    assert report["rmse"] <= 1e-6
    assert report["max_violation"] <= 1e-9
    assert report["capacity"]["c1"] == pytest.approx(0.3, abs=1e-6)
    assert report["capacity"]["c2"] == pytest.approx(0.5, abs=1e-6)


def test_identify_min_scored_data_lands_on_the_unanimity_game(tmp_path):
    rng = random.Random(11)
    rows = []
    for _ in range(60):
        x = (rng.random(), rng.random())
        rows.append({"profile": list(x), "score": min(x)})
    data = write(tmp_path / "data.json", rows)
    out = tmp_path / "fit.json"
    result = runner.invoke(main, ["identify", "--data", data, "--out", str(out)])
    assert result.exit_code == 0
    report = jsonio.read_document(out)
    assert report["rmse"] <= 1e-6
    assert report["capacity"]["c1"] == pytest.approx(0.0, abs=1e-5)
    assert report["capacity"]["c2"] == pytest.approx(0.0, abs=1e-5)


def test_identify_uses_the_named_baseline_criteria(tmp_path):
    truth = make_capacity(2, (0.0, 0.3, 0.5, 1.0))
    data = scored_data(tmp_path, truth)
    baseline = write(
        tmp_path / "baseline.json",
        {"criteria": ["price", "quality"],
         "capacity": {"": 0.0, "price": 0.3, "quality": 0.5, "price,quality": 1.0}},
    )
    out = tmp_path / "fit.json"
    result = runner.invoke(
        main, ["identify", "--data", data, "--baseline", baseline, "--out", str(out)]
    )
    assert result.exit_code == 0
    report = jsonio.read_document(out)
    assert report["criteria"] == ["price", "quality"]
    assert report["rmse"] <= 1e-6


def test_identify_baseline_of_the_wrong_width_is_malformed(tmp_path):
    truth = make_capacity(2, (0.0, 0.3, 0.5, 1.0))
    data = scored_data(tmp_path, truth)
    baseline = write(
        tmp_path / "baseline.json",
        {"criteria": ["x"], "capacity": {"": 0.0, "x": 1.0}},
    )
    result = runner.invoke(
        main,
        ["identify", "--data", data, "--baseline", baseline,
         "--out", str(tmp_path / "out.json")],
    )
    assert result.exit_code == 2


def test_identify_empty_data_is_malformed(tmp_path):
    data = write(tmp_path / "data.json", [])
    result = runner.invoke(
        main, ["identify", "--data", data, "--out", str(tmp_path / "out.json")]
    )
    assert result.exit_code == 2


def test_identify_reruns_are_byte_identical(tmp_path):
    truth = make_capacity(2, (0.0, 0.3, 0.5, 1.0))
    data = scored_data(tmp_path, truth)
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for out in (first, second):
        result = runner.invoke(main, ["identify", "--data", data, "--out", str(out)])
        assert result.exit_code == 0
    assert first.read_bytes() == second.read_bytes()


# -- rank --


def two_level_model(tmp_path):
    return write(
        tmp_path / "model.json",
        {
            "criteria": [
                {"id": "price", "levels": ["bad", "good"], "zero": "bad", "one": "good"},
                {"id": "quality", "levels": ["bad", "good"], "zero": "bad", "one": "good"},
            ],
            "scales": {
                "price": {"bad": 0.0, "good": 1.0},
                "quality": {"bad": 0.0, "good": 1.0},
            },
            "capacity": {"": 0.0, "price": 0.3, "quality": 0.5, "price,quality": 1.0},
        },
    )


def test_rank_binary_acts_recover_the_capacity(tmp_path):
    acts = write(
        tmp_path / "acts.json",
        [
            {"id": "neither", "assignments": {"price": "bad", "quality": "bad"}},
            {"id": "price_only", "assignments": {"price": "good", "quality": "bad"}},
            {"id": "quality_only", "assignments": {"price": "bad", "quality": "good"}},
            {"id": "both", "assignments": {"price": "good", "quality": "good"}},
        ],
    )
    out = tmp_path / "ranking.json"
    result = runner.invoke(
        main, ["rank", "--model", two_level_model(tmp_path), "--acts", acts, "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    assert jsonio.read_document(out) == {
        "ranking": [
            {"id": "both", "value": 1.0},
            {"id": "quality_only", "value": 0.5},
            {"id": "price_only", "value": 0.3},
            {"id": "neither", "value": 0.0},
        ]
    }


def test_rank_keeps_input_order_between_tied_acts(tmp_path):
    acts = write(
        tmp_path / "acts.json",
        [
            {"id": "first", "assignments": {"price": "good", "quality": "bad"}},
            {"id": "twin", "assignments": {"price": "good", "quality": "bad"}},
        ],
    )
    out = tmp_path / "ranking.json"
    result = runner.invoke(
        main, ["rank", "--model", two_level_model(tmp_path), "--acts", acts, "--out", str(out)]
    )
    assert result.exit_code == 0
    assert [row["id"] for row in jsonio.read_document(out)["ranking"]] == ["first", "twin"]


def test_rank_incomplete_act_is_malformed(tmp_path):
    acts = write(
        tmp_path / "acts.json", [{"id": "gap", "assignments": {"price": "good"}}]
    )
    result = runner.invoke(
        main,
        ["rank", "--model", two_level_model(tmp_path), "--acts", acts,
         "--out", str(tmp_path / "out.json")],
    )
    assert result.exit_code == 2


def test_rank_unknown_level_is_malformed(tmp_path):
    acts = write(
        tmp_path / "acts.json",
        [{"id": "odd", "assignments": {"price": "great", "quality": "bad"}}],
    )
    result = runner.invoke(
        main,
        ["rank", "--model", two_level_model(tmp_path), "--acts", acts,
         "--out", str(tmp_path / "out.json")],
    )
    assert result.exit_code == 2


def test_rank_reruns_are_byte_identical(tmp_path):
    acts = write(
        tmp_path / "acts.json",
        [{"id": "x", "assignments": {"price": "good", "quality": "bad"}}],
    )
    model = two_level_model(tmp_path)
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for out in (first, second):
        result = runner.invoke(main, ["rank", "--model", model, "--acts", acts, "--out", str(out)])
        assert result.exit_code == 0
    assert first.read_bytes() == second.read_bytes()


# -- axioms-check --


def capacity_file(tmp_path):
    return write(
        tmp_path / "capacity.json",
        {"criteria": ["a", "b"],
         "capacity": {"": 0.0, "a": 0.3, "b": 0.5, "a,b": 1.0}},
    )


def test_axioms_check_passes_the_choquet_integral(tmp_path):
    result = runner.invoke(
        main,
        ["axioms-check", "--capacity", capacity_file(tmp_path),
         "--aggregator", "choquet", "--samples", "200", "--seed", "3"],
    )
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["passed"] is True
    assert report["choquet_deviation"] == 0.0
    assert set(report["axioms"]) == {"LM", "In", "PW", "weakSPL", "SPL"}
    assert all(r["passed"] for r in report["axioms"].values())


def test_axioms_check_flags_the_mean_on_a_nonadditive_coalition(tmp_path):
    result = runner.invoke(
        main,
        ["axioms-check", "--capacity", capacity_file(tmp_path),
         "--aggregator", "mean", "--samples", "200", "--seed", "3"],
    )
    assert result.exit_code == 1
    report = json.loads(result.output)
    assert report["passed"] is False
    pw = report["axioms"]["PW"]
    assert pw["passed"] is False
    assert pw["counterexample_count"] > 0
    first = pw["counterexamples"][0]
    assert set(first) == {"inputs", "expected", "got", "deviation"}
    assert first["deviation"] > 0


def test_axioms_check_flags_the_max_at_the_singletons(tmp_path):
    result = runner.invoke(
        main,
        ["axioms-check", "--capacity", capacity_file(tmp_path),
         "--aggregator", "max", "--samples", "200", "--seed", "3"],
    )
    assert result.exit_code == 1
    report = json.loads(result.output)
    pw = report["axioms"]["PW"]
    assert pw["passed"] is False
    expected_worths = {ce["expected"] for ce in pw["counterexamples"]}
    assert expected_worths & {0.3, 0.5}


def test_axioms_check_unknown_aggregator_is_malformed(tmp_path):
    result = runner.invoke(
        main,
        ["axioms-check", "--capacity", capacity_file(tmp_path),
         "--aggregator", "median"],
    )
    assert result.exit_code == 2


def test_axioms_check_output_is_deterministic(tmp_path):
    capacity = capacity_file(tmp_path)
    args = ["axioms-check", "--capacity", capacity, "--aggregator", "mean",
            "--samples", "100", "--seed", "9"]
    outputs = {runner.invoke(main, args).output for _ in range(2)}
    assert len(outputs) == 1


# -- serve --


def test_serve_reports_a_taken_port_as_a_limit(tmp_path):
    blocker = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        blocker.bind(("127.0.0.1", 0))
        blocker.listen(1)
        port = blocker.getsockname()[1]
        result = runner.invoke(
            main, ["serve", "--port", str(port), "--state", str(tmp_path / "state")]
        )
        assert result.exit_code == 3
    finally:
        blocker.close()


# -- the group --


def test_main_lists_every_command():
    result = runner.invoke(main, ["--help"])
    assert result.exit_code == 0
    for name in ["intra-solve", "inter-solve", "identify", "rank", "axioms-check", "serve"]:
        assert name in result.output
