"""Canonical JSON forms for every artifact the tools exchange.

One serialization convention everywhere: UTF-8, keys sorted, 2-space
indentation, a trailing newline, numbers in Python's shortest
round-trip form. Identical values therefore serialize to identical
bytes, which the golden-file tests rely on.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Sequence

from .errors import MalformedDocument, UnknownLevel
from .identify import FitReport, ScoredAct
from .inter import CoalitionJudgment, MonotonicityViolation
from .intra import (
    AttributeScale,
    DifferenceJudgment,
    InconsistencyReport,
    JudgmentCategory,
    UtilityScale,
)
from .model import Act, DecisionModel
from .setfn import Capacity, CriteriaSet, make_capacity


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def write_document(path, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(canonical_dumps(obj))


def read_document(path) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise MalformedDocument(f"{path}: {e}") from None


def _require(obj: Any, kind: type, what: str) -> Any:
    if not isinstance(obj, kind):
        raise MalformedDocument(f"{what} must be {kind.__name__}, got {type(obj).__name__}")
    return obj


def _field(obj: Mapping, key: str, kind: type, what: str) -> Any:
    _require(obj, dict, what)
    if key not in obj:
        raise MalformedDocument(f"{what} is missing {key!r}")
    return _require(obj[key], kind, f"{what}.{key}")


# -- criteria definitions --


def criteria_to_json(scales: Sequence[AttributeScale]) -> list[dict]:
    return [
        {
            "id": s.criterion_id,
            "levels": list(s.levels),
            "zero": s.zero_level,
            "one": s.one_level,
        }
        for s in scales
    ]


def criteria_from_json(items: Any) -> tuple[CriteriaSet, tuple[AttributeScale, ...]]:
    _require(items, list, "criteria")
    scales = []
    for entry in items:
        cid = _field(entry, "id", str, "criterion")
        levels = _field(entry, "levels", list, f"criterion {cid!r}")
        try:
            scales.append(
                AttributeScale(
                    cid,
                    tuple(_require(lv, str, "level id") for lv in levels),
                    _field(entry, "zero", str, f"criterion {cid!r}"),
                    _field(entry, "one", str, f"criterion {cid!r}"),
                )
            )
        except (ValueError, UnknownLevel) as e:
            raise MalformedDocument(str(e)) from None
    try:
        criteria = CriteriaSet(tuple(s.criterion_id for s in scales))
    except ValueError as e:
        raise MalformedDocument(str(e)) from None
    return criteria, tuple(scales)


# -- capacities --


def capacity_to_json(criteria: CriteriaSet, capacity: Capacity) -> dict[str, float]:
    return {
        criteria.coalition_key(bits): capacity.values[bits]
        for bits in range(1 << criteria.n)
    }


def capacity_from_json(
    criteria: CriteriaSet, obj: Any, *, tol: float = 1e-9
) -> Capacity:
    _require(obj, dict, "capacity")
    values = [None] * (1 << criteria.n)
    for key, value in obj.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise MalformedDocument(f"capacity value for {key!r} must be a number")
        try:
            bits = criteria.parse_coalition_key(_require(key, str, "coalition key"))
        except (KeyError, ValueError) as e:
            raise MalformedDocument(str(e)) from None
        if values[bits] is not None:
            raise MalformedDocument(f"coalition {key!r} appears twice")
        values[bits] = float(value)
    missing = [criteria.coalition_key(b) for b, v in enumerate(values) if v is None]
    if missing:
        raise MalformedDocument(f"capacity is missing coalitions {missing}")
    return make_capacity(criteria.n, values, tol=tol)


# -- utility scales --


def scales_to_json(scales: Sequence[UtilityScale]) -> dict[str, dict[str, float]]:
    return {s.criterion_id: dict(s.u) for s in scales}


def scales_from_json(obj: Any) -> tuple[UtilityScale, ...]:
    _require(obj, dict, "scales")
    out = []
    for cid in obj:
        table = _require(obj[cid], dict, f"scale of {cid!r}")
        u = {}
        for level, value in table.items():
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise MalformedDocument(f"utility of {cid!r}:{level!r} must be a number")
            u[_require(level, str, "level id")] = float(value)
        out.append(UtilityScale(_require(cid, str, "criterion id"), u))
    return tuple(out)


# -- judgments --


def _category(label: Any) -> JudgmentCategory:
    try:
        return JudgmentCategory.from_label(_require(label, str, "category"))
    except ValueError as e:
        raise MalformedDocument(str(e)) from None


def intra_judgments_from_json(items: Any) -> list[tuple[str, DifferenceJudgment]]:
    _require(items, list, "judgments")
    out = []
    for entry in items:
        cid = _field(entry, "criterion", str, "judgment")
        jid = entry.get("id")
        if jid is not None:
            _require(jid, str, "judgment id")
        try:
            judgment = DifferenceJudgment(
                _field(entry, "better", str, "judgment"),
                _field(entry, "worse", str, "judgment"),
                _category(entry.get("category")),
                jid,
            )
        except ValueError as e:
            raise MalformedDocument(str(e)) from None
        out.append((cid, judgment))
    return out


def intra_judgment_to_json(criterion_id: str, j: DifferenceJudgment) -> dict:
    doc = {
        "criterion": criterion_id,
        "better": j.better,
        "worse": j.worse,
        "category": j.category.label,
    }
    if j.jid is not None:
        doc["id"] = j.jid
    return doc


def inter_judgments_from_json(
    criteria: CriteriaSet, items: Any
) -> list[CoalitionJudgment]:
    _require(items, list, "judgments")
    out = []
    for entry in items:
        jid = entry.get("id")
        if jid is not None:
            _require(jid, str, "judgment id")
        try:
            out.append(
                CoalitionJudgment(
                    criteria.parse_coalition_key(_field(entry, "better", str, "judgment")),
                    criteria.parse_coalition_key(_field(entry, "worse", str, "judgment")),
                    _category(entry.get("category")),
                    jid,
                )
            )
        except (KeyError, ValueError) as e:
            raise MalformedDocument(str(e)) from None
    return out


def inter_judgment_to_json(criteria: CriteriaSet, j: CoalitionJudgment) -> dict:
    doc = {
        "better": criteria.coalition_key(j.better),
        "worse": criteria.coalition_key(j.worse),
        "category": j.category.label,
    }
    if j.jid is not None:
        doc["id"] = j.jid
    return doc


# -- solver outcomes --


def inconsistency_to_json(report: InconsistencyReport) -> dict:
    return {"cycle": list(report.cycle), "total_slack": report.total_slack}


def monotonicity_to_json(criteria: CriteriaSet, mv: MonotonicityViolation) -> dict:
    return {
        "pairs": [
            {"subset": criteria.coalition_key(a), "superset": criteria.coalition_key(b)}
            for a, b in mv.pairs
        ],
        "values": {
            criteria.coalition_key(bits): v for bits, v in enumerate(mv.values)
        },
    }


# -- scored acts and fit reports --


def scored_acts_from_json(items: Any) -> list[ScoredAct]:
    _require(items, list, "data")
    out = []
    for entry in items:
        profile = _field(entry, "profile", list, "scored act")
        score = _field(entry, "score", (int, float), "scored act")
        if isinstance(score, bool):
            raise MalformedDocument("scored act score must be a number")
        for v in profile:
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise MalformedDocument("profile entries must be numbers")
        out.append(ScoredAct(tuple(float(v) for v in profile), float(score)))
    return out


def fit_report_to_json(criteria: CriteriaSet, report: FitReport) -> dict:
    return {
        "capacity": capacity_to_json(criteria, report.capacity),
        "criteria": list(criteria.ids),
        "rmse": report.rmse,
        "max_violation": report.max_violation,
        "iterations": report.iterations,
    }


# -- models and acts --


def model_to_json(attrs: Sequence[AttributeScale], model: DecisionModel) -> dict:
    return {
        "criteria": criteria_to_json(attrs),
        "scales": scales_to_json(model.scales),
        "capacity": capacity_to_json(model.criteria, model.capacity),
    }


def model_from_json(obj: Any) -> tuple[tuple[AttributeScale, ...], DecisionModel]:
    _require(obj, dict, "model")
    criteria, attrs = criteria_from_json(_field(obj, "criteria", list, "model"))
    scales = scales_from_json(_field(obj, "scales", dict, "model"))
    by_id = {s.criterion_id: s for s in scales}
    for attr in attrs:
        scale = by_id.get(attr.criterion_id)
        if scale is None:
            raise MalformedDocument(f"model has no scale for {attr.criterion_id!r}")
        if set(scale.u) != set(attr.levels):
            raise MalformedDocument(
                f"scale of {attr.criterion_id!r} covers {sorted(scale.u)}, "
                f"levels are {sorted(attr.levels)}"
            )
    capacity = capacity_from_json(criteria, _field(obj, "capacity", dict, "model"))
    try:
        model = DecisionModel(criteria, scales, capacity)
    except ValueError as e:
        raise MalformedDocument(str(e)) from None
    return attrs, model


def acts_from_json(items: Any) -> list[tuple[str, Act]]:
    _require(items, list, "acts")
    out = []
    for entry in items:
        act_id = _field(entry, "id", str, "act")
        assignments = _field(entry, "assignments", dict, f"act {act_id!r}")
        for cid, level in assignments.items():
            _require(cid, str, "criterion id")
            _require(level, str, f"level for {cid!r}")
        out.append((act_id, Act(dict(assignments))))
    return out


def ranking_to_json(rows: Sequence[tuple[str, float]]) -> list[dict]:
    return [{"id": act_id, "value": value} for act_id, value in rows]
