"""Interactive elicitation sessions over HTTP.

A session walks a decision maker through the qualitative questioning in
a fixed order: every level pair of every criterion first, anchored by
the declared best/worst pair, then every coalition pair, anchored by the
full-against-empty comparison. Judgments arrive one at a time and every
answer is appended to the session's event record; consistency, the next
question, and the decision model are always recomputed from that record,
so replaying the same judgments into a fresh session reproduces the same
session file byte for byte (apart from the session id).

State is one canonical JSON file per session under the store directory.
Files are written atomically and never cached in memory, which makes a
service restart invisible to clients.
"""

from __future__ import annotations

import json
import os
import re
import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import jsonio
from .errors import ChoquetkitError, DegenerateEndpoints
from .inter import (
    CoalitionJudgment,
    MonotonicityViolation,
    make_inter_items,
    solve_capacity_scale,
)
from .intra import (
    CATEGORY_LABELS,
    AttributeScale,
    DifferenceJudgment,
    InconsistencyReport,
    JudgmentCategory,
    build_constraint_graph,
    solve_scale,
)
from .model import DecisionModel, rank, shapley
from .setfn import CriteriaSet

SCHEMA = "v1"

_SESSION_FILE = re.compile(r"s(\d+)\.json")
_SAFE_ID = re.compile(r"[A-Za-z0-9_-]+")


class SessionStore:
    """One JSON document per session, written atomically."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._master = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}

    def lock(self, sid: str) -> threading.Lock:
        with self._master:
            return self._locks.setdefault(sid, threading.Lock())

    def path(self, sid: str) -> Path:
        return self.root / f"{sid}.json"

    def fresh_id(self) -> str:
        taken = set()
        for p in self.root.glob("s*.json"):
            m = _SESSION_FILE.fullmatch(p.name)
            if m:
                taken.add(int(m.group(1)))
        k = 1
        while k in taken:
            k += 1
        return f"s{k}"

    def load(self, sid: str) -> dict:
        path = self.path(sid)
        if not _SAFE_ID.fullmatch(sid) or not path.is_file():
            raise HTTPException(404, f"no session {sid!r}")
        return json.loads(path.read_text(encoding="utf-8"))

    def save(self, sid: str, doc: dict) -> None:
        path = self.path(sid)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(jsonio.canonical_dumps(doc), encoding="utf-8")
        os.replace(tmp, path)


# -- reading a session document back into solver inputs --


def _session_attrs(doc: dict) -> tuple[CriteriaSet, tuple[AttributeScale, ...]]:
    return jsonio.criteria_from_json(doc["criteria"])


def _intra_judgments(doc: dict, cid: str) -> list[DifferenceJudgment]:
    return [
        DifferenceJudgment(
            it["better"], it["worse"], JudgmentCategory.from_label(it["category"]), it["id"]
        )
        for it in doc["intra_judgments"][cid]
    ]


def _inter_judgments(doc: dict, criteria: CriteriaSet) -> list[CoalitionJudgment]:
    return [
        CoalitionJudgment(
            criteria.parse_coalition_key(it["better"]),
            criteria.parse_coalition_key(it["worse"]),
            JudgmentCategory.from_label(it["category"]),
            it["id"],
        )
        for it in doc["inter_judgments"]
    ]


# -- the questioning plan --


def _intra_plan(attr: AttributeScale, sparse: bool) -> list[tuple[str, str]]:
    """Pairs to ask for one criterion, best-against-worst first."""
    anchor = (attr.one_level, attr.zero_level)
    if sparse:
        rest = [
            (attr.levels[k + 1], attr.levels[k]) for k in range(len(attr.levels) - 1)
        ]
    else:
        m = len(attr.levels)
        rest = [
            (attr.levels[p], attr.levels[q])
            for p in range(m)
            for q in range(p + 1, m)
        ]
    plan = [anchor]
    plan.extend(pair for pair in rest if frozenset(pair) != frozenset(anchor))
    return plan


def _inter_plan(n: int, sparse: bool) -> list[tuple[int, int]]:
    """Coalition pairs to ask, full-against-empty first, then ascending
    bitmask order; sparse mode keeps only a nested chain of coalitions."""
    full = (1 << n) - 1
    anchor = (full, 0)
    if sparse:
        chain = [0]
        for i in range(n):
            chain.append(chain[-1] | 1 << i)
        rest = [(chain[k + 1], chain[k]) for k in range(n)]
    else:
        rest = [(t, s) for s in range(1 << n) for t in range(s + 1, 1 << n)]
    plan = [anchor]
    plan.extend(pair for pair in rest if frozenset(pair) != frozenset(anchor))
    return plan


def _answered(judgments) -> set[frozenset]:
    return {frozenset((j.better, j.worse)) for j in judgments}


def _next_question(doc: dict) -> tuple[dict | None, int]:
    """The first unanswered pair in plan order and how many remain."""
    criteria, attrs = _session_attrs(doc)
    sparse = doc["sparse"]
    question = None
    remaining = 0
    for attr in attrs:
        answered = _answered(_intra_judgments(doc, attr.criterion_id))
        for pair in _intra_plan(attr, sparse):
            if frozenset(pair) in answered:
                continue
            remaining += 1
            if question is None:
                question = {
                    "scope": "intra",
                    "criterion": attr.criterion_id,
                    "pair": list(pair),
                    "categories": list(CATEGORY_LABELS),
                }
    answered = _answered(_inter_judgments(doc, criteria))
    for t, s in _inter_plan(criteria.n, sparse):
        if frozenset((t, s)) in answered:
            continue
        remaining += 1
        if question is None:
            question = {
                "scope": "inter",
                "pair": [criteria.coalition_key(t), criteria.coalition_key(s)],
                "categories": list(CATEGORY_LABELS),
            }
    return question, remaining


# -- consistency --


def _intra_status(doc: dict, attr: AttributeScale) -> dict:
    judgments = _intra_judgments(doc, attr.criterion_id)
    answered = _answered(judgments)
    open_pairs = [
        p for p in _intra_plan(attr, doc["sparse"]) if frozenset(p) not in answered
    ]
    try:
        outcome = solve_scale(build_constraint_graph(attr, judgments), attr)
    except DegenerateEndpoints as e:
        if open_pairs:
            return {"state": "incomplete", "remaining": len(open_pairs)}
        return {"state": "inconsistent", "degenerate": str(e)}
    if isinstance(outcome, InconsistencyReport):
        return {"state": "inconsistent", **jsonio.inconsistency_to_json(outcome)}
    if open_pairs:
        return {"state": "incomplete", "remaining": len(open_pairs)}
    return {"state": "consistent"}


def _inter_status(doc: dict, criteria: CriteriaSet) -> dict:
    judgments = _inter_judgments(doc, criteria)
    answered = _answered(judgments)
    open_pairs = [
        p
        for p in _inter_plan(criteria.n, doc["sparse"])
        if frozenset(p) not in answered
    ]
    try:
        outcome = solve_capacity_scale(criteria.n, judgments)
    except DegenerateEndpoints as e:
        if open_pairs:
            return {"state": "incomplete", "remaining": len(open_pairs)}
        return {"state": "inconsistent", "degenerate": str(e)}
    if isinstance(outcome, InconsistencyReport):
        return {"state": "inconsistent", **jsonio.inconsistency_to_json(outcome)}
    if isinstance(outcome, MonotonicityViolation):
        return {
            "state": "inconsistent",
            "monotonicity_conflict": jsonio.monotonicity_to_json(criteria, outcome),
        }
    if open_pairs:
        return {"state": "incomplete", "remaining": len(open_pairs)}
    return {"state": "consistent"}


def _consistency(doc: dict) -> dict:
    criteria, attrs = _session_attrs(doc)
    intra = {attr.criterion_id: _intra_status(doc, attr) for attr in attrs}
    inter = _inter_status(doc, criteria)
    states = [s["state"] for s in intra.values()] + [inter["state"]]
    if "inconsistent" in states:
        overall = "inconsistent"
    elif "incomplete" in states:
        overall = "incomplete"
    else:
        overall = "consistent"
    return {"intra": intra, "inter": inter, "overall": overall}


def _build_model(doc: dict) -> tuple[tuple[AttributeScale, ...], DecisionModel]:
    """The solved decision model, or a 409 naming the scope that blocks it."""
    criteria, attrs = _session_attrs(doc)
    scales = []
    for attr in attrs:
        status = _intra_status(doc, attr)
        if status["state"] != "consistent":
            raise HTTPException(
                409, f"criterion {attr.criterion_id!r} is {status['state']}"
            )
        scales.append(
            solve_scale(
                build_constraint_graph(attr, _intra_judgments(doc, attr.criterion_id)),
                attr,
            )
        )
    status = _inter_status(doc, criteria)
    if status["state"] != "consistent":
        raise HTTPException(409, f"coalition judgments are {status['state']}")
    capacity = solve_capacity_scale(criteria.n, _inter_judgments(doc, criteria))
    return attrs, DecisionModel(criteria, tuple(scales), capacity)


# -- judgments on the wire --


def _session_ids(doc: dict) -> set[str]:
    ids = {it["id"] for items in doc["intra_judgments"].values() for it in items}
    ids.update(it["id"] for it in doc["inter_judgments"])
    return ids


def _fresh_jid(doc: dict) -> str:
    taken = _session_ids(doc)
    k = 1
    while f"j{k}" in taken:
        k += 1
    return f"j{k}"


def _bad_request(e: Exception) -> HTTPException:
    detail = e.args[0] if e.args else str(e)
    return HTTPException(400, str(detail))


def _parse_judgment(doc: dict, payload, jid: str) -> tuple[str | None, dict]:
    """Validate a wire judgment against the session; returns the intra
    criterion id (None for inter) and the item to store."""
    if not isinstance(payload, dict):
        raise HTTPException(400, "judgment must be a JSON object")
    criteria, attrs = _session_attrs(doc)
    try:
        category = JudgmentCategory.from_label(
            jsonio._field(payload, "category", str, "judgment")
        )
        better = jsonio._field(payload, "better", str, "judgment")
        worse = jsonio._field(payload, "worse", str, "judgment")
        if "criterion" in payload:
            cid = jsonio._field(payload, "criterion", str, "judgment")
            by_id = {a.criterion_id: a for a in attrs}
            if cid not in by_id:
                raise HTTPException(400, f"unknown criterion {cid!r}")
            attr = by_id[cid]
            attr.index(better)
            attr.index(worse)
            DifferenceJudgment(better, worse, category, jid)
            item = {"better": better, "category": category.label, "id": jid, "worse": worse}
            return cid, item
        bits_better = criteria.parse_coalition_key(better)
        bits_worse = criteria.parse_coalition_key(worse)
        CoalitionJudgment(bits_better, bits_worse, category, jid)
        item = {
            "better": criteria.coalition_key(bits_better),
            "category": category.label,
            "id": jid,
            "worse": criteria.coalition_key(bits_worse),
        }
        return None, item
    except (ChoquetkitError, ValueError, KeyError) as e:
        raise _bad_request(e) from None


def _pair_of(doc: dict, cid: str | None, item: dict) -> frozenset:
    if cid is not None:
        return frozenset((item["better"], item["worse"]))
    criteria, _ = _session_attrs(doc)
    return frozenset(
        (
            criteria.parse_coalition_key(item["better"]),
            criteria.parse_coalition_key(item["worse"]),
        )
    )


def _check_duplicate_pair(doc: dict, cid: str | None, item: dict, *, ignore: str) -> None:
    pair = _pair_of(doc, cid, item)
    existing = doc["intra_judgments"][cid] if cid is not None else doc["inter_judgments"]
    for other in existing:
        if other["id"] == ignore:
            continue
        if _pair_of(doc, cid, other) == pair:
            raise HTTPException(
                409, f"pair already judged by {other['id']!r}; revise or delete it"
            )


def _locate(doc: dict, jid: str) -> tuple[str | None, int]:
    for cid, items in doc["intra_judgments"].items():
        for k, it in enumerate(items):
            if it["id"] == jid:
                return cid, k
    for k, it in enumerate(doc["inter_judgments"]):
        if it["id"] == jid:
            return None, k
    raise HTTPException(404, f"no judgment {jid!r}")


def _wire_item(cid: str | None, item: dict) -> dict:
    return item if cid is None else {"criterion": cid, **item}


async def _json_body(request: Request):
    try:
        return await request.json()
    except Exception:
        raise HTTPException(400, "request body is not valid JSON") from None


# -- the application --


def create_app(state_dir: Path) -> FastAPI:
    store = SessionStore(state_dir)
    app = FastAPI(title="choquetkit elicitation service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(StarletteHTTPException)
    async def _schema_errors(request: Request, exc: StarletteHTTPException):
        return JSONResponse(
            {"schema": SCHEMA, "detail": exc.detail}, status_code=exc.status_code
        )

    @app.get("/v1/health")
    async def health():
        return {"schema": SCHEMA, "status": "ok"}

    @app.post("/v1/sessions", status_code=201)
    async def create_session(request: Request):
        payload = await _json_body(request)
        if not isinstance(payload, dict):
            raise HTTPException(400, "session body must be a JSON object")
        try:
            criteria, attrs = jsonio.criteria_from_json(payload.get("criteria"))
            make_inter_items(criteria.n)
        except ChoquetkitError as e:
            raise _bad_request(e) from None
        with store._master:
            sid = store.fresh_id()
            doc = {
                "schema": SCHEMA,
                "id": sid,
                "criteria": jsonio.criteria_to_json(attrs),
                "sparse": bool(payload.get("sparse", False)),
                "intra_judgments": {a.criterion_id: [] for a in attrs},
                "inter_judgments": [],
            }
            store.save(sid, doc)
        return JSONResponse(doc, status_code=201)

    @app.get("/v1/sessions/{sid}")
    async def get_session(sid: str):
        return store.load(sid)

    @app.get("/v1/sessions/{sid}/next-question")
    async def next_question(sid: str):
        question, remaining = _next_question(store.load(sid))
        return {"schema": SCHEMA, "question": question, "remaining": remaining}

    @app.get("/v1/sessions/{sid}/consistency")
    async def consistency(sid: str):
        return {"schema": SCHEMA, **_consistency(store.load(sid))}

    @app.post("/v1/sessions/{sid}/judgments", status_code=201)
    async def post_judgment(sid: str, request: Request):
        payload = await _json_body(request)
        with store.lock(sid):
            doc = store.load(sid)
            jid = payload.get("id") if isinstance(payload, dict) else None
            if jid is not None:
                if not isinstance(jid, str) or not jid:
                    raise HTTPException(400, "judgment id must be a nonempty string")
                if jid in _session_ids(doc):
                    raise HTTPException(409, f"judgment id {jid!r} is already taken")
            else:
                jid = _fresh_jid(doc)
            cid, item = _parse_judgment(doc, payload, jid)
            _check_duplicate_pair(doc, cid, item, ignore=jid)
            target = doc["intra_judgments"][cid] if cid is not None else doc["inter_judgments"]
            target.append(item)
            store.save(sid, doc)
        return JSONResponse(
            {
                "schema": SCHEMA,
                "judgment": _wire_item(cid, item),
                "consistency": _consistency(doc),
            },
            status_code=201,
        )

    @app.put("/v1/sessions/{sid}/judgments/{jid}")
    async def put_judgment(sid: str, jid: str, request: Request):
        payload = await _json_body(request)
        with store.lock(sid):
            doc = store.load(sid)
            old_cid, pos = _locate(doc, jid)
            cid, item = _parse_judgment(doc, payload, jid)
            _check_duplicate_pair(doc, cid, item, ignore=jid)
            if cid == old_cid:
                target = (
                    doc["intra_judgments"][cid] if cid is not None else doc["inter_judgments"]
                )
                target[pos] = item
            else:
                old = (
                    doc["intra_judgments"][old_cid]
                    if old_cid is not None
                    else doc["inter_judgments"]
                )
                old.pop(pos)
                new = doc["intra_judgments"][cid] if cid is not None else doc["inter_judgments"]
                new.append(item)
            store.save(sid, doc)
        return {
            "schema": SCHEMA,
            "judgment": _wire_item(cid, item),
            "consistency": _consistency(doc),
        }

    @app.delete("/v1/sessions/{sid}/judgments/{jid}")
    async def delete_judgment(sid: str, jid: str):
        with store.lock(sid):
            doc = store.load(sid)
            cid, pos = _locate(doc, jid)
            if cid is not None:
                doc["intra_judgments"][cid].pop(pos)
            else:
                doc["inter_judgments"].pop(pos)
            store.save(sid, doc)
        return {"schema": SCHEMA, "deleted": jid, "consistency": _consistency(doc)}

    @app.get("/v1/sessions/{sid}/model")
    async def get_model(sid: str):
        attrs, model = _build_model(store.load(sid))
        # Shapley importances ride along so clients can chart them
        # without computing anything themselves.
        importances = shapley(model.capacity)
        return {
            "schema": SCHEMA,
            "model": jsonio.model_to_json(attrs, model),
            "shapley": {
                cid: importances[k] for k, cid in enumerate(model.criteria.ids)
            },
        }

    @app.post("/v1/sessions/{sid}/rank")
    async def rank_acts(sid: str, request: Request):
        payload = await _json_body(request)
        doc = store.load(sid)
        acts_payload = (
            payload.get("acts") if isinstance(payload, dict) else payload
        )
        try:
            named = jsonio.acts_from_json(acts_payload)
        except ChoquetkitError as e:
            raise _bad_request(e) from None
        _, model = _build_model(doc)
        try:
            ranked = rank(model, [act for _, act in named])
        except ChoquetkitError as e:
            raise _bad_request(e) from None
        by_act = {id(act): act_id for act_id, act in named}
        rows = [(by_act[id(act)], value) for act, value in ranked]
        return {"schema": SCHEMA, "ranking": jsonio.ranking_to_json(rows)}

    return app
