"""HTTP API exposing the workbench.

Responses reuse the CLI's canonical JSON writer, so a given document and
seed produce byte-identical output through either surface. The scenario
store keeps immutable snapshots in memory; concurrent readers are safe
because every stored value and every domain object is frozen.
"""

from __future__ import annotations

import os
import threading
from typing import Any

from fastapi import FastAPI, Request, Response

from ..audit import audit_scenario
from .report import (
    AssessmentOptions,
    report_to_dict,
    run_assessment,
    run_baseline_table,
    run_sensitivity,
    sensitivity_to_dict,
)
from .schema import schema_payload
from .serialization import DocumentError, canonical_json, parse_scenario, serialize_scenario

ENV_STORE_CAPACITY = "ICTFX_STORE_CAPACITY"
DEFAULT_STORE_CAPACITY = 100


class ScenarioStore:
    """Bounded in-memory store of canonical scenario snapshots."""

    def __init__(self, capacity: int) -> None:
        self._capacity = capacity
        self._lock = threading.Lock()
        self._documents: dict[str, str] = {}

    def put(self, scenario_id: str, text: str) -> None:
        canonical = serialize_scenario(parse_scenario(text))
        with self._lock:
            if scenario_id not in self._documents and len(self._documents) >= self._capacity:
                raise DocumentError(
                    "store-full",
                    scenario_id,
                    f"store holds its capacity of {self._capacity} scenarios",
                )
            self._documents[scenario_id] = canonical

    def get(self, scenario_id: str) -> str | None:
        with self._lock:
            return self._documents.get(scenario_id)


def _json_response(data: Any, status: int = 200) -> Response:
    return Response(
        content=canonical_json(data), status_code=status, media_type="application/json"
    )


def _raw_response(text: str, status: int = 200) -> Response:
    return Response(content=text, status_code=status, media_type="application/json")


def _error_response(exc: DocumentError, status: int = 400) -> Response:
    return _json_response({"error": exc.to_dict()}, status=status)


def create_app(store_capacity: int | None = None) -> FastAPI:
    if store_capacity is None:
        store_capacity = int(
            os.environ.get(ENV_STORE_CAPACITY, str(DEFAULT_STORE_CAPACITY))
        )
    app = FastAPI(title="ictfx", version="1", docs_url=None, redoc_url=None)
    store = ScenarioStore(store_capacity)

    @app.post("/v1/assess")
    async def assess(request: Request, seed: int | None = None) -> Response:
        body = (await request.body()).decode("utf-8")
        try:
            document = parse_scenario(body)
            report = run_assessment(document, AssessmentOptions(seed=seed))
        except DocumentError as exc:
            return _error_response(exc)
        return _raw_response(canonical_json(report_to_dict(report)))

    @app.post("/v1/sensitivity")
    async def sensitivity(
        request: Request,
        mode: str = "tornado",
        samples: int = 10_000,
        seed: int | None = None,
    ) -> Response:
        body = (await request.body()).decode("utf-8")
        if mode not in ("tornado", "montecarlo"):
            return _error_response(
                DocumentError("invalid-value", "mode", f"unknown sensitivity mode {mode!r}")
            )
        try:
            document = parse_scenario(body)
            report = run_sensitivity(
                document, mode, AssessmentOptions(seed=seed, monte_carlo_samples=samples)
            )
        except DocumentError as exc:
            return _error_response(exc)
        except ValueError as exc:
            return _error_response(DocumentError("invalid-value", "", str(exc)))
        return _raw_response(canonical_json(sensitivity_to_dict(report)))

    @app.post("/v1/audit")
    async def audit(request: Request) -> Response:
        body = (await request.body()).decode("utf-8")
        try:
            document = parse_scenario(body)
        except DocumentError as exc:
            return _error_response(exc)
        flags = audit_scenario(document.scenario)
        return _json_response(
            {
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
        )

    @app.post("/v1/baseline")
    async def baseline(request: Request, horizon: int = 10) -> Response:
        body = (await request.body()).decode("utf-8")
        try:
            document = parse_scenario(body)
            table = run_baseline_table(document, horizon)
        except DocumentError as exc:
            return _error_response(exc)
        except ValueError as exc:
            return _error_response(DocumentError("invalid-value", "horizon", str(exc)))
        return _raw_response(canonical_json(table))

    @app.get("/v1/schema")
    async def schema() -> Response:
        return _json_response(schema_payload())

    @app.put("/v1/scenarios/{scenario_id}")
    async def put_scenario(scenario_id: str, request: Request) -> Response:
        body = (await request.body()).decode("utf-8")
        try:
            store.put(scenario_id, body)
        except DocumentError as exc:
            status = 409 if exc.code == "store-full" else 400
            return _error_response(exc, status=status)
        return _json_response({"id": scenario_id, "stored": True})

    @app.get("/v1/scenarios/{scenario_id}")
    async def get_scenario(scenario_id: str) -> Response:
        text = store.get(scenario_id)
        if text is None:
            return _error_response(
                DocumentError("not-found", scenario_id, "no scenario stored under this id"),
                status=404,
            )
        return _raw_response(text)

    return app


app = create_app()
