"""Stateless HTTP facade over the library for the design-studio UI and scripts.

Each handler parses the JSON body with the same validation as the config-file
layer, runs the corresponding library call, and wraps the result with the
echoed request, the schema version and the wall time.  Identical request
bodies (including seeds) produce identical result payloads.  Simulation
requests above the replicate ceiling are not queued; they are answered with
a 202-style advisory pointing at the CLI, which handles full-size runs.
"""

from __future__ import annotations

import os
import time
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import configio
from .configio import ConfigError, SCHEMA_VERSION
from .decision import analyze_trial
from .frequentist import lambda_freq, min_sample_size_freq
from .oc import estimate_xi
from .quadrature import IntegrationError
from .reports import ReportTemplate, TemplateMismatchError, generate_report_text
from .samplesize import (
    NotAttainedError,
    SearchMethod,
    lambda_curve,
    min_sample_size_deterministic,
    min_sample_size_simulated,
)

# OC runs beyond this replicate count are deferred to the CLI path.
DEFAULT_REPLICATE_CEILING = 250_000
REPLICATE_CEILING_ENV_VAR = "SELECTA_SERVICE_MAX_REPLICATES"


def _replicate_ceiling() -> int:
    raw = os.environ.get(REPLICATE_CEILING_ENV_VAR, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return DEFAULT_REPLICATE_CEILING


def _error_body(kind: str, message: str, field: str | None = None) -> dict:
    body: dict[str, Any] = {"error": kind, "message": message}
    if field:
        body["field"] = field
    return body


def _envelope(request_body: dict, result: Any, started: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "request": request_body,
        "elapsed_ms": (time.perf_counter() - started) * 1000.0,
        "result": result,
    }


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception:
        raise ConfigError("request body must be a JSON object") from None
    if not isinstance(body, dict):
        raise ConfigError("request body must be a JSON object")
    return body


def create_app(static_dir: str | None = None) -> FastAPI:
    """Build the service; ``static_dir`` optionally mounts built UI assets at /."""
    app = FastAPI(title="selecta", version=SCHEMA_VERSION)
    # local/LAN design tool: permissive CORS, no authentication (documented)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ConfigError)
    async def _config_error(request: Request, exc: ConfigError) -> JSONResponse:
        return JSONResponse(status_code=400, content=_error_body("validation", str(exc)))

    @app.exception_handler(ValueError)
    async def _domain_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content=_error_body("validation", str(exc)))

    @app.exception_handler(NotAttainedError)
    async def _not_attained(request: Request, exc: NotAttainedError) -> JSONResponse:
        return JSONResponse(status_code=422, content=_error_body("not_attained", str(exc)))

    @app.exception_handler(IntegrationError)
    async def _numeric_error(request: Request, exc: IntegrationError) -> JSONResponse:
        return JSONResponse(status_code=500, content=_error_body("numeric", str(exc)))

    @app.post("/v1/sample-size")
    async def sample_size(request: Request):
        started = time.perf_counter()
        body = await _json_body(request)
        method_raw = body.get("method", SearchMethod.DETERMINISTIC.value)
        try:
            method = SearchMethod(method_raw)
        except ValueError:
            raise ConfigError(
                f"field 'method' must be 'deterministic' or 'simulated', got {method_raw!r}"
            ) from None
        spec = configio.design_spec_from_dict({k: v for k, v in body.items() if k != "method"})
        if method == SearchMethod.DETERMINISTIC:
            result = min_sample_size_deterministic(spec)
        elif method == SearchMethod.SIMULATED:
            result = min_sample_size_simulated(spec)
        else:
            raise ConfigError("field 'method' must be 'deterministic' or 'simulated'")
        return _envelope(body, configio.sample_size_result_to_dict(result), started)

    @app.post("/v1/analyze")
    async def analyze(request: Request):
        started = time.perf_counter()
        body = await _json_body(request)
        inputs = configio.decision_inputs_from_dict(body)
        report = analyze_trial(inputs)
        return _envelope(body, configio.decision_report_to_dict(report), started)

    @app.post("/v1/curve")
    async def curve(request: Request):
        started = time.perf_counter()
        body = await _json_body(request)
        spec = configio.design_spec_from_dict(body.get("spec", body))
        method_raw = body.get("method", SearchMethod.DETERMINISTIC.value)
        try:
            method = SearchMethod(method_raw)
        except ValueError:
            raise ConfigError(
                f"field 'method' must be 'deterministic' or 'simulated', got {method_raw!r}"
            ) from None
        n_from = body.get("n_from", spec.n_lo)
        n_to = body.get("n_to", spec.n_hi)
        if not isinstance(n_from, int) or not isinstance(n_to, int):
            raise ConfigError("'n_from' and 'n_to' must be integers")
        points = lambda_curve(spec, n_from, n_to, method)
        result = {"method": method.value, "points": [[n, v] for n, v in points]}
        return _envelope(body, result, started)

    @app.post("/v1/oc")
    async def oc(request: Request):
        started = time.perf_counter()
        body = await _json_body(request)
        scenario = configio.oc_scenario_from_dict(body)
        ceiling = _replicate_ceiling()
        if scenario.replicates > ceiling:
            return JSONResponse(
                status_code=202,
                content={
                    "status": "deferred",
                    "message": (
                        f"replicate count {scenario.replicates} exceeds the interactive "
                        f"ceiling {ceiling}; run this scenario through the CLI "
                        "(selecta oc-sim) for full-size simulations"
                    ),
                    "replicate_ceiling": ceiling,
                },
            )
        result = estimate_xi(scenario)
        return _envelope(body, configio.oc_result_to_dict(result), started)

    @app.post("/v1/freq")
    async def freq(request: Request):
        started = time.perf_counter()
        body = await _json_body(request)
        design = configio.freq_design_from_dict(
            {k: v for k, v in body.items() if k != "n"}
        )
        result: dict[str, Any] = {}
        if "n" in body:
            n = body["n"]
            if not isinstance(n, int) or n < 1:
                raise ConfigError("'n' must be a positive integer")
            result["lambda"] = lambda_freq(n, design)
            result["n"] = n
        else:
            search = min_sample_size_freq(design)
            result = configio.sample_size_result_to_dict(search)
        return _envelope(body, result, started)

    @app.post("/v1/report")
    async def report(request: Request):
        started = time.perf_counter()
        body = await _json_body(request)
        template_raw = body.get("template")
        try:
            template = ReportTemplate(template_raw)
        except ValueError:
            raise ConfigError(
                f"'template' must be one of {[t.value for t in ReportTemplate]}, "
                f"got {template_raw!r}"
            ) from None
        kind = body.get("kind", "design")
        spec_body = body.get("spec")
        if not isinstance(spec_body, dict):
            raise ConfigError("request must contain a 'spec' object")
        try:
            if kind == "design":
                spec = configio.design_spec_from_dict(spec_body)
                method_raw = body.get("method", SearchMethod.DETERMINISTIC.value)
                method = SearchMethod(method_raw)
                if method == SearchMethod.DETERMINISTIC:
                    search_result = min_sample_size_deterministic(spec)
                elif method == SearchMethod.SIMULATED:
                    search_result = min_sample_size_simulated(spec)
                else:
                    raise ConfigError(
                        "design reports accept method 'deterministic' or 'simulated'"
                    )
                text = generate_report_text(spec, search_result, template)
            elif kind == "analysis":
                inputs = configio.decision_inputs_from_dict(spec_body)
                text = generate_report_text(inputs, analyze_trial(inputs), template)
            elif kind == "oc":
                scenario = configio.oc_scenario_from_dict(spec_body)
                text = generate_report_text(scenario, estimate_xi(scenario), template)
            else:
                raise ConfigError(f"'kind' must be 'design', 'analysis' or 'oc', got {kind!r}")
        except TemplateMismatchError as exc:
            raise ConfigError(str(exc)) from None
        return _envelope(body, {"text": text}, started)

    @app.get("/v1/schema")
    async def schema():
        return app.openapi()

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
