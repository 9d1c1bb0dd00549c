"""JSON-over-HTTP facade for the explorer UI and other clients.

Compute endpoints are pure: identical request bodies give byte-identical
responses.  Sessions are in-memory pipelines; each session serializes its
own mutations with a lock, and undo recomputes the current polynomial by
replaying the remaining steps from the seed.

Error mapping: 400 for malformed requests and parse errors (with byte
``offset`` when available), 404 for unknown slugs and session ids, 422 for
domain errors; the ``error`` field carries the exception class name.
"""

from __future__ import annotations

import threading
import uuid
from typing import Optional, Tuple

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import catalog
from .errors import CurveLabError, NotFound, ParseError
from .expr import expand, format_poly, is_identifier, parse, variables_in
from .poly import BivarPoly, as_fraction, as_point
from .raster import Viewport, marching_squares, render_svg, sample_grid
from .transforms import (apply_step, is_singular, step_from_dict,
                         step_to_dict, tangent_cone)

MAX_CELLS = 2048


class _BadRequest(Exception):
    def __init__(self, detail: str, offset: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        self.offset = offset


class NothingToUndo(CurveLabError):
    """Undo requested on a session with an empty history."""


class _Session:
    def __init__(self, seed: dict, vars_pair: Tuple[str, str],
                 seed_poly: BivarPoly):
        self.id = uuid.uuid4().hex
        self.seed = seed                      # {"curve": slug} or {"expr": text}
        self.vars = vars_pair
        self.seed_poly = seed_poly
        self.entries: list = []               # [{"step": dict, "poly": text}]
        self.polys: list = [seed_poly]        # seed plus one per entry
        self.lock = threading.Lock()

    @property
    def current(self) -> BivarPoly:
        return self.polys[-1]


def _curve_payload(entry: catalog.CatalogEntry) -> dict:
    construction = None
    if entry.construction is not None:
        c = entry.construction
        construction = {"parent": c.parent, "kind": c.kind, "pivot": c.pivot,
                        "replaced": c.replaced, "new": c.new,
                        "center": c.center}
    return {
        "slug": entry.slug,
        "name": entry.name,
        "expr": entry.expr,
        "vars": list(entry.vars),
        "figure": entry.figure,
        "frame": list(entry.frame),
        "construction": construction,
    }


def _expect_dict(body, what: str = "request body") -> dict:
    if not isinstance(body, dict):
        raise _BadRequest(f"{what} must be a JSON object")
    return body


def _parse_vars_field(raw, required: bool) -> Optional[Tuple[str, str]]:
    if raw is None:
        if required:
            raise _BadRequest("'vars' is required")
        return None
    if (not isinstance(raw, list) or len(raw) != 2
            or not all(isinstance(n, str) and is_identifier(n) for n in raw)
            or raw[0] == raw[1]):
        raise _BadRequest("'vars' must be two distinct identifiers")
    return raw[0], raw[1]


def _resolve_poly(body: dict) -> Tuple[BivarPoly, Tuple[str, str]]:
    """Input polynomial from {"curve": slug} or {"poly": text, "vars": [...]};
    expression input is canonicalized."""
    has_curve = "curve" in body
    has_poly = "poly" in body
    if has_curve == has_poly:
        raise _BadRequest("give exactly one of 'curve' or 'poly'")
    if has_curve:
        if not isinstance(body["curve"], str):
            raise _BadRequest("'curve' must be a slug string")
        entry = catalog.get_entry(body["curve"])
        pair = _parse_vars_field(body.get("vars"), required=False)
        if pair is not None and pair != entry.vars:
            raise _BadRequest(f"'vars' disagrees with curve variables "
                              f"{list(entry.vars)}")
        return entry.poly, entry.vars
    if not isinstance(body["poly"], str):
        raise _BadRequest("'poly' must be an expression string")
    node = parse(body["poly"])
    pair = _parse_vars_field(body.get("vars"), required=False)
    if pair is None:
        seen = variables_in(node)
        if len(seen) != 2:
            raise _BadRequest("cannot infer two variables; pass 'vars'")
        pair = (seen[0], seen[1])
    return expand(node, *pair).normalize(), pair


def _parse_step_field(body: dict) -> Tuple:
    if "step" not in body:
        raise _BadRequest("'step' is required")
    try:
        step = step_from_dict(body["step"])
    except ValueError as exc:
        raise _BadRequest(str(exc)) from None
    pre = body.get("pre_translate")
    if pre is not None:
        if not isinstance(pre, list) or len(pre) != 2:
            raise _BadRequest("'pre_translate' must be a pair of rationals")
        try:
            pre = (as_fraction(pre[0]), as_fraction(pre[1]))
        except ValueError as exc:
            raise _BadRequest(str(exc)) from None
    return step, pre


def _parse_at_field(body: dict) -> Tuple:
    raw = body.get("at")
    if not isinstance(raw, list) or len(raw) != 2:
        raise _BadRequest("'at' must be a pair of rationals")
    try:
        return as_point((raw[0], raw[1]))
    except ValueError as exc:
        raise _BadRequest(str(exc)) from None


def _parse_viewport(body: dict, entry_frame) -> Viewport:
    raw = body.get("viewport")
    if raw is None:
        if entry_frame is None:
            raise _BadRequest("'viewport' is required unless 'curve' is given")
        bounds = list(entry_frame)
    else:
        if not isinstance(raw, list) or len(raw) != 4 or not all(
                isinstance(b, (int, float)) and not isinstance(b, bool)
                for b in raw):
            raise _BadRequest("'viewport' must be [umin, umax, vmin, vmax]")
        bounds = [float(b) for b in raw]
    cells = body.get("cells", 512)
    if not isinstance(cells, int) or isinstance(cells, bool) \
            or not 2 <= cells <= MAX_CELLS:
        raise _BadRequest(f"'cells' must be an integer in [2, {MAX_CELLS}]")
    return Viewport(*bounds, cells_u=cells, cells_v=cells)


def _line_direction(line: BivarPoly) -> Tuple[float, float]:
    # a*u + b*v = 0 runs along (b, -a)
    a = line.coefficient((1, 0))
    b = line.coefficient((0, 1))
    return float(b), float(-a)


def create_app() -> FastAPI:
    app = FastAPI(title="curvelab service", docs_url=None, redoc_url=None)
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    sessions: dict = {}
    sessions_lock = threading.Lock()

    @app.exception_handler(_BadRequest)
    async def bad_request_handler(request: Request, exc: _BadRequest):
        payload = {"error": "InvalidRequest", "detail": exc.detail}
        if exc.offset is not None:
            payload["offset"] = exc.offset
        return JSONResponse(payload, status_code=400)

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse({"error": "InvalidRequest", "detail": str(exc)},
                            status_code=400)

    @app.exception_handler(CurveLabError)
    async def domain_handler(request: Request, exc: CurveLabError):
        if isinstance(exc, NotFound):
            status = 404
        elif isinstance(exc, ParseError):
            status = 400
        else:
            status = 422
        payload = {"error": exc.code, "detail": str(exc)}
        if isinstance(exc, ParseError):
            payload["offset"] = exc.offset
        return JSONResponse(payload, status_code=status)

    async def read_body(request: Request) -> dict:
        try:
            body = await request.json()
        except Exception:
            raise _BadRequest("body must be valid JSON") from None
        return _expect_dict(body)

    def get_session(session_id: str) -> _Session:
        with sessions_lock:
            session = sessions.get(session_id)
        if session is None:
            raise NotFound(f"no session {session_id!r}")
        return session

    @app.get("/curves")
    async def curves():
        return [_curve_payload(entry) for entry in catalog.list_catalog()]

    @app.post("/parse")
    async def parse_endpoint(request: Request):
        body = await read_body(request)
        if "expr" in body and "poly" not in body and "curve" not in body:
            body = dict(body)
            body["poly"] = body.pop("expr")
        poly, pair = _resolve_poly(body)
        return {
            "poly": format_poly(poly),
            "vars": list(pair),
            "degree": None if poly.is_zero else poly.total_degree(),
            "terms": len(poly.terms),
        }

    @app.post("/transform")
    async def transform_endpoint(request: Request):
        body = await read_body(request)
        poly, _ = _resolve_poly(body)
        step, pre = _parse_step_field(body)
        result, k = apply_step(poly, step, pre)
        payload = {"poly": format_poly(result), "vars": list(result.vars)}
        if k is not None:
            payload["exceptional_multiplicity"] = k
        return payload

    @app.post("/analyze")
    async def analyze_endpoint(request: Request):
        body = await read_body(request)
        poly, _ = _resolve_poly(body)
        at = _parse_at_field(body)
        report = is_singular(poly, at)
        if report.status == "not_on_curve":
            return {"status": "not_on_curve"}
        cone = tangent_cone(poly, at)
        flat = []
        detail = []
        for line, mult in cone.lines:
            text = format_poly(line)
            flat.extend([text] * mult)
            detail.append({"line": text, "multiplicity": mult,
                           "direction": list(_line_direction(line))})
        return {
            "status": report.status,
            "multiplicity": report.multiplicity,
            "tangent_lines": flat,
            "lines": detail,
            "residual": format_poly(cone.residual),
        }

    @app.post("/raster")
    async def raster_endpoint(request: Request):
        body = await read_body(request)
        frame = None
        if "curve" in body:
            frame = catalog.get_entry(body["curve"]).frame \
                if isinstance(body["curve"], str) else None
        poly, _ = _resolve_poly(body)
        vp = _parse_viewport(body, frame)
        output = body.get("format", "svg")
        if output == "svg":
            return {"svg": render_svg(poly, vp)}
        if output == "segments":
            contours = marching_squares(sample_grid(poly, vp), vp)
            return {
                "segments": [[[p0[0], p0[1]], [p1[0], p1[1]]]
                             for p0, p1 in contours.segments],
                "stats": {"min_abs": contours.stats.min_abs,
                          "max_abs": contours.stats.max_abs},
            }
        raise _BadRequest("'format' must be 'svg' or 'segments'")

    def session_payload(session: _Session) -> dict:
        return {
            "id": session.id,
            "seed": session.seed,
            "poly": format_poly(session.current),
            "vars": list(session.current.vars),
            "history": list(session.entries),
        }

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await read_body(request)
        if "curve" in body:
            if not isinstance(body["curve"], str):
                raise _BadRequest("'curve' must be a slug string")
            entry = catalog.get_entry(body["curve"])
            seed = {"curve": entry.slug}
            session = _Session(seed, entry.vars, entry.poly)
        elif "expr" in body:
            if not isinstance(body["expr"], str):
                raise _BadRequest("'expr' must be a string")
            node = parse(body["expr"])
            pair = _parse_vars_field(body.get("vars"), required=False)
            if pair is None:
                seen = variables_in(node)
                if len(seen) != 2:
                    raise _BadRequest("cannot infer two variables; pass 'vars'")
                pair = (seen[0], seen[1])
            poly = expand(node, *pair).normalize()
            session = _Session({"expr": body["expr"]}, pair, poly)
        else:
            raise _BadRequest("give one of 'curve' or 'expr'")
        with sessions_lock:
            sessions[session.id] = session
        return session_payload(session)

    @app.get("/sessions/{session_id}")
    async def show_session(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return session_payload(session)

    @app.post("/sessions/{session_id}/steps")
    async def add_step(session_id: str, request: Request):
        body = await read_body(request)
        session = get_session(session_id)
        step, pre = _parse_step_field(body)
        with session.lock:
            result, k = apply_step(session.current, step, pre)
            record = step_to_dict(step)
            if pre is not None:
                record["pre_translate"] = [str(c) for c in pre]
            session.entries.append({"step": record,
                                    "poly": format_poly(result)})
            session.polys.append(result)
            payload = {"poly": format_poly(result),
                       "vars": list(result.vars),
                       "history_length": len(session.entries)}
            if k is not None:
                payload["exceptional_multiplicity"] = k
            return payload

    @app.post("/sessions/{session_id}/undo")
    async def undo_step(session_id: str):
        session = get_session(session_id)
        with session.lock:
            if not session.entries:
                raise NothingToUndo("the session has no steps to undo")
            session.entries.pop()
            session.polys.pop()
            # replay from the seed to honor the session invariant
            replayed = session.seed_poly
            for entry in session.entries:
                raw = dict(entry["step"])
                pre = raw.pop("pre_translate", None)
                if pre is not None:
                    pre = (as_fraction(pre[0]), as_fraction(pre[1]))
                replayed, _ = apply_step(replayed, step_from_dict(raw), pre)
            assert replayed == session.current
            return {"poly": format_poly(session.current),
                    "vars": list(session.current.vars),
                    "history_length": len(session.entries)}

    @app.get("/sessions/{session_id}/export")
    async def export_session(session_id: str):
        session = get_session(session_id)
        with session.lock:
            seed = dict(session.seed)
            seed["vars"] = list(session.vars)
            return {
                "version": 1,
                "seed": seed,
                "steps": [dict(entry["step"]) for entry in session.entries],
            }

    return app
