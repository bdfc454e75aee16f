"""HTTP facade for the decision panel: read reports, commit edits, run what-ifs.

One in-memory session, mirrored to its file on every commit.  Reads and
what-ifs are pure and may run concurrently; commits serialize through a
single lock and bump an integer version token for optimistic concurrency.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Any, Callable

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import (
    InvalidPatchError,
    OrdevalError,
    ParseError,
    Problem,
    StaleVersionError,
    ValidationError,
)
from .session import Session, evaluate, report_to_json
from .storage import save_session, session_from_json, session_to_json
from .whatif import Patch, apply_patch, delta_to_json, parse_patch, what_if


class NoSessionError(OrdevalError):
    def __init__(self) -> None:
        super().__init__("no session loaded")


class SessionStore:
    """Single-writer, many-reader holder for the current session."""

    def __init__(self, path: Path | None = None) -> None:
        self._lock = threading.Lock()
        self._session: Session | None = None
        self._version = 0
        self._path = path

    def load_file(self) -> None:
        """Read the backing file, if it exists, as version 1."""
        if self._path is not None and self._path.exists():
            from .storage import load_session

            with self._lock:
                self._session = load_session(self._path.read_bytes())
                self._version = 1

    def snapshot(self) -> tuple[Session, int]:
        with self._lock:
            if self._session is None:
                raise NoSessionError()
            return self._session, self._version

    def replace(self, session: Session, expected: int | None) -> int:
        """Install a whole new session; used by PUT."""
        with self._lock:
            if expected is not None and expected != self._version:
                raise StaleVersionError(expected, self._version)
            self._session = session
            self._version += 1
            self._persist()
            return self._version

    def commit(self, mutate: Callable[[Session], Session], expected: int) -> tuple[Session, int]:
        """Apply an edit against the expected version; conflict otherwise."""
        with self._lock:
            if self._session is None:
                raise NoSessionError()
            if expected != self._version:
                raise StaleVersionError(expected, self._version)
            self._session = mutate(self._session)
            self._version += 1
            self._persist()
            return self._session, self._version

    def _persist(self) -> None:
        if self._path is not None and self._session is not None:
            self._path.write_bytes(save_session(self._session))


def _error_body(code: str, message: str, details: list[dict] | None = None) -> dict:
    return {"code": code, "message": message, "details": details or []}


def _problems_details(problems) -> list[dict]:
    return [{"path": p.path, "problem": p.message} for p in problems]


def _translate(exc: Exception) -> JSONResponse:
    if isinstance(exc, NoSessionError):
        return JSONResponse(status_code=404, content=_error_body("not-found", str(exc)))
    if isinstance(exc, StaleVersionError):
        return JSONResponse(status_code=409, content=_error_body("conflict", str(exc)))
    if isinstance(exc, (ValidationError, InvalidPatchError)):
        return JSONResponse(
            status_code=422,
            content=_error_body("validation", str(exc), _problems_details(exc.problems)),
        )
    if isinstance(exc, (ParseError, OrdevalError)):
        return JSONResponse(status_code=422, content=_error_body("validation", str(exc)))
    raise exc


async def _read_json(request: Request) -> Any:
    try:
        return json.loads(await request.body())
    except json.JSONDecodeError as exc:
        raise ParseError(f"request body is not valid JSON: {exc.msg}", exc.lineno, exc.colno) from exc


def _version_field(doc: Any) -> int:
    if not isinstance(doc, dict) or "version" not in doc:
        raise ValidationError([Problem("version", "edits must carry the current version token")])
    version = doc["version"]
    if not isinstance(version, int) or isinstance(version, bool):
        raise ValidationError([Problem("version", "version must be an integer")])
    return version


def create_app(store: SessionStore, static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="ordeval service", docs_url=None, redoc_url=None)

    @app.get("/api/session")
    def get_session() -> JSONResponse:
        try:
            session, version = store.snapshot()
        except OrdevalError as exc:
            return _translate(exc)
        return JSONResponse({"version": version, "session": session_to_json(session)})

    @app.get("/api/report")
    def get_report() -> JSONResponse:
        try:
            session, version = store.snapshot()
            report = evaluate(session)
        except OrdevalError as exc:
            return _translate(exc)
        return JSONResponse({"version": version, "report": report_to_json(report)})

    @app.put("/api/session")
    async def put_session(request: Request) -> JSONResponse:
        try:
            doc = await _read_json(request)
            session = session_from_json(doc)
            expected = None
            if_match = request.headers.get("if-match")
            if if_match is not None:
                try:
                    expected = int(if_match.strip('"'))
                except ValueError:
                    raise ValidationError(
                        [Problem("If-Match", "expected an integer version token")]
                    ) from None
            version = store.replace(session, expected)
            report = evaluate(session)
        except OrdevalError as exc:
            return _translate(exc)
        return JSONResponse({"version": version, "report": report_to_json(report)})

    def _commit_patch(patch: Patch, expected: int) -> JSONResponse:
        session, version = store.commit(lambda s: apply_patch(s, patch), expected)
        report = evaluate(session)
        return JSONResponse({"version": version, "report": report_to_json(report)})

    @app.patch("/api/importances")
    async def patch_importances(request: Request) -> JSONResponse:
        try:
            doc = await _read_json(request)
            expected = _version_field(doc)
            patch = parse_patch({"importances": doc.get("importances", {})})
            return _commit_patch(patch, expected)
        except OrdevalError as exc:
            return _translate(exc)

    @app.patch("/api/quantifier")
    async def patch_quantifier(request: Request) -> JSONResponse:
        try:
            doc = await _read_json(request)
            expected = _version_field(doc)
            patch = parse_patch({"quantifier": doc.get("quantifier")})
            return _commit_patch(patch, expected)
        except OrdevalError as exc:
            return _translate(exc)

    @app.patch("/api/scores")
    async def patch_scores(request: Request) -> JSONResponse:
        try:
            doc = await _read_json(request)
            expected = _version_field(doc)
            patch = parse_patch({"scores": doc.get("scores", [])})
            return _commit_patch(patch, expected)
        except OrdevalError as exc:
            return _translate(exc)

    @app.post("/api/whatif")
    async def post_whatif(request: Request) -> JSONResponse:
        try:
            doc = await _read_json(request)
            session, version = store.snapshot()
            patch = parse_patch(doc)
            result = what_if(session, patch)
        except OrdevalError as exc:
            return _translate(exc)
        return JSONResponse(
            {
                "version": version,
                "report": report_to_json(result.report),
                "delta": delta_to_json(result.delta),
            }
        )

    if static_dir is not None and static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="panel")

    return app
