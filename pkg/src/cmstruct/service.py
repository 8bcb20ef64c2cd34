"""Minimal HTTP API serving one persisted model to the map editor.

Endpoints (JSON over HTTP/1.1, UTF-8, CORS open for local development):

    GET  /api/health     -> {"status": "ok", "model_kind", "model_version"}
    POST /api/features   -> the nine features for a JSON map body
    POST /api/classify   -> label + scores + features + warnings

Map-level failures come back as 422 with a machine-readable ``code`` field
(TooSmall, SelfLoop, ...); malformed request bodies as 400. When a static
directory is given, its files are served under ``/`` so one process hosts
both the API and the editor.

The core lives in :class:`ClassifierService.handle`, a pure function of
(method, path, body), so request handling is trivially concurrent over the
shared immutable model.
"""

from __future__ import annotations

import hashlib
import json
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .errors import CmstructError, MalformedInput
from .features import FEATURE_NAMES, extract_features
from .graph import parse_map, validate
from .labels import CLASS_NAMES
from .models import TrainedModel, load_model, predict, predict_scores

_JSON = "application/json"


def _features_doc(fv) -> dict:
    return {name: getattr(fv, name) for name in FEATURE_NAMES}


class ClassifierService:
    """Routes requests against one immutable model (None until loaded)."""

    def __init__(self, model: TrainedModel | None = None,
                 model_version: str = "", static_dir: str | Path | None = None):
        self.model = model
        self.model_version = model_version
        self.static_dir = Path(static_dir).resolve() if static_dir else None

    @classmethod
    def from_model_file(cls, path: str | Path, static_dir=None) -> "ClassifierService":
        data = Path(path).read_bytes()
        model = load_model(data)
        version = f"{model.spec.kind}:{hashlib.sha256(data).hexdigest()[:12]}"
        return cls(model=model, model_version=version, static_dir=static_dir)

    # --- core -------------------------------------------------------------

    def handle(self, method: str, path: str, body: bytes | None = None):
        """Returns (status, content_type, payload_bytes)."""
        if method == "OPTIONS":
            return 204, _JSON, b""
        if path == "/api/health":
            if method != "GET":
                return self._error(405, "MethodNotAllowed", "use GET")
            return self._health()
        if path == "/api/features":
            if method != "POST":
                return self._error(405, "MethodNotAllowed", "use POST")
            return self._features(body)
        if path == "/api/classify":
            if method != "POST":
                return self._error(405, "MethodNotAllowed", "use POST")
            return self._classify(body)
        if method == "GET" and self.static_dir is not None:
            return self._static(path)
        return self._error(404, "NotFound", f"no route for {path}")

    def _health(self):
        if self.model is None:
            return self._error(503, "ModelNotLoaded", "model is not loaded yet")
        return self._json(200, {
            "status": "ok",
            "model_kind": self.model.spec.kind,
            "model_version": self.model_version,
        })

    def _parse_body(self, body: bytes | None):
        if not body:
            raise MalformedInput("empty request body")
        cm = parse_map(body, "json", map_id="request")
        return validate(cm)

    def _features(self, body):
        try:
            graph = self._parse_body(body)
        except MalformedInput as exc:
            return self._error(400, exc.code, str(exc))
        except CmstructError as exc:
            return self._error(422, exc.code, str(exc))
        fv = extract_features(graph)
        return self._json(200, {
            "map_id": graph.map_id,
            "features": _features_doc(fv),
            "warnings": list(graph.warnings),
        })

    def _classify(self, body):
        if self.model is None:
            return self._error(503, "ModelNotLoaded", "model is not loaded yet")
        try:
            graph = self._parse_body(body)
        except MalformedInput as exc:
            return self._error(400, exc.code, str(exc))
        except CmstructError as exc:
            return self._error(422, exc.code, str(exc))
        fv = extract_features(graph)
        label = predict(self.model, fv)
        scores = predict_scores(self.model, fv)
        return self._json(200, {
            "label": label.wire_name,
            "scores": {name: float(s) for name, s in zip(CLASS_NAMES, scores)},
            "features": _features_doc(fv),
            "warnings": list(graph.warnings),
            "model_version": self.model_version,
        })

    def _static(self, path: str):
        name = path.lstrip("/") or "index.html"
        target = (self.static_dir / name).resolve()
        if not str(target).startswith(str(self.static_dir)) or not target.is_file():
            return self._error(404, "NotFound", f"no static file {path}")
        ctype = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        return 200, ctype, target.read_bytes()

    @staticmethod
    def _json(status: int, doc: dict):
        return status, _JSON, json.dumps(doc, sort_keys=True).encode("utf-8")

    @classmethod
    def _error(cls, status: int, code: str, message: str):
        return cls._json(status, {"code": code, "message": message})


class _Handler(BaseHTTPRequestHandler):
    service: ClassifierService  # set on the subclass by make_http_server

    def _respond(self, method):
        body = None
        if method == "POST":
            length = int(self.headers.get("Content-Length") or 0)
            body = self.rfile.read(length)
        status, ctype, payload = self.service.handle(method, self.path, body)
        self.send_response(status)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        if payload:
            self.wfile.write(payload)

    def do_GET(self):
        self._respond("GET")

    def do_POST(self):
        self._respond("POST")

    def do_OPTIONS(self):
        self._respond("OPTIONS")

    def log_message(self, fmt, *args):  # quiet by default
        pass


def make_http_server(service: ClassifierService, host: str = "127.0.0.1",
                     port: int = 8080) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer((host, port), handler)


def run_server(model_path: str | Path, host: str = "127.0.0.1", port: int = 8080,
               static_dir=None) -> None:
    service = ClassifierService.from_model_file(model_path, static_dir=static_dir)
    server = make_http_server(service, host=host, port=port)
    print(f"serving {service.model_version} on http://{host}:{port}/ "
          f"(static: {service.static_dir or 'off'})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()


def start_background(service: ClassifierService, host="127.0.0.1", port=0):
    """Spin up a server thread; returns (server, base_url). Test helper."""
    server = make_http_server(service, host=host, port=port)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    addr_host, addr_port = server.server_address[:2]
    return server, f"http://{addr_host}:{addr_port}"
