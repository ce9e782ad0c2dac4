"""Small threaded HTTP server exposing the toolkit to the studio UI.

Endpoints:

    GET  /api/presets        -> {"presets": {name: scene spec}}
    POST /api/trace          -> problem (+ optional sampler) to polyline
    POST /api/scene/preview  -> scene spec to SVG text
    POST /api/leaves         -> leaf spec to objective vectors
    POST /api/mesh           -> {"scene": .., "mode": ..} to binary STL

Requests are stateless; the only shared data are the immutable preset
specs, so concurrent handling needs no locks.  With ``static_dir`` set,
anything outside ``/api/`` is served from that directory, which is how
the built studio bundle is hosted.
"""

from __future__ import annotations

import json
import sys
from functools import partial
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer

from .compose import PRESETS, preset_spec, scene_from_spec
from .geometry import LeafSpec
from .model import problem_from_dict, validate_problem
from .sampler import SamplerConfig, polyline_to_dict, trace_path
from .svg import emit_svg

__all__ = ["make_server", "serve"]


def _trace_payload(body: dict) -> dict:
    if "problem" in body:
        problem = problem_from_dict(body["problem"])
        config = SamplerConfig(**body.get("sampler", {}))
    else:
        problem = problem_from_dict(body)
        config = SamplerConfig()
    report = validate_problem(problem)
    if not report.ok:  # same wording the CLI gives for bad input
        raise ValueError("; ".join(report.failures))
    return polyline_to_dict(trace_path(problem, config))


def _preview_payload(body: dict) -> str:
    return emit_svg(scene_from_spec(body), titles=True)


def _leaves_payload(body: dict) -> dict:
    from .cli import _leaves_payload as payload  # single source of truth

    return payload(LeafSpec(**body))


def _mesh_payload(body: dict) -> bytes:
    from .cli import _scene_mesh
    from .mesh import emit_stl

    scene = scene_from_spec(body["scene"])
    mesh = _scene_mesh(scene,
                       mode=body.get("mode", "tube"),
                       radius=float(body.get("radius", 0.6)),
                       height=float(body.get("height", 1.5)),
                       width=float(body.get("width", 1.2)),
                       segments=int(body.get("segments", 16)))
    return emit_stl(mesh)


class _Handler(SimpleHTTPRequestHandler):
    # directory is injected via functools.partial in make_server; the
    # base class falls back to the working directory when it is None,
    # so static serving is gated by this flag instead
    static_enabled = False

    def log_message(self, fmt, *args):  # diagnostics belong on stderr
        sys.stderr.write("%s - %s\n" % (self.address_string(), fmt % args))

    def _send(self, status: int, content_type: str, payload: bytes):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(payload)

    def _send_json(self, status: int, data) -> None:
        self._send(status, "application/json",
                   json.dumps(data).encode())

    def _fail(self, status: int, message: str) -> None:
        self._send_json(status, {"error": message})

    def do_GET(self):
        if self.path.rstrip("/") == "/api/presets":
            self._send_json(200, {"presets": {
                name: preset_spec(name) for name in sorted(PRESETS)
            }})
        elif self.path.startswith("/api/"):
            self._fail(404, f"unknown endpoint {self.path}")
        elif not self.static_enabled:
            self._fail(404, "no static directory configured")
        else:
            super().do_GET()

    def do_POST(self):
        try:
            length = int(self.headers.get("Content-Length", 0))
            body = json.loads(self.rfile.read(length) or b"{}")
        except (ValueError, TypeError):
            self._fail(400, "request body is not valid JSON")
            return

        route = self.path.rstrip("/")
        try:
            if route == "/api/trace":
                self._send_json(200, _trace_payload(body))
            elif route == "/api/scene/preview":
                self._send(200, "image/svg+xml",
                           _preview_payload(body).encode())
            elif route == "/api/leaves":
                self._send_json(200, _leaves_payload(body))
            elif route == "/api/mesh":
                self._send(200, "model/stl", _mesh_payload(body))
            else:
                self._fail(404, f"unknown endpoint {self.path}")
        except (KeyError, TypeError, ValueError) as exc:
            self._fail(400, str(exc))
        except Exception as exc:  # numeric blowups and the like
            self._fail(500, f"{type(exc).__name__}: {exc}")


def make_server(host: str = "127.0.0.1", port: int = 0,
                static_dir: str | None = None) -> ThreadingHTTPServer:
    bound = type("BoundHandler", (_Handler,),
                 {"static_enabled": static_dir is not None})
    return ThreadingHTTPServer((host, port),
                               partial(bound, directory=static_dir))


def serve(host: str = "127.0.0.1", port: int = 8400,
          static_dir: str | None = None) -> None:
    """Run the API server until interrupted; prints the bound address."""
    httpd = make_server(host, port, static_dir)
    actual = httpd.server_address[1]
    print(f"serving on http://{host}:{actual}", flush=True)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
