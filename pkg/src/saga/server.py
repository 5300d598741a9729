"""HTTP server hosting the walker UI and its JSON API.

One story, one shared StoryState: the walker is a design-review tool.
Connections may be concurrent but every state mutation goes through a
single lock, so observable history is a total order.
"""

from __future__ import annotations

import json
import threading
from http import HTTPStatus
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .export import graph_doc
from .model import StoryGraph
from .runtime import enabled_transitions, new_state, signal_event

_FALLBACK_PAGE = """<!DOCTYPE html>
<html>
<head><meta charset="utf-8"><title>saga walker</title></head>
<body>
<h1>saga walker</h1>
<p>No UI bundle is installed. The JSON API is live under <code>/api</code>:
GET /api/story, GET /api/state, POST /api/events, POST /api/reset.</p>
</body>
</html>
"""


class StorySession:
    """The single shared walk, guarded by one lock."""

    def __init__(self, graph: StoryGraph):
        self.graph = graph
        self._lock = threading.Lock()
        self._state = new_state(graph)

    def story_doc(self) -> dict:
        return graph_doc(self.graph)

    def state_doc(self) -> dict:
        with self._lock:
            state = self._state
        graph = self.graph
        return {
            "current": graph.node_label(state.current).canonical,
            "section": graph.section_of(state.current).name.canonical,
            "happened": sorted(state.happened),
            "history": [
                {
                    "src": graph.node_label(f.transition.src).canonical,
                    "dst": graph.node_label(f.transition.dst).canonical,
                    "triggering_event": f.triggering_event,
                }
                for f in state.history
            ],
            "enabled": [
                {
                    "dst": graph.node_label(h.transition.dst).canonical,
                    "missing": list(h.missing),
                }
                for h in enabled_transitions(state, graph)
            ],
        }

    def signal(self, event: str) -> list:
        with self._lock:
            self._state, notes = signal_event(self._state, self.graph, event)
        return [
            {
                "new_node": n.new_node,
                "new_section": n.new_section,
                "via_events": list(n.via_events),
            }
            for n in notes
        ]

    def reset(self) -> None:
        with self._lock:
            self._state = new_state(self.graph)


def make_handler(session: StorySession, ui_dir: str | None):
    ui_root = Path(ui_dir).resolve() if ui_dir else None

    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):
            pass

        def _send_json(self, obj, status=HTTPStatus.OK):
            body = json.dumps(obj).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _send_error_json(self, code: int, message: str):
            self._send_json({"error": message, "code": code}, status=code)

        def _send_file(self, path: Path):
            types = {
                ".html": "text/html",
                ".js": "text/javascript",
                ".css": "text/css",
                ".svg": "image/svg+xml",
                ".json": "application/json",
            }
            body = path.read_bytes()
            self.send_response(HTTPStatus.OK)
            self.send_header(
                "Content-Type", types.get(path.suffix, "application/octet-stream")
            )
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            if self.path == "/api/story":
                self._send_json(session.story_doc())
            elif self.path == "/api/state":
                self._send_json(session.state_doc())
            elif self.path.startswith("/api/"):
                self._send_error_json(404, "unknown API route")
            else:
                self._serve_static()

        def _serve_static(self):
            rel = self.path.lstrip("/").split("?", 1)[0] or "index.html"
            if ui_root is not None:
                target = (ui_root / rel).resolve()
                if target.is_file() and target.is_relative_to(ui_root):
                    self._send_file(target)
                    return
                if rel == "index.html":
                    pass  # fall through to the placeholder
                else:
                    self._send_error_json(404, "not found")
                    return
            if rel == "index.html":
                body = _FALLBACK_PAGE.encode("utf-8")
                self.send_response(HTTPStatus.OK)
                self.send_header("Content-Type", "text/html")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
            else:
                self._send_error_json(404, "not found")

        def do_POST(self):
            if self.path == "/api/events":
                length = int(self.headers.get("Content-Length") or 0)
                raw = self.rfile.read(length)
                try:
                    doc = json.loads(raw or b"")
                    event = doc["event"]
                    if not isinstance(event, str) or not event.strip():
                        raise ValueError("event must be a nonempty string")
                except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                    self._send_error_json(400, "body must be {\"event\": \"label\"}")
                    return
                notifications = session.signal(event)
                self._send_json(
                    {"notifications": notifications, "state": session.state_doc()}
                )
            elif self.path == "/api/reset":
                session.reset()
                self._send_json({"state": session.state_doc()})
            else:
                self._send_error_json(404, "unknown API route")

    return Handler


def default_ui_dir() -> str | None:
    """The built walker UI, when the frontend has been compiled."""
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return str(candidate) if candidate.is_dir() else None


def make_server(
    graph: StoryGraph, port: int = 0, ui_dir: str | None = None
) -> ThreadingHTTPServer:
    session = StorySession(graph)
    if ui_dir is None:
        ui_dir = default_ui_dir()
    return ThreadingHTTPServer(("127.0.0.1", port), make_handler(session, ui_dir))


def serve(graph: StoryGraph, port: int = 8080, ui_dir: str | None = None) -> int:
    server = make_server(graph, port=port, ui_dir=ui_dir)
    host, actual_port = server.server_address[:2]
    # flush so wrappers watching a pipe see the port immediately
    print(
        f"saga: serving {graph.name.canonical!r} on http://{host}:{actual_port}/",
        flush=True,
    )
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0
