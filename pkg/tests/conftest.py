import http.server
import json
import os
import subprocess
import threading
import time
from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"

GIT_ENV_BASE = {
    "GIT_AUTHOR_NAME": "Ada Lovelace",
    "GIT_AUTHOR_EMAIL": "ada@example.org",
    "GIT_AUTHOR_DATE": "1112911993 +0200",
    "GIT_COMMITTER_NAME": "Grace Hopper",
    "GIT_COMMITTER_EMAIL": "grace@example.org",
    "GIT_COMMITTER_DATE": "1112912053 -0430",
    # keep user/system config out of the oracle
    "GIT_CONFIG_GLOBAL": os.devnull,
    "GIT_CONFIG_SYSTEM": os.devnull,
    "GIT_CONFIG_NOSYSTEM": "1",
    "HOME": os.devnull,
}


def run_git(args, cwd, env_extra=None, data=None):
    """Run git with a pinned identity/config and return stripped stdout."""
    env = dict(os.environ)
    env.update(GIT_ENV_BASE)
    if env_extra:
        env.update(env_extra)
    result = subprocess.run(
        ["git", *args],
        cwd=cwd,
        env=env,
        input=data,
        capture_output=True,
        check=True,
    )
    return result.stdout.decode().strip()


@pytest.fixture
def scratch_repo(tmp_path):
    """Empty initialized git repository in a temp dir."""
    repo = tmp_path / "repo"
    repo.mkdir()
    run_git(["init", "-q"], cwd=repo)
    return repo


class _MockArchiveHandler(http.server.BaseHTTPRequestHandler):
    server_version = "MockArchive/1.0"

    def _serve(self):
        self.server.requests.append((self.command, self.path))
        script = self.server.script.get((self.command, self.path))
        if script is None:
            self._respond(500, {"error": f"unscripted {self.command} {self.path}"})
            return
        if not script:
            self._respond(500, {"error": f"script for {self.command} {self.path} exhausted"})
            return
        step = script.pop(0)
        delay = step.get("delay")
        if delay:
            time.sleep(delay)
        body = step.get("body")
        raw = step.get("raw")
        if raw is not None:
            payload = raw if isinstance(raw, bytes) else raw.encode()
        else:
            payload = json.dumps(body).encode()
        self.send_response(step.get("status", 200))
        self.send_header("Content-Type", step.get("content_type", "application/json"))
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def _respond(self, status, body):
        payload = json.dumps(body).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    do_GET = _serve
    do_POST = _serve

    def log_message(self, *args):
        pass


class MockArchive:
    """Scripted HTTP double for the archive API.

    ``script`` maps (method, path) to a list of response steps, consumed
    one per request; every request is recorded in ``requests``.
    """

    def __init__(self):
        self._server = http.server.ThreadingHTTPServer(("127.0.0.1", 0), _MockArchiveHandler)
        self._server.script = {}
        self._server.requests = []
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()

    @property
    def api_base(self):
        host, port = self._server.server_address
        return f"http://{host}:{port}/api/1"

    @property
    def requests(self):
        return self._server.requests

    def expect(self, method, path, responses):
        self._server.script[(method, path)] = list(responses)

    def close(self):
        self._server.shutdown()
        self._server.server_close()


@pytest.fixture
def mock_archive():
    server = MockArchive()
    yield server
    server.close()
