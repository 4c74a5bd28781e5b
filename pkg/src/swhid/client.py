"""HTTP client for the public archive API: save requests and resolution.

Endpoints used:

* ``POST {api_base}/origin/save/{visit_type}/url/{origin}/`` — request
  archival of an origin ("save code now").
* ``GET`` on the same resource — current status of past requests.
* ``GET {api_base}/resolve/{swhid}/`` — does the archive know this object?

Payload parsing is total: unknown fields are ignored, missing required
fields raise :class:`UnexpectedPayload`.  Only idempotent GETs are ever
retried, exactly once.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import requests

from .model import CoreIdentifier, MalformedOrigin, is_valid_origin

__all__ = [
    "DEFAULT_API_BASE",
    "VISIT_TYPES",
    "SaveRequest",
    "SaveStatus",
    "ArchiveClient",
    "ArchiveError",
    "NetworkError",
    "ApiRejected",
    "RateLimited",
    "NotFound",
    "UnexpectedPayload",
]

DEFAULT_API_BASE = "https://archive.softwareheritage.org/api/1"

# VCS types the archive crawls on request
VISIT_TYPES = ("git", "svn", "hg")

REQUEST_STATES = ("accepted", "rejected", "pending")
TASK_STATES = ("unknown", "scheduled", "running", "succeeded", "failed")

_VISIT_TYPE_RE = re.compile(r"[a-z][a-z0-9-]*")


class ArchiveError(Exception):
    """Base for archive API failures."""


class NetworkError(ArchiveError):
    """Transport failure, timeout, or server-side (5xx) error."""


class ApiRejected(ArchiveError):
    """The API refused the request (4xx with a reason)."""

    def __init__(self, message: str, reason: str | None = None):
        super().__init__(message)
        self.reason = reason or message


class RateLimited(ArchiveError):
    """HTTP 429; retry later."""


class NotFound(ArchiveError):
    """No such resource (HTTP 404)."""


class UnexpectedPayload(ArchiveError):
    """Response body is not the JSON shape the API documents."""


@dataclass(frozen=True)
class SaveRequest:
    """An origin to archive and the VCS type to crawl it with."""

    visit_type: str
    origin: str

    def __post_init__(self):
        if not _VISIT_TYPE_RE.fullmatch(self.visit_type):
            raise ValueError(f"invalid visit type {self.visit_type!r}")
        if not is_valid_origin(self.origin):
            raise MalformedOrigin(f"not a valid origin URL: {self.origin!r}")


@dataclass(frozen=True)
class SaveStatus:
    """Where a save request stands, as reported by the archive."""

    request_state: str  # accepted | rejected | pending
    task_state: str = "unknown"  # unknown | scheduled | running | succeeded | failed
    request_date: str | None = None
    visit_date: str | None = None
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "request_state": self.request_state,
            "task_state": self.task_state,
            "request_date": self.request_date,
            "visit_date": self.visit_date,
            "reason": self.reason,
        }


# server task-state strings that collapse onto our vocabulary
_TASK_STATE_MAP = {
    "not created": "unknown",
    "not yet scheduled": "unknown",
    "scheduled": "scheduled",
    "running": "running",
    "succeeded": "succeeded",
    "failed": "failed",
}


def _status_from_payload(payload) -> SaveStatus:
    if isinstance(payload, list):
        if not payload:
            raise UnexpectedPayload("empty save-request list in response")
        payload = payload[0]  # newest request first
    if not isinstance(payload, dict):
        raise UnexpectedPayload(f"expected a JSON object, got {type(payload).__name__}")
    request_state = payload.get("save_request_status")
    if request_state not in REQUEST_STATES:
        raise UnexpectedPayload(f"missing or unknown save_request_status: {request_state!r}")
    task_state = _TASK_STATE_MAP.get(payload.get("save_task_status"), "unknown")
    return SaveStatus(
        request_state=request_state,
        task_state=task_state,
        request_date=payload.get("save_request_date"),
        visit_date=payload.get("visit_date"),
        reason=payload.get("note"),
    )


@dataclass
class ArchiveClient:
    """Blocking API client; a plain configuration value, safe to share."""

    api_base: str = DEFAULT_API_BASE
    timeout: float = 30.0
    allow_any_visit_type: bool = False
    session: requests.Session = field(default_factory=requests.Session, repr=False)

    def _save_url(self, req: SaveRequest) -> str:
        return f"{self.api_base.rstrip('/')}/origin/save/{req.visit_type}/url/{req.origin}/"

    def _check_visit_type(self, req: SaveRequest) -> None:
        if not self.allow_any_visit_type and req.visit_type not in VISIT_TYPES:
            raise ValueError(
                f"visit type {req.visit_type!r} not in {'/'.join(VISIT_TYPES)} "
                "(pass allow_any_visit_type=True to send it anyway)"
            )

    def request_save(self, req: SaveRequest) -> SaveStatus:
        """Submit a save request.  Never retried: POST is not idempotent."""
        self._check_visit_type(req)
        response = self._send("POST", self._save_url(req), retry=False)
        return _status_from_payload(self._json(response))

    def poll_save(self, req: SaveRequest) -> SaveStatus:
        """Status of the most recent save request for this origin."""
        self._check_visit_type(req)
        response = self._send("GET", self._save_url(req), retry=True)
        return _status_from_payload(self._json(response))

    def check_resolves(self, core: CoreIdentifier) -> bool:
        """True if the archive knows the object, False if it does not.

        Server or transport trouble raises :class:`NetworkError`; absence of
        proof is never reported as absence.
        """
        url = f"{self.api_base.rstrip('/')}/resolve/{core}/"
        try:
            response = self._send("GET", url, retry=True)
        except NotFound:
            return False
        return response.status_code == 200

    def _send(self, method: str, url: str, retry: bool) -> requests.Response:
        attempts = 2 if retry else 1
        last_error: NetworkError | None = None
        for _ in range(attempts):
            try:
                response = self.session.request(method, url, timeout=self.timeout)
            except requests.RequestException as exc:
                last_error = NetworkError(f"{method} {url} failed: {exc}")
                continue
            if response.status_code >= 500:
                last_error = NetworkError(
                    f"{method} {url} failed: server returned {response.status_code}"
                )
                continue
            return self._check(response)
        assert last_error is not None
        raise last_error

    def _check(self, response: requests.Response) -> requests.Response:
        code = response.status_code
        if code == 429:
            raise RateLimited(f"rate limited by {response.url}")
        if code == 404:
            raise NotFound(f"no such resource: {response.url}")
        if 400 <= code < 500:
            raise ApiRejected(
                f"API rejected the request ({code})", reason=self._reason(response)
            )
        return response

    @staticmethod
    def _reason(response: requests.Response) -> str | None:
        try:
            body = response.json()
        except ValueError:
            return response.text.strip() or None
        if isinstance(body, dict):
            return body.get("reason") or body.get("exception") or None
        return None

    @staticmethod
    def _json(response: requests.Response):
        try:
            return response.json()
        except ValueError as exc:
            raise UnexpectedPayload(f"response is not JSON: {exc}") from exc
