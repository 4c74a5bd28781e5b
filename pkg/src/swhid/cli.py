"""``swhid`` command line tool.

Subcommands map onto the library one-to-one: parse/validate identifiers,
compute ids for files, trees and checkouts, build archive URLs and citation
snippets, drive save-code-now requests, and audit a repository for archival
readiness.

Exit codes: 0 success, 1 validation failure (bad identifier, rejected
request, audit not ready), 2 usage error, 3 I/O or network failure.
Only ``save``, ``status`` and ``cite --check`` ever touch the network.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import audit as audit_mod
from . import client as client_mod
from . import gitrefs, hashing, model, resolve

EXIT_INVALID = 1
EXIT_UNAVAILABLE = 3


def _echo_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=False))


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _endpoints(browse_base: str, origin_base: str) -> resolve.ArchiveEndpoints:
    try:
        return resolve.ArchiveEndpoints(browse_base, origin_base)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _client(api_base: str, offline: bool, timeout: float = 30.0) -> client_mod.ArchiveClient:
    if offline:
        _fail("network use disabled (--offline / SWHID_OFFLINE)", EXIT_UNAVAILABLE)
    return client_mod.ArchiveClient(api_base=api_base, timeout=timeout)


browse_base_option = click.option(
    "--browse-base",
    envvar="SWHID_BROWSE_BASE",
    default=resolve.DEFAULT_BROWSE_PREFIX,
    show_default=True,
    help="Archive browse URL prefix.",
)
origin_base_option = click.option(
    "--origin-base",
    envvar="SWHID_ORIGIN_BROWSE_BASE",
    default=resolve.DEFAULT_ORIGIN_BROWSE_PREFIX,
    show_default=True,
    help="Archive origin-browse URL prefix.",
)
api_base_option = click.option(
    "--api-base",
    envvar="SWHID_API_BASE",
    default=client_mod.DEFAULT_API_BASE,
    show_default=True,
    help="Archive API base URL.",
)
offline_option = click.option(
    "--offline",
    envvar="SWHID_OFFLINE",
    is_flag=True,
    help="Refuse to open network connections (exit 3 instead).",
)
json_option = click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")


@click.group()
def main():
    """Work with SWHID persistent identifiers."""


@main.command("parse")
@click.argument("text", required=False)
@json_option
def cmd_parse(text: str | None, as_json: bool):
    """Validate an identifier (from the argument, or stdin if omitted)."""
    if text is None or text == "-":
        text = sys.stdin.read()
    text = text.strip()
    report = model.validate(text)

    if as_json:
        payload = report.to_dict()
        if report.identifier is not None:
            qid = report.identifier
            payload["type"] = qid.core.object_type.name.lower()
            payload["object_id"] = qid.core.object_id
            payload["origin"] = qid.origin
            payload["lines"] = str(qid.lines) if qid.lines else None
        _echo_json(payload)
    else:
        for violation in report.violations:
            click.echo(
                f"{violation.severity}: {violation.rule} at offset {violation.offset}: "
                f"{violation.message}",
                err=True,
            )
        if report.identifier is not None:
            qid = report.identifier
            click.echo(f"type: {qid.core.object_type.name.lower()}")
            click.echo(f"object_id: {qid.core.object_id}")
            if qid.origin is not None:
                click.echo(f"origin: {qid.origin}")
            if qid.lines is not None:
                click.echo(f"lines: {qid.lines}")
            click.echo(f"canonical: {qid}")
    if not report.ok:
        sys.exit(EXIT_INVALID)


@main.command("identify")
@click.argument("path", required=False, type=click.Path(path_type=Path))
@click.option(
    "--type",
    "obj_type",
    type=click.Choice(["auto", "cnt", "dir", "rev"]),
    default="auto",
    show_default=True,
    help="What to compute; auto picks cnt for files and dir for directories.",
)
@click.option("--rev", "rev_flag", is_flag=True, help="Shortcut for --type rev.")
@click.option(
    "--exclude",
    multiple=True,
    metavar="GLOB",
    help="Skip tree entries matching this glob (repeatable).",
)
@click.option("--stdin", "use_stdin", is_flag=True, help="Hash standard input as content.")
@json_option
def cmd_identify(path, obj_type, rev_flag, exclude, use_stdin, as_json):
    """Compute the identifier of a file, directory tree, or checkout HEAD."""
    if rev_flag:
        obj_type = "rev"
    if use_stdin:
        if obj_type not in ("auto", "cnt"):
            raise click.UsageError("--stdin only hashes content")
        core = model.CoreIdentifier(model.ObjectType.CONTENT, hashing.content_id(sys.stdin.buffer.read()))
        _emit_identity(core, "<stdin>", as_json)
        return

    if path is None:
        path = Path(".")
    try:
        if obj_type == "rev":
            core = model.CoreIdentifier(model.ObjectType.REVISION, gitrefs.resolve_head(path))
        elif obj_type == "cnt" or (obj_type == "auto" and path.is_file()):
            core = model.CoreIdentifier(model.ObjectType.CONTENT, hashing.content_id(path.read_bytes()))
        elif obj_type == "dir" or (obj_type == "auto" and path.is_dir()):
            core = model.CoreIdentifier(
                model.ObjectType.DIRECTORY, hashing.directory_id_from_path(path, exclude=exclude)
            )
        else:
            _fail(f"no such file or directory: {path}", EXIT_UNAVAILABLE)
    except gitrefs.GitRepoError as exc:
        _fail(str(exc), EXIT_INVALID)
    except (IsADirectoryError, NotADirectoryError) as exc:
        _fail(str(exc), EXIT_INVALID)
    except hashing.HashingError as exc:
        _fail(str(exc), EXIT_INVALID)
    except OSError as exc:
        _fail(str(exc), EXIT_UNAVAILABLE)
    _emit_identity(core, str(path), as_json)


def _emit_identity(core: model.CoreIdentifier, path: str, as_json: bool) -> None:
    if as_json:
        _echo_json(
            {"path": path, "type": core.object_type.name.lower(), "swhid": str(core)}
        )
    else:
        click.echo(str(core))


@main.command("url")
@click.argument("swhid", required=False)
@click.option("--origin", "origin", metavar="URL", help="Build an origin browse URL instead.")
@click.option("--encode", is_flag=True, help="Percent-encode the identifier/origin part.")
@browse_base_option
@origin_base_option
@json_option
def cmd_url(swhid, origin, encode, browse_base, origin_base, as_json):
    """Print the archive URL for an identifier or an origin."""
    endpoints = _endpoints(browse_base, origin_base)
    if (swhid is None) == (origin is None):
        raise click.UsageError("pass exactly one of SWHID or --origin URL")
    try:
        if origin is not None:
            url = resolve.origin_url(origin, endpoints, encode=encode)
        else:
            qid = model.parse(swhid.strip())
            url = resolve.resolve_url(qid, endpoints, encode=encode)
    except (model.SwhidParseError, model.MalformedOrigin) as exc:
        _fail(str(exc), EXIT_INVALID)
    if as_json:
        _echo_json({"url": url})
    else:
        click.echo(url)


@main.command("cite")
@click.argument("swhid")
@click.option("--label", default=None, help="Link text (defaults to the identifier).")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["latex", "markdown"]),
    default="latex",
    show_default=True,
)
@click.option("--macros", is_flag=True, help="Also emit the LaTeX macro definitions.")
@click.option("--check", is_flag=True, help="Ask the archive whether the id resolves (network).")
@click.option("--encode", is_flag=True, help="Percent-encode URLs in markdown output.")
@browse_base_option
@origin_base_option
@api_base_option
@offline_option
@json_option
def cmd_cite(swhid, label, fmt, macros, check, encode, browse_base, origin_base, api_base, offline, as_json):
    """Emit a citation snippet for an identifier."""
    endpoints = _endpoints(browse_base, origin_base)
    try:
        qid = model.parse(swhid.strip())
    except model.SwhidParseError as exc:
        _fail(str(exc), EXIT_INVALID)
    if label is None:
        label = str(qid)

    known = None
    if check:
        archive = _client(api_base, offline)
        try:
            known = archive.check_resolves(qid.core)
        except client_mod.ArchiveError as exc:
            _fail(str(exc), EXIT_UNAVAILABLE)
        if not known:
            click.echo(
                f"warning: {qid.core} is not known to the archive; "
                "request archival of its origin first",
                err=True,
            )

    if fmt == "latex":
        snippet = resolve.latex_citation(qid, label)
        if macros:
            snippet = resolve.latex_macros() + "\n" + snippet
    else:
        snippet = resolve.markdown_citation(qid, label, endpoints, encode=encode)

    if as_json:
        _echo_json({"format": fmt, "snippet": snippet, "known": known})
    else:
        click.echo(snippet)


def _echo_status(req: client_mod.SaveRequest, status: client_mod.SaveStatus, as_json: bool) -> None:
    if as_json:
        payload = {"visit_type": req.visit_type, "origin": req.origin}
        payload.update(status.to_dict())
        _echo_json(payload)
    else:
        click.echo(f"request: {status.request_state}")
        click.echo(f"task: {status.task_state}")
        if status.visit_date:
            click.echo(f"visit_date: {status.visit_date}")
        if status.reason:
            click.echo(f"reason: {status.reason}")


def _save_request(visit_type: str, origin: str) -> client_mod.SaveRequest:
    try:
        return client_mod.SaveRequest(visit_type, origin)
    except (model.MalformedOrigin, ValueError) as exc:
        _fail(str(exc), EXIT_INVALID)


@main.command("save")
@click.argument("visit_type", metavar="VISIT_TYPE")
@click.argument("origin", metavar="ORIGIN_URL")
@click.option("--force", is_flag=True, help="Submit even if a request is already on record.")
@click.option(
    "--allow-any-visit-type",
    is_flag=True,
    help="Pass visit types other than git/svn/hg through to the API.",
)
@api_base_option
@offline_option
@json_option
def cmd_save(visit_type, origin, force, allow_any_visit_type, api_base, offline, as_json):
    """Ask the archive to save ORIGIN_URL (idempotent: polls first)."""
    req = _save_request(visit_type, origin)
    archive = _client(api_base, offline)
    archive.allow_any_visit_type = allow_any_visit_type
    try:
        status = None
        if not force:
            try:
                status = archive.poll_save(req)
            except client_mod.NotFound:
                status = None
        if status is None:
            status = archive.request_save(req)
        _echo_status(req, status, as_json)
        if status.request_state == "rejected":
            sys.exit(EXIT_INVALID)
    except client_mod.ApiRejected as exc:
        _fail(f"save request rejected: {exc.reason}", EXIT_INVALID)
    except client_mod.ArchiveError as exc:
        _fail(str(exc), EXIT_UNAVAILABLE)
    except ValueError as exc:
        _fail(str(exc), EXIT_INVALID)


@main.command("status")
@click.argument("visit_type", metavar="VISIT_TYPE")
@click.argument("origin", metavar="ORIGIN_URL")
@click.option(
    "--allow-any-visit-type",
    is_flag=True,
    help="Pass visit types other than git/svn/hg through to the API.",
)
@api_base_option
@offline_option
@json_option
def cmd_status(visit_type, origin, allow_any_visit_type, api_base, offline, as_json):
    """Report the archival status of a previously requested origin."""
    req = _save_request(visit_type, origin)
    archive = _client(api_base, offline)
    archive.allow_any_visit_type = allow_any_visit_type
    try:
        status = archive.poll_save(req)
    except client_mod.NotFound:
        _fail(f"no save request on record for {origin}", EXIT_INVALID)
    except client_mod.ApiRejected as exc:
        _fail(f"status request rejected: {exc.reason}", EXIT_INVALID)
    except client_mod.ArchiveError as exc:
        _fail(str(exc), EXIT_UNAVAILABLE)
    except ValueError as exc:
        _fail(str(exc), EXIT_INVALID)
    _echo_status(req, status, as_json)


@main.command("audit")
@click.argument("path", required=False, type=click.Path(path_type=Path))
@json_option
def cmd_audit(path, as_json):
    """Check a source tree for archival readiness (exit 0 iff ready)."""
    if path is None:
        path = Path(".")
    try:
        report = audit_mod.audit(path)
    except OSError as exc:
        _fail(str(exc), EXIT_UNAVAILABLE)
    if as_json:
        _echo_json(report.to_dict())
    else:
        for check in report.checks:
            click.echo(f"{check.status:8s} {check.check}: {check.note}")
        click.echo(f"overall: {'ready' if report.ready else 'not ready'}")
    if not report.ready:
        sys.exit(EXIT_INVALID)


if __name__ == "__main__":
    main()
