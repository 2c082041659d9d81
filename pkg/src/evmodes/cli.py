"""Command line front end.

A thin client over the service layer: each subcommand builds a request
from an optional JSON config file plus flag overrides (flags win), runs
it in-process by default or against a running server with --server, and
renders the response as CSV or canonical JSON.  One config file can
drive every subcommand; each consumes the keys it knows + "format" and
"out", and keys no subcommand knows are rejected.  Reruns of the same
request produce byte-identical output.

File formats: CSV is a plain header + rows table.  JSON is one
top-level object {columns, meta, rows} holding the same numbers, with
summaries, fits, and report notes carried inside meta.

Exit codes: 0 success, 1 a verification check failed, 2 config or
parameter error, 3 numerical failure (an integral refused to converge).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from . import __version__
from .fields import DENSITIES
from .quadrature import QuadratureError
from .service import app as service
from .service.schemas import (
    FieldsRequest,
    FieldsResponse,
    PropagatorRequest,
    PropagatorResponse,
    ScatterRequest,
    ScatterResponse,
    VelocityRequest,
    VelocityResponse,
    VerifyRequest,
    VerifyResponse,
)
from .tables import Table, table_to_csv, to_canonical_json

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_REQUESTS = {
    "scatter": ScatterRequest,
    "velocity": VelocityRequest,
    "fields": FieldsRequest,
    "propagator": PropagatorRequest,
    "verify": VerifyRequest,
}
_RESPONSES = {
    "scatter": ScatterResponse,
    "velocity": VelocityResponse,
    "fields": FieldsResponse,
    "propagator": PropagatorResponse,
    "verify": VerifyResponse,
}
_RUNNERS = {
    "scatter": service.run_scatter,
    "velocity": service.run_velocity,
    "fields": service.run_fields,
    "propagator": service.run_propagator,
    "verify": service.run_verify,
}
# config keys consumed by the CLI itself rather than a request model
_OUTPUT_KEYS = {"format", "out"}


class ConfigError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="evmodes",
        description="Evanescent TE10 modes in a cut-off rectangular "
                    "waveguide: scattering, energy transport, and the "
                    "two-point correlation function.",
    )
    p.add_argument("--version", action="version",
                   version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", metavar="PATH",
                        help="JSON object with request fields; one file can "
                             "serve every subcommand")
        sp.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output format (default csv; json for verify)")
        sp.add_argument("--out", metavar="PATH",
                        help="write the artifact to this file instead of stdout")
        sp.add_argument("--server", metavar="URL",
                        help="POST the request to a running service instead "
                             "of computing in-process")

    sp = sub.add_parser("scatter",
                        help="scattering coefficients over a frequency grid")
    common(sp)

    sp = sub.add_parser("velocity",
                        help="average energy-velocity profile with a "
                             "subluminality summary")
    common(sp)
    sp.add_argument("--density", choices=DENSITIES,
                    help="energy-density definition (default full)")
    sp.add_argument("--tol", type=float,
                    help="subluminality margin: fail when |v|/c exceeds "
                         "1 + tol")
    sp.add_argument("--threads", type=int,
                    help="worker threads for the sweep")

    sp = sub.add_parser("fields",
                        help="field and density profile over an (x, z) grid")
    common(sp)

    sp = sub.add_parser("propagator",
                        help="two-point correlation function on the t and z "
                             "axes, with decay fits and the closed-form "
                             "comparison")
    common(sp)
    sp.add_argument("--tol", type=float,
                    help="absolute quadrature tolerance on G")

    sp = sub.add_parser("verify",
                        help="run the full verification suite; exit 1 if any "
                             "check fails")
    common(sp)
    sp.add_argument("--tol", type=float,
                    help="quadrature tolerance for the correlation checks")

    sp = sub.add_parser("serve", help="start the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    return p


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    known = set(_OUTPUT_KEYS)
    for model in _REQUESTS.values():
        known |= set(model.model_fields)
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def _build_request(command: str, args, cfg: dict):
    model = _REQUESTS[command]
    body = {k: v for k, v in cfg.items() if k in model.model_fields}
    if command == "velocity":
        if args.density is not None:
            body["density"] = args.density
        if args.tol is not None:
            body["tolerance"] = args.tol
        if args.threads is not None:
            body["threads"] = args.threads
    elif command == "propagator":
        if args.tol is not None:
            body["tol"] = args.tol
    elif command == "verify":
        if args.tol is not None:
            body["propagator_tol"] = args.tol
    return model.model_validate(body)


def _execute(command: str, request, server: str | None):
    if server is None:
        return _RUNNERS[command](request)

    import httpx

    url = server.rstrip("/") + "/" + command
    try:
        resp = httpx.post(url, json=request.model_dump(mode="json"),
                          timeout=600.0)
    except httpx.HTTPError as exc:
        raise ConfigError(f"request to {url} failed: {exc}") from exc
    if resp.status_code == 200:
        return _RESPONSES[command].model_validate(resp.json())
    try:
        detail = resp.json()
    except ValueError:
        detail = {"message": resp.text}
    message = detail.get("message") or json.dumps(detail)
    if resp.status_code == 500 and detail.get("error") == "numerical_failure":
        raise QuadratureError(message)
    raise ConfigError(f"server rejected request ({resp.status_code}): {message}")


def _document(command: str, resp):
    """The (columns, rows, meta) view of a response, shared by both formats."""
    if command == "verify":
        columns = ["name", "passed", "measured", "tolerance"]
        rows = [[c.name, 1.0 if c.passed else 0.0, c.measured, c.tolerance]
                for c in resp.checks]
        meta = {
            "passed": resp.passed,
            "digest": resp.digest,
            "notes": list(resp.notes),
            "details": {c.name: c.detail for c in resp.checks},
        }
        return columns, rows, meta
    tp = resp.table
    meta = dict(tp.meta)
    if command == "velocity":
        meta["summary"] = resp.summary.model_dump(mode="json")
    elif command == "propagator":
        meta["fits"] = [f.model_dump(mode="json") for f in resp.fits]
        meta["closed_form"] = [c.model_dump(mode="json")
                               for c in resp.closed_form]
    return list(tp.columns), tp.rows, meta


def _emit(command: str, resp, fmt: str, out: str | None) -> int:
    columns, rows, meta = _document(command, resp)
    if fmt == "json":
        artifact = to_canonical_json(
            {"columns": columns, "meta": meta, "rows": rows})
        remainder = None
    else:
        artifact = table_to_csv(Table(columns=columns, rows=rows))
        remainder = meta

    if out:
        Path(out).write_text(artifact, newline="\n")
        # keep stdout a single parseable document: the CSV remainder only
        # appears when the table went to a file
        if remainder is not None:
            sys.stdout.write(to_canonical_json(remainder))
    else:
        sys.stdout.write(artifact)

    if command == "verify" and not resp.passed:
        return EXIT_CHECK_FAILED
    if command == "velocity" and not resp.summary.passed:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "serve":
            return _cmd_serve(args)
        cfg = _load_config(args.config)
        fmt = args.format or cfg.get("format") \
            or ("json" if args.command == "verify" else "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {fmt!r}")
        out = args.out or cfg.get("out")
        request = _build_request(args.command, args, cfg)
        response = _execute(args.command, request, args.server)
        return _emit(args.command, response, fmt, out)
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValidationError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (json.JSONDecodeError, OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
