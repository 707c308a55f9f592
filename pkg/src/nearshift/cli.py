"""Command-line front end: a thin HTTP client of the service app.

Requests are posted to the in-process app by default; --url (or the
NEARSHIFT_URL variable) targets a running server instead, so the same
invocations work locally and against a deployment.  Exit codes: 0 when the
report's aggregate verdict passes, 1 when it fails, 2 on precondition or
input errors, 3 on numeric errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import httpx

from .runner import canonical_json

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_PRECONDITION = 2
EXIT_NUMERIC = 3


def _parse_complex(text: str):
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return [float(parts[0]), 0.0]
        return [float(parts[0]), float(parts[1])]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad complex literal {text!r}") from exc


def _parse_blaschke(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"bad Blaschke JSON: {exc}") from exc
    zeros = data.get("zeros", [])
    return {
        "origin_multiplicity": data.get("origin_multiplicity", 0),
        "zeros": zeros,
        "normalized": data.get("normalized", True),
    }


def _load_series(path: str) -> dict:
    with open(path) if path != "-" else sys.stdin as fh:
        return json.load(fh)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nearshift",
        description="Verification scenarios for block decompositions and "
        "nearly invariant subspaces of Blaschke multipliers.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--url", default=None, help="remote service URL (default: in-process)")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--timeout", type=float, default=600.0)
    common.add_argument(
        "--strict",
        action="store_true",
        default=None,
        help="escalate truncation warnings to errors (NEARSHIFT_STRICT=1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name: str, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("decompose", help="block coordinates of a series")
    p.add_argument("--blaschke", type=_parse_blaschke, required=True)
    p.add_argument("--input", required=True, help="series JSON file (- for stdin)")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--levels", type=int, default=None)

    p = add_parser("norms", help="norm of a series under a chosen variant")
    p.add_argument("--input", required=True)
    p.add_argument("--variant", default="alpha-standard",
                   choices=["alpha-standard", "wold-one", "wold-two"])
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--blaschke", type=_parse_blaschke, default=None)

    p = add_parser("near-check", help="near-invariance test of a subspace")
    p.add_argument("--blaschke", type=_parse_blaschke, required=True)
    p.add_argument("--degree", type=int, default=64)
    p.add_argument("--generators", default=None,
                   help="JSON file with a list of series (the subspace generators)")
    p.add_argument("--subspace", default=None, help="JSON file with a subspace frame")
    p.add_argument("--a", type=_parse_complex, default=None,
                   help="build the worked example subspace with this parameter")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--literal", action="store_true")
    p.add_argument("--guard", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-8)

    p = add_parser("factorize", help="factor subspace elements through the defect frame")
    p.add_argument("--blaschke", type=_parse_blaschke, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--a", type=_parse_complex, default=[0.5, 0.0])
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--levels", type=int, default=8)
    p.add_argument("--degree", type=int, default=64)
    p.add_argument("--input", default=None, help="series JSON for one specific element")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)

    p = add_parser("example-sec2", help="run the worked scenario end to end")
    p.add_argument("--a", type=_parse_complex, default=[0.5, 0.0])
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--degree", type=int, default=32)
    p.add_argument("--literal", action="store_true")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)

    p = add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--blaschke", type=_parse_blaschke, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--levels", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--s", type=float, default=None)

    add_parser("suites", help="list available suites")

    p = add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _request_body(args: argparse.Namespace) -> tuple[str, str, dict | None]:
    """Map parsed arguments to (method, path, body)."""
    cmd = args.command
    if cmd == "suites":
        return "GET", "/suites", None
    if cmd == "decompose":
        body = {
            "blaschke": args.blaschke,
            "series": _load_series(args.input),
            "degree": args.degree,
            "levels": args.levels,
        }
        return "POST", "/decompose", body
    if cmd == "norms":
        return "POST", "/norms", {
            "series": _load_series(args.input),
            "variant": args.variant,
            "alpha": args.alpha,
            "N": args.N,
            "blaschke": args.blaschke,
        }
    if cmd == "near-check":
        body = {
            "blaschke": args.blaschke,
            "degree": args.degree,
            "guard": args.guard,
            "tol": args.tol,
        }
        if args.generators:
            body["generators"] = _load_series(args.generators)
        elif args.subspace:
            body["subspace"] = _load_series(args.subspace)
        elif args.a is not None:
            body["example"] = {
                "a": args.a,
                "m": args.m,
                "levels": args.levels,
                "literal_positive_powers": args.literal,
            }
        return "POST", "/near-check", body
    if cmd == "factorize":
        body = {
            "blaschke": args.blaschke,
            "alpha": args.alpha,
            "s": args.s,
            "a": args.a,
            "m": args.m,
            "levels": args.levels,
            "degree": args.degree,
            "trials": args.trials,
            "seed": args.seed,
        }
        if args.input:
            body["series"] = _load_series(args.input)
        return "POST", "/factorize", body
    if cmd == "example-sec2":
        return "POST", "/example-sec2", {
            "a": args.a,
            "m": args.m,
            "levels": args.levels,
            "degree": args.degree,
            "literal_positive_powers": args.literal,
            "trials": args.trials,
            "seed": args.seed,
        }
    if cmd == "verify":
        return "POST", "/verify", {
            "suite": args.suite,
            "blaschke": args.blaschke,
            "alpha": args.alpha,
            "degree": args.degree,
            "levels": args.levels,
            "m": args.m,
            "trials": args.trials,
            "seed": args.seed,
            "s": args.s,
        }
    raise SystemExit(2)


def _client(url: str | None, timeout: float) -> httpx.Client:
    if url:
        return httpx.Client(base_url=url, timeout=timeout)
    # in-process client against the same ASGI app the server exposes
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_PASS
    if args.strict is None and os.environ.get("NEARSHIFT_STRICT", "") == "1":
        args.strict = True
    try:
        method, path, body = _request_body(args)
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_PRECONDITION
    if body is not None and args.strict is not None:
        body["strict"] = args.strict
    if body is not None:
        body = {k: v for k, v in body.items() if v is not None}
    try:
        with _client(args.url, args.timeout) as client:
            response = (
                client.get(path) if method == "GET" else client.post(path, json=body)
            )
    except httpx.HTTPError as exc:
        sys.stderr.write(f"transport error: {exc}\n")
        return EXIT_NUMERIC
    try:
        document = response.json()
    except json.JSONDecodeError:
        sys.stderr.write(f"malformed response (status {response.status_code})\n")
        return EXIT_NUMERIC
    _emit(canonical_json(document), args.out)
    if response.status_code in (400, 422):
        return EXIT_PRECONDITION
    if response.status_code >= 500:
        return EXIT_NUMERIC
    if response.status_code != 200:
        return EXIT_PRECONDITION
    if isinstance(document, dict) and "aggregate_pass" in document:
        return EXIT_PASS if document["aggregate_pass"] else EXIT_FAIL
    return EXIT_PASS


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
