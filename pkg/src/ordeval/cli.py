"""Command line interface: validate, evaluate, whatif, serve.

Exit codes: 0 success, 1 validation failure, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import InvalidPatchError, OrdevalError, ParseError, ValidationError
from .session import evaluate, report_to_json, report_to_text
from .storage import load_session
from .whatif import delta_to_json, delta_to_text, parse_patch, what_if


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordeval",
        description="Evaluate proposals on a linguistic scale and aggregate expert opinions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="check a session file and report every problem")
    validate.add_argument("--session", type=Path, required=True, help="session file path")

    ev = sub.add_parser("evaluate", help="compute unit scores, overall grades, and the ranking")
    ev.add_argument("--session", type=Path, required=True)
    ev.add_argument("--output", choices=("table", "json"), default="table")

    wi = sub.add_parser("whatif", help="preview a patch without touching the session file")
    wi.add_argument("--session", type=Path, required=True)
    wi.add_argument("--patch", type=Path, required=True, help="patch file (importances/scores/quantifier)")
    wi.add_argument("--output", choices=("table", "json"), default="table")

    serve = sub.add_parser("serve", help="run the HTTP service and decision panel")
    serve.add_argument("--session", type=Path, required=True)
    serve.add_argument("--listen", default="127.0.0.1:8000", help="host:port to bind")
    serve.add_argument("--static", type=Path, default=None, help="panel bundle directory served at /")
    return parser


def _load(path: Path):
    return load_session(path.read_bytes())


def _cmd_validate(args: argparse.Namespace) -> int:
    session = _load(args.session)
    print(
        f"session OK: {len(session.proposals)} proposal(s), "
        f"{len(session.experts)} expert(s), {len(session.criteria)} criteria"
    )
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    report = evaluate(_load(args.session))
    if args.output == "json":
        print(json.dumps(report_to_json(report), indent=2, ensure_ascii=False))
    else:
        print(report_to_text(report))
    return 0


def _cmd_whatif(args: argparse.Namespace) -> int:
    session = _load(args.session)
    try:
        patch_doc = json.loads(args.patch.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"patch file is not valid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    result = what_if(session, parse_patch(patch_doc))
    if args.output == "json":
        print(
            json.dumps(
                {"report": report_to_json(result.report), "delta": delta_to_json(result.delta)},
                indent=2,
                ensure_ascii=False,
            )
        )
    else:
        print(delta_to_text(result.delta))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import SessionStore, create_app

    host, _, port_text = args.listen.rpartition(":")
    if not host or not port_text.isdigit():
        print(f"error: --listen expects host:port, got {args.listen!r}", file=sys.stderr)
        return 1
    static = args.static
    if static is None:
        bundled = Path(__file__).resolve().parent.parent.parent.parent / "frontend" / "dist"
        static = bundled if bundled.is_dir() else None
    store = SessionStore(path=args.session)
    store.load_file()
    app = create_app(store, static_dir=static)
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "evaluate": _cmd_evaluate,
    "whatif": _cmd_whatif,
    "serve": _cmd_serve,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, ValidationError, InvalidPatchError) as exc:
        for line in _diagnostics(exc):
            print(line, file=sys.stderr)
        return 1
    except OrdevalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _diagnostics(exc: OrdevalError) -> list[str]:
    problems = getattr(exc, "problems", None)
    if problems:
        return [f"error: {p}" for p in problems]
    return [f"error: {exc}"]


if __name__ == "__main__":
    raise SystemExit(main())
