"""Command-line driver: ingest, annotate, index, export, serve, eval.

Every command writes exactly one JSON result object to stdout; logs go
to stderr. Exit codes: 0 ok, 1 validation, 2 replay miss, 3 provider.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..annotator import load_persona
from ..canonical import canonical_json
from ..config import GATEWAY_MODES, load_config
from ..corpus import ingest_contract
from ..errors import (
    ClauseLensError,
    InvalidInput,
    MalformedSource,
    NotFound,
    ProviderError,
    ReplayMiss,
    SchemaError,
    UnknownFormat,
    ValidationError,
)
from ..runner import (
    annotate_contract,
    index_contract,
    make_gateway,
    pregenerate_scope,
)
from ..service import BundleStore, EventLog, ServiceState, create_app
from .evalharness import load_fixture, run_eval
from .htmlreport import render_report

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_REPLAY_MISS = 2
EXIT_PROVIDER = 3

_VALIDATION_ERRORS = (ValidationError, MalformedSource, UnknownFormat,
                      SchemaError, InvalidInput, NotFound,
                      FileNotFoundError, ValueError)

logger = logging.getLogger(__name__)


def _emit(result: dict) -> None:
    sys.stdout.write(json.dumps(result, indent=2, sort_keys=True) + "\n")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--mode", choices=GATEWAY_MODES)
    parser.add_argument("--cache-dir")
    parser.add_argument("--store-dir")
    parser.add_argument("--scripted", action="store_true", default=None,
                        help="use the deterministic offline provider")


def _config_from(args: argparse.Namespace):
    return load_config(
        config_file=args.config,
        mode=getattr(args, "mode", None),
        cache_dir=getattr(args, "cache_dir", None),
        store_dir=getattr(args, "store_dir", None),
        scripted_provider=getattr(args, "scripted", None),
    )


def cmd_ingest(args: argparse.Namespace) -> dict:
    manifest, policies = ingest_contract(args.contract_dir)
    round_trip = all(p.reconstruct() == p.normalized.text for p in policies)
    if not round_trip:
        raise ValidationError("chunk round-trip failed")
    return {
        "contract_id": manifest.contract_id,
        "policies": len(policies),
        "sections": sum(len(p.sections) for p in policies),
        "chunks": sum(len(p.chunks) for p in policies),
        "oversized_chunks": sum(
            1 for p in policies for c in p.chunks if c.oversized),
        "round_trip": round_trip,
    }


def cmd_annotate(args: argparse.Namespace) -> dict:
    config = _config_from(args)
    gateway = make_gateway(config)
    persona = load_persona(args.persona)
    bundle = annotate_contract(args.contract_dir, persona, gateway,
                               max_workers=args.workers)
    store = BundleStore(config.store_dir)
    content_hash = store.save(bundle)
    return {
        "contract_id": bundle["contract_id"],
        "content_hash": content_hash,
        "policies": len(bundle["policies"]),
        "snippets": sum(len(p["snippets"]) for p in bundle["policies"]),
        "chunk_errors": sum(len(p["errors"]) for p in bundle["policies"]),
        "store_path": str(Path(config.store_dir)
                          / f"{bundle['contract_id']}.json"),
    }


def cmd_index(args: argparse.Namespace) -> dict:
    config = _config_from(args)
    gateway = make_gateway(config)
    store = BundleStore(config.store_dir)
    bundle = store.load(args.contract)
    index = index_contract(bundle, gateway, store)
    result = {
        "contract_id": args.contract,
        "entries": len(index),
        "dimension": index.dimension,
        "path": str(store.index_path(args.contract)),
    }
    if args.pregenerate_scope:
        result["scope_results_generated"] = pregenerate_scope(
            bundle, gateway, store, retrieval_k=config.retrieval_k)
    return result


def cmd_export(args: argparse.Namespace) -> dict:
    config = _config_from(args)
    store = BundleStore(config.store_dir)
    bundle = store.load(args.contract)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        out.write_text(canonical_json(bundle), "utf-8")
    else:
        out.write_text(render_report(bundle, config.color_hexes), "utf-8")
    return {
        "contract_id": args.contract,
        "format": args.format,
        "path": str(out),
        "content_hash": bundle.get("content_hash", ""),
    }


def cmd_serve(args: argparse.Namespace) -> dict:
    import uvicorn

    config = _config_from(args)
    gateway = make_gateway(config)
    store = BundleStore(config.store_dir)
    if args.contract and args.contract not in store.contract_ids():
        raise NotFound(f"no bundle for contract {args.contract!r}")
    events = EventLog(Path(config.store_dir) / "events")
    state = ServiceState(store, events, gateway,
                         retrieval_k=config.retrieval_k)
    app = create_app(state, ui_dir=args.ui_dir)
    logger.info("serving %d contract(s) on port %d",
                len(store.contract_ids()), args.port)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return {"status": "stopped"}


def cmd_eval(args: argparse.Namespace) -> dict:
    bundle_path = Path(args.bundle)
    if bundle_path.is_file():
        bundle = json.loads(bundle_path.read_text("utf-8"))
    else:
        config = _config_from(args)
        bundle = BundleStore(config.store_dir).load(args.bundle)
    fixture = load_fixture(args.fixtures)
    return run_eval(bundle, fixture)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clauselens",
        description="Contract annotation pipeline and reading service.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and segment a contract")
    p.add_argument("--contract-dir", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("annotate", help="produce an annotation bundle")
    p.add_argument("--contract-dir", required=True)
    p.add_argument("--persona", required=True, help="persona JSON file")
    p.add_argument("--workers", type=int, default=4)
    _add_common(p)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("index", help="build the contract vector index")
    p.add_argument("--contract", required=True)
    p.add_argument("--pregenerate-scope", action="store_true",
                   help="batch-generate phrase scope results now")
    _add_common(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("export", help="export a bundle artifact")
    p.add_argument("--contract", required=True)
    p.add_argument("--format", choices=("json", "html-report"),
                   default="json")
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the HTTP reading service")
    p.add_argument("--contract", help="require this contract to exist")
    p.add_argument("--port", type=int, default=8400)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", help="static frontend build to mount at /app")
    _add_common(p)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("eval", help="run the evaluation harness")
    p.add_argument("--bundle", required=True,
                   help="bundle JSON path or contract id in the store")
    p.add_argument("--fixtures", required=True, help="eval fixture JSON")
    _add_common(p)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except ReplayMiss as exc:
        _fail("ReplayMiss", exc)
        return EXIT_REPLAY_MISS
    except ProviderError as exc:
        _fail("ProviderError", exc)
        return EXIT_PROVIDER
    except _VALIDATION_ERRORS as exc:
        _fail(type(exc).__name__, exc)
        return EXIT_VALIDATION
    except ClauseLensError as exc:
        _fail(type(exc).__name__, exc)
        return EXIT_VALIDATION
    _emit(result)
    return EXIT_OK


def _fail(kind: str, exc: Exception) -> None:
    sys.stderr.write(json.dumps(
        {"error": {"type": kind, "message": str(exc)}}) + "\n")


if __name__ == "__main__":
    sys.exit(main())
