"""Command line: ingest, rounds, backfill and read-only queries."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from datetime import date, datetime, timezone

from newsdesk_mcp.config import find_config, load_config
from newsdesk_mcp.errors import NewsdeskError, NotFoundError
from newsdesk_mcp.models.article import ensure_utc

logger = logging.getLogger(__name__)


def _timestamp(value: str) -> datetime:
    try:
        return ensure_utc(datetime.fromisoformat(value.replace("Z", "+00:00")))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an ISO-8601 timestamp: {value}") from None


def _date(value: str) -> date:
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an ISO date: {value}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="newsdesk", description="Multilingual news monitor")
    parser.add_argument("--state-dir", help="state directory (default: paths.state_dir)")
    parser.add_argument("--config", help="YAML config file")
    parser.add_argument("--clock", type=_timestamp, help="logical time, ISO-8601 (default: now)")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("ingest", help="fetch sources up to the clock and store new articles")
    sub.add_parser("round", help="run one full round at the clock")
    backfill = sub.add_parser("backfill", help="run rounds every cadence step")
    backfill.add_argument("--start", type=_timestamp, required=True)
    backfill.add_argument("--end", type=_timestamp, required=True)
    link = sub.add_parser("link", help="print link edges of a day")
    link.add_argument("--date", type=_date, help="ISO date (default: the clock's day)")
    sub.add_parser("alerts", help="print the alert log")
    entity = sub.add_parser("entity", help="print a fused entity profile")
    entity.add_argument("entity_id", type=int)
    serve = sub.add_parser("serve", help="start the read-only MCP and HTTP server")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    sub.add_parser("validate-config", help="validate the config and every resource table")
    return parser


def _print(payload) -> None:
    print(json.dumps(payload, ensure_ascii=False, indent=2))


def validate_config(config_path: str | None) -> dict:
    """Load the config and every table a round would read."""
    from newsdesk_mcp.core.catdsl import load_categories
    from newsdesk_mcp.core.geotag import load_gazetteer, load_geostop
    from newsdesk_mcp.core.ingest import load_sources
    from newsdesk_mcp.core.names import load_params, load_rules, load_transliterator
    from newsdesk_mcp.core.pipeline import DEFAULT_SOURCES
    from newsdesk_mcp.core.subject import load_corpus, load_thesaurus
    from newsdesk_mcp.core.vectors import load_background

    path = find_config(config_path)
    config = load_config(config_path)
    sources = load_sources(config.ingest.sources_file or DEFAULT_SOURCES)
    languages = sorted({s.language for s in sources})
    for language in languages:
        load_params(language, config.names.directory)
        load_geostop(language, config.geo.geostop_dir)
        load_background(language, config.paths.models_dir)
    load_transliterator(config.names.directory)
    load_rules(config.names.directory)
    return {
        "status": "success",
        "config": str(path) if path else None,
        "categories": len(load_categories(config.categories.directory)),
        "locations": len(load_gazetteer(config.geo.gazetteer)),
        "sources": len(sources),
        "languages": languages,
        "subject_classes": len(load_thesaurus(config.subject.classes_file)),
        "subject_documents": len(load_corpus(config.subject.corpus_dir)),
    }


def run(args: argparse.Namespace) -> int:
    if args.command == "validate-config":
        _print(validate_config(args.config))
        return 0

    from newsdesk_mcp.core.pipeline import Monitor

    config = load_config(args.config)
    monitor = Monitor(config, state_dir=args.state_dir)
    now = args.clock or datetime.now(timezone.utc).replace(microsecond=0)

    if args.command == "ingest":
        new, errors = monitor.ingest(now)
        monitor.save()
        _print({"ingested": len(new), "stored": len(monitor.state.articles), "source_errors": errors})
    elif args.command == "round":
        _print(monitor.run_round(now).model_dump(mode="json", exclude={"duration_seconds"}))
    elif args.command == "backfill":
        reports = monitor.backfill(args.start, args.end)
        _print([r.model_dump(mode="json", exclude={"duration_seconds"}) for r in reports])
    elif args.command == "link":
        day = (args.date or now.date()).isoformat()
        _print([e.model_dump(mode="json") for e in monitor.state.links.get(day, [])])
    elif args.command == "alerts":
        _print([d.model_dump(mode="json") for d in monitor.state.alert_log])
    elif args.command == "entity":
        _print(monitor.entity_profile(args.entity_id).model_dump(mode="json"))
    elif args.command == "serve":
        from newsdesk_mcp.server import mcp
        from newsdesk_mcp.tools.snapshot import load_snapshot, set_snapshot

        set_snapshot(load_snapshot(monitor.state_dir, config))
        mcp.run(transport="http", host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return run(args)
    except NotFoundError as e:
        logger.error(str(e))
        return 2
    except NewsdeskError as e:
        logger.error(str(e))
        return 1


if __name__ == "__main__":
    sys.exit(main())
