"""Command-line entry points: the API server and an offline metrics report."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .config import load_config
from .metrics import format_metrics_table, project_metrics
from .service.persistence import Journal
from .service.state import Workspace


def serve_main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="storygraph-server", description="Run the story authoring service."
    )
    parser.add_argument("--config", help="path to a JSON config file")
    parser.add_argument("--data-dir", help="directory for journal and snapshots")
    parser.add_argument("--port", type=int, help="listen port")
    parser.add_argument("--host", help="listen address")
    parser.add_argument("--provider-url", help="remote embedding endpoint")
    args = parser.parse_args(argv)

    overrides = {
        "data_dir": args.data_dir,
        "port": args.port,
        "host": args.host,
        "provider_url": args.provider_url,
    }
    if args.provider_url:
        overrides["embedding_provider"] = "remote"
    config = load_config(args.config, overrides=overrides)

    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return 0


def metrics_main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="storygraph-metrics",
        description="Report metrics for a project from a service data directory.",
    )
    parser.add_argument("--data-dir", required=True)
    parser.add_argument("--project", required=True)
    parser.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = parser.parse_args(argv)

    journal = Journal(args.data_dir)
    state, events = journal.load()
    workspace = Workspace.from_dict(state) if state is not None else Workspace()
    for event in events:
        workspace.apply(event)

    stories = workspace.stories.list_stories(args.project)
    view = workspace.graphs.view(args.project, None)
    metrics = project_metrics(args.project, len(stories), view if view.nodes else None)
    if args.json:
        print(json.dumps(metrics.to_dict(), indent=2, sort_keys=True))
    else:
        print(format_metrics_table(metrics))
    return 0


if __name__ == "__main__":
    sys.exit(serve_main())
