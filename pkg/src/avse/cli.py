"""Command-line interface for batch analysis, scripting, editing, export.

Exit codes: 0 success, 2 usage error, 3 input error, 4 revision conflict.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .avdoc import format_timestamp, inspect_frame, outline
from .editing import EditKind, EditOp
from .errors import AvseError, ConflictError, InvalidOp
from .project import Project
from .search import build_index, query as run_query

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CONFLICT = 4


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--project", default=".", metavar="DIR",
                        help="project directory (default: current)")
    parser.add_argument("--config", default=None, metavar="FILE",
                        help="config file overriding the project's config.json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avse",
        description="Audio-visual script editing: analyze footage, build the "
                    "script document, apply edits, export a render plan.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="compute per-frame quality records")
    _add_common(p)

    p = sub.add_parser("script", help="build the script document and outline")
    _add_common(p)

    p = sub.add_parser("edit", help="apply one edit operation")
    _add_common(p)
    esub = p.add_subparsers(dest="op", required=True)
    e = esub.add_parser("delete-block", help="delete whole blocks")
    e.add_argument("block_ids", nargs="+")
    e = esub.add_parser("delete-words", help="delete a word range from a block")
    e.add_argument("block_id")
    e.add_argument("first_word", type=int)
    e.add_argument("last_word", type=int)
    e = esub.add_parser("trim", help="shrink a block to new bounds")
    e.add_argument("block_id")
    e.add_argument("start", type=float)
    e.add_argument("end", type=float)
    e = esub.add_parser("speed", help="set playback speed over a block")
    e.add_argument("block_id")
    e.add_argument("factor", type=float)
    esub.add_parser("undo", help="undo the latest edit")

    p = sub.add_parser("search", help="query speech, objects, errors, pauses")
    _add_common(p)
    p.add_argument("query")

    p = sub.add_parser("inspect", help="list objects at a time, largest first")
    _add_common(p)
    p.add_argument("time", type=float)

    p = sub.add_parser("export-edl", help="write edl.json and cutlist.txt")
    _add_common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    _add_common(p)
    p.add_argument("--port", type=int, default=8571)
    p.add_argument("--host", default="127.0.0.1")
    return parser


def _op_from_args(args, revision: int) -> EditOp:
    if args.op == "delete-block":
        return EditOp(EditKind.DELETE_BLOCKS, revision,
                      targets=tuple(args.block_ids))
    if args.op == "delete-words":
        return EditOp(EditKind.DELETE_WORDS, revision, block_id=args.block_id,
                      first_word=args.first_word, last_word=args.last_word)
    if args.op == "trim":
        return EditOp(EditKind.TRIM, revision, block_id=args.block_id,
                      start=args.start, end=args.end)
    if args.op == "speed":
        return EditOp(EditKind.SPEED, revision, block_id=args.block_id,
                      factor=args.factor)
    return EditOp(EditKind.UNDO, revision)


def run(args) -> int:
    project = Project(args.project, getattr(args, "config", None))

    if args.command == "analyze":
        with project.exclusive_lock():
            records = project.run_analysis()
        print(f"analyzed {len(records)} frames -> {project.analysis_path}")
        return EXIT_OK

    if args.command == "script":
        with project.exclusive_lock():
            doc, _ = project.run_script()
        for item in outline(doc):
            print(f"{format_timestamp(item.time):>6}  {item.kind.value:<5}  "
                  f"{item.label}")
        return EXIT_OK

    if args.command == "edit":
        with project.exclusive_lock():
            state = project.load_state()
            op = _op_from_args(args, state.session.doc.revision)
            state.session.apply(op)
            project.persist_after_edit(state.session, op)
        doc, edl = state.session.doc, state.session.edl
        print(f"revision {doc.revision}; output {edl.output_duration:.3f}s")
        return EXIT_OK

    if args.command == "search":
        state = project.load_state()
        index = build_index(state.session.doc, state.records)
        hits = run_query(index, args.query)
        print(json.dumps([
            {"kind": h.kind.value, "time": h.time, "snippet": h.snippet,
             "target_block_id": h.target_block_id}
            for h in hits
        ], indent=2))
        return EXIT_OK

    if args.command == "inspect":
        state = project.load_state()
        labels = inspect_frame(state.records, args.time,
                               state.session.doc.source_duration)
        print(json.dumps(labels, indent=2))
        return EXIT_OK

    if args.command == "export-edl":
        with project.exclusive_lock():
            state = project.load_state()
            cutlist = project.export_render_plan(state.session.edl)
        sys.stdout.write(cutlist)
        return EXIT_OK

    if args.command == "serve":
        import uvicorn

        from .server import create_app

        app = create_app(project)
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
        return EXIT_OK

    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except ConflictError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFLICT
    except InvalidOp as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AvseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
