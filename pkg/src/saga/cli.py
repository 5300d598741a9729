"""The ``saga`` command line front end.

Subcommands: check, graph, compile, walk, serve.  Exit codes: 0 success
(warnings allowed), 1 validation error, 2 I/O failure, 3 refused
overwrite.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import diagnostics as diag
from .codegen import compile_story
from .export import to_dot, to_graph_json
from .lexer import LexError
from .model import CycleError, StoryGraph, reachability_report, resolve, validate_dag
from .parser import SagaSyntaxError, parse_text
from .render import DIALECTS, render_package
from .runtime import (
    SaveError,
    enabled_transitions,
    load,
    new_state,
    save,
    signal_event,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2
EXIT_REFUSED = 3


def _color_enabled() -> bool:
    return os.environ.get("SAGA_NO_COLOR") is None and sys.stdout.isatty()


def _style(text: str, code: str) -> str:
    if _color_enabled():
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def _read_source(path: str):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"saga: cannot read {path}: {exc}", file=sys.stderr)
        return None


def _emit_diagnostics(diags, path: str, as_json: bool) -> None:
    if not diags:
        return
    if as_json:
        print(diag.to_json(diags, path), file=sys.stderr)
    else:
        for d in diags:
            print(d.to_text(path), file=sys.stderr)


def load_story(path: str, as_json: bool = False) -> StoryGraph | int:
    """Parse, resolve and DAG-check a story file; returns the graph or
    an exit code."""
    source = _read_source(path)
    if source is None:
        return EXIT_IO
    try:
        ast = parse_text(source)
    except (LexError, SagaSyntaxError) as exc:
        d = diag.error(getattr(exc, "code", "syntax-error"), str(exc), exc.span)
        _emit_diagnostics([d], path, as_json)
        return EXIT_INVALID
    result = resolve(ast)
    _emit_diagnostics(result.diagnostics, path, as_json)
    if not result.ok:
        return EXIT_INVALID
    try:
        validate_dag(result.graph)
    except CycleError as exc:
        _emit_diagnostics([exc.diagnostic], path, as_json)
        return EXIT_INVALID
    return result.graph


def cmd_check(args) -> int:
    graph = load_story(args.path, args.json)
    if isinstance(graph, int):
        return graph
    _emit_diagnostics(reachability_report(graph), args.path, args.json)
    return EXIT_OK


def cmd_graph(args) -> int:
    graph = load_story(args.path)
    if isinstance(graph, int):
        return graph
    text = to_dot(graph) if args.format == "dot" else to_graph_json(graph)
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"saga: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_compile(args) -> int:
    graph = load_story(args.path)
    if isinstance(graph, int):
        return graph
    files = render_package(args.target, compile_story(graph))
    out_dir = Path(args.out)
    if not args.force:
        existing = [f.path for f in files if (out_dir / f.path).exists()]
        if existing:
            print(
                f"saga: refusing to overwrite {', '.join(existing)} (use --force)",
                file=sys.stderr,
            )
            return EXIT_REFUSED
    for f in files:
        target = out_dir / f.path
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(f.content, encoding="utf-8")
        print(target)
    return EXIT_OK


def _print_notifications(notes) -> None:
    for n in notes:
        print(n.format())


def _walk_scripted(graph: StoryGraph, script_path: str) -> int:
    try:
        lines = Path(script_path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        print(f"saga: cannot read {script_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    state = new_state(graph)
    for line in lines:
        event = line.strip()
        if not event:
            continue
        state, notes = signal_event(state, graph, event)
        _print_notifications(notes)
    return EXIT_OK


def _walk_status(graph: StoryGraph, state) -> None:
    node = graph.node_label(state.current).canonical
    section = graph.section_of(state.current).name.canonical
    print(_style(f"At: {node}  [{section}]", "1"))
    hints = enabled_transitions(state, graph)
    if not hints:
        print("The story has reached a terminal node.")
    for h in hints:
        dst = graph.node_label(h.transition.dst).canonical
        if h.missing:
            print(f"  -> {dst} (still needs: {' AND '.join(h.missing)})")
        else:
            print(f"  -> {dst} (ready)")


def _walk_interactive(graph: StoryGraph) -> int:
    state = new_state(graph)
    events = [label.canonical for label in graph.event_labels]
    print(_style(f"Walking story: {graph.name.canonical}", "1;36"))
    print("Pick an event by number, or: events, state, history, save <f>, load <f>, quit")
    while True:
        print()
        _walk_status(graph, state)
        for i, evt in enumerate(events, start=1):
            marker = "*" if evt in state.happened else " "
            print(f"  {i:2}{marker} {evt}")
        try:
            choice = input("event> ").strip()
        except EOFError:
            return EXIT_OK
        if not choice:
            continue
        if choice == "quit":
            return EXIT_OK
        if choice == "events":
            for evt in sorted(state.happened):
                print(f"  {evt}")
            continue
        if choice == "state":
            _walk_status(graph, state)
            continue
        if choice == "history":
            for f in state.history:
                print(
                    f"  {graph.node_label(f.transition.src).canonical} -> "
                    f"{graph.node_label(f.transition.dst).canonical} "
                    f"(on {f.triggering_event})"
                )
            continue
        if choice.startswith("save "):
            target = choice[5:].strip()
            try:
                Path(target).write_text(save(state, graph), encoding="utf-8")
                print(f"saved to {target}")
            except OSError as exc:
                print(f"cannot save: {exc}")
            continue
        if choice.startswith("load "):
            target = choice[5:].strip()
            try:
                state = load(graph, Path(target).read_text(encoding="utf-8"))
                print(f"loaded from {target}")
            except (OSError, SaveError) as exc:
                print(f"cannot load: {exc}")
            continue
        if choice.isdigit() and 1 <= int(choice) <= len(events):
            state, notes = signal_event(state, graph, events[int(choice) - 1])
            _print_notifications(notes)
            if not notes:
                print("(nothing happened)")
            continue
        print("unrecognized input; pick a number or a command")


def cmd_walk(args) -> int:
    graph = load_story(args.path)
    if isinstance(graph, int):
        return graph
    if args.script:
        return _walk_scripted(graph, args.script)
    return _walk_interactive(graph)


def cmd_serve(args) -> int:
    graph = load_story(args.path)
    if isinstance(graph, int):
        return graph
    from .server import serve

    return serve(graph, port=args.port, ui_dir=args.ui_dir)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="saga", description="Compile, inspect and walk SAGA story scripts."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and validate a story")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="diagnostics as JSON")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("graph", help="export the story graph")
    p.add_argument("path")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("compile", help="generate state-machine code")
    p.add_argument("path")
    p.add_argument("--target", choices=sorted(DIALECTS), required=True)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--force", action="store_true", help="overwrite existing files")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("walk", help="walk the story interactively")
    p.add_argument("path")
    p.add_argument("--script", help="replay newline-separated events instead")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("serve", help="serve the walker UI and JSON API")
    p.add_argument("path")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--ui-dir", help="directory with the static UI bundle")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
