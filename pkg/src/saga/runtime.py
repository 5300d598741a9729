"""Event-driven Moore-machine interpreter over a StoryGraph.

The story state is a value: one current node plus the monotone set of
events that have happened.  Signaling an event records it and then
fires transitions in a cascade; among simultaneously enabled
transitions the one declared first wins (section-internal declarations
before WHERE clauses).  Unknown event labels are recorded and ignored
for matching, since games emit far more events than a story cares about.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .ast import Label
from .model import StoryGraph, StoryTransition, SectionTransition

SAVE_VERSION = 1


@dataclass(frozen=True)
class FiredTransition:
    transition: StoryTransition
    triggering_event: str  # canonical label as signaled
    resulting_node: int
    resulting_section: int


@dataclass(frozen=True)
class Notification:
    new_node: str
    new_section: str
    via_events: tuple[str, ...]  # transition's events, declared order

    def format(self) -> str:
        return f"-> {self.new_node} [{self.new_section}] via " + " AND ".join(
            self.via_events
        )


@dataclass(frozen=True)
class StoryState:
    current: int
    happened: frozenset[str]  # canonical event labels, monotone
    history: tuple[FiredTransition, ...]


class SaveError(Exception):
    pass


class MalformedBlob(SaveError):
    pass


class StoryMismatch(SaveError):
    def __init__(self, expected_hash: str, found_hash: str):
        super().__init__(
            f"save blob belongs to a different story (expected {expected_hash}, "
            f"found {found_hash})"
        )
        self.expected_hash = expected_hash
        self.found_hash = found_hash


def new_state(graph: StoryGraph) -> StoryState:
    return StoryState(graph.initial, frozenset(), ())


def _enabled(graph: StoryGraph, current: int, happened: frozenset[str]):
    for t in graph.transitions_in_order():
        if t.src != current:
            continue
        required = {graph.event_label(e).canonical for e in t.events}
        if required <= happened:
            yield t


def _notify(graph: StoryGraph, t: StoryTransition) -> Notification:
    return Notification(
        new_node=graph.node_label(t.dst).canonical,
        new_section=graph.section_of(t.dst).name.canonical,
        via_events=tuple(graph.event_label(e).canonical for e in t.events),
    )


def signal_event(
    state: StoryState, graph: StoryGraph, event: Label | str
) -> tuple[StoryState, list[Notification]]:
    """Record an event, then fire every transition the cascade enables."""
    label = event.canonical if isinstance(event, Label) else Label.of(event).canonical
    happened = state.happened | {label}
    current = state.current
    history = list(state.history)
    notifications: list[Notification] = []
    while True:
        fired = next(_enabled(graph, current, happened), None)
        if fired is None:
            break
        current = fired.dst
        history.append(
            FiredTransition(
                transition=fired,
                triggering_event=label,
                resulting_node=fired.dst,
                resulting_section=graph.node_section[fired.dst],
            )
        )
        notifications.append(_notify(graph, fired))
    return StoryState(current, happened, tuple(history)), notifications


@dataclass(frozen=True)
class EnabledTransition:
    transition: StoryTransition
    missing: tuple[str, ...]  # events still required, declared order

    @property
    def ready(self) -> bool:
        return not self.missing


def enabled_transitions(
    state: StoryState, graph: StoryGraph
) -> list[EnabledTransition]:
    """Out-transitions of the current node in declaration order, each
    annotated with the events it still waits for."""
    out: list[EnabledTransition] = []
    for t in graph.transitions_in_order():
        if t.src != state.current:
            continue
        missing = tuple(
            graph.event_label(e).canonical
            for e in t.events
            if graph.event_label(e).canonical not in state.happened
        )
        out.append(EnabledTransition(t, missing))
    return out


def run_events(
    graph: StoryGraph, events: list[str], state: StoryState | None = None
) -> tuple[StoryState, list[Notification]]:
    """Signal a sequence of events; returns final state and the full
    notification log."""
    if state is None:
        state = new_state(graph)
    log: list[Notification] = []
    for evt in events:
        state, notes = signal_event(state, graph, evt)
        log.extend(notes)
    return state, log


def notification_log_text(notifications: list[Notification]) -> str:
    return "".join(n.format() + "\n" for n in notifications)


def save(state: StoryState, graph: StoryGraph) -> str:
    """Serialize state to a versioned JSON blob bound to the story's
    structural hash."""
    doc = {
        "version": SAVE_VERSION,
        "story_hash": graph.structural_hash(),
        "current": graph.node_label(state.current).canonical,
        "happened": sorted(state.happened),
        "history": [
            {
                "kind": "section"
                if isinstance(f.transition, SectionTransition)
                else "node",
                "src": graph.node_label(f.transition.src).canonical,
                "dst": graph.node_label(f.transition.dst).canonical,
                "events": [
                    graph.event_label(e).canonical for e in f.transition.events
                ],
                "triggering_event": f.triggering_event,
            }
            for f in state.history
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def load(graph: StoryGraph, blob: str) -> StoryState:
    """Rebuild a StoryState from a save blob produced against the same story."""
    try:
        doc = json.loads(blob)
    except json.JSONDecodeError as exc:
        raise MalformedBlob(f"save blob is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("version") != SAVE_VERSION:
        raise MalformedBlob("save blob has a missing or unsupported version")
    expected = graph.structural_hash()
    found = doc.get("story_hash")
    if found != expected:
        raise StoryMismatch(expected, str(found))

    try:
        current_label = doc["current"]
        happened = frozenset(doc["happened"])
        history_docs = doc["history"]
    except KeyError as exc:
        raise MalformedBlob(f"save blob is missing field {exc}") from exc

    node_ids = {graph.node_label(n).canonical: n for n in range(graph.node_count)}
    if current_label not in node_ids:
        raise MalformedBlob(f"unknown current node {current_label!r}")

    by_key: dict[tuple[str, str, frozenset[str]], StoryTransition] = {}
    for t in graph.transitions_in_order():
        key = (
            graph.node_label(t.src).canonical,
            graph.node_label(t.dst).canonical,
            frozenset(graph.event_label(e).canonical for e in t.events),
        )
        by_key.setdefault(key, t)

    history: list[FiredTransition] = []
    prev = graph.initial
    for item in history_docs:
        try:
            key = (item["src"], item["dst"], frozenset(item["events"]))
            trigger = item["triggering_event"]
        except (KeyError, TypeError) as exc:
            raise MalformedBlob(f"malformed history entry: {item!r}") from exc
        t = by_key.get(key)
        if t is None or t.src != prev:
            raise MalformedBlob(f"history entry does not follow the story: {item!r}")
        history.append(FiredTransition(t, trigger, t.dst, graph.node_section[t.dst]))
        prev = t.dst
    if prev != node_ids[current_label]:
        raise MalformedBlob("history does not end at the recorded current node")
    return StoryState(prev, happened, tuple(history))
