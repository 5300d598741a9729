"""Semantic story model: resolution, validation and the story graph.

A StoryAst becomes a StoryGraph by interning every distinct node,
section and event label as a dense integer id, desugaring OR
transitions, and inferring which section owns each node (the section
whose transition list mentions it).  The transition union must form a
DAG; runtime and code generation both consume the resolved graph.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .ast import Label, StoryAst, TransitionDecl
from .diagnostics import Diagnostic, error, info, warning
from .lexer import SourceSpan

NodeId = int
SectionId = int
EventId = int


@dataclass(frozen=True)
class StoryTransition:
    src: NodeId
    dst: NodeId
    events: tuple[EventId, ...]  # declared order, duplicates removed
    span: SourceSpan | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.src == self.dst:
            raise ValueError("self-loop transition")
        if not self.events:
            raise ValueError("transition needs at least one event")

    @property
    def event_set(self) -> frozenset[EventId]:
        return frozenset(self.events)


@dataclass(frozen=True)
class NodeTransition(StoryTransition):
    """Transition between two nodes of the same section."""


@dataclass(frozen=True)
class SectionTransition(StoryTransition):
    """WHERE transition between nodes of two different sections."""


@dataclass(frozen=True)
class Section:
    id: SectionId
    name: Label
    nodes: tuple[NodeId, ...]  # first-mention order
    transitions: tuple[NodeTransition, ...]


@dataclass(frozen=True)
class StoryGraph:
    name: Label
    initial: NodeId
    sections: tuple[Section, ...]
    section_transitions: tuple[SectionTransition, ...]
    node_labels: tuple[Label, ...]
    event_labels: tuple[Label, ...]
    node_section: tuple[SectionId, ...]  # node id -> owning section id

    @property
    def node_count(self) -> int:
        return len(self.node_labels)

    def node_label(self, node: NodeId) -> Label:
        return self.node_labels[node]

    def event_label(self, event: EventId) -> Label:
        return self.event_labels[event]

    def section_of(self, node: NodeId) -> Section:
        return self.sections[self.node_section[node]]

    def transitions_in_order(self) -> list[StoryTransition]:
        """All transitions in declaration order: section-internal first
        (textual order), then WHERE clauses."""
        out: list[StoryTransition] = []
        for sect in self.sections:
            out.extend(sect.transitions)
        out.extend(self.section_transitions)
        return out

    def canonical_json(self) -> str:
        doc = {
            "story": self.name.canonical,
            "initial": self.node_labels[self.initial].canonical,
            "sections": [
                {
                    "name": s.name.canonical,
                    "nodes": [self.node_labels[n].canonical for n in s.nodes],
                    "transitions": [self._trans_doc(t) for t in s.transitions],
                }
                for s in self.sections
            ],
            "section_transitions": [
                self._trans_doc(t) for t in self.section_transitions
            ],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def _trans_doc(self, t: StoryTransition) -> dict:
        return {
            "src": self.node_labels[t.src].canonical,
            "dst": self.node_labels[t.dst].canonical,
            "events": [self.event_labels[e].canonical for e in t.events],
        }

    def structural_hash(self) -> str:
        """SHA-256 of the canonical serialization; save blobs bind to this."""
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()


@dataclass
class ResolveResult:
    graph: StoryGraph | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.graph is not None


def desugar_or(decl: TransitionDecl) -> list[TransitionDecl]:
    """Expand a multi-source transition into one transition per source."""
    return [
        TransitionDecl((pre,), decl.dest, decl.events, decl.span)
        for pre in decl.pre_nodes
    ]


class _Interner:
    def __init__(self):
        self.ids: dict[str, int] = {}
        self.labels: list[Label] = []

    def intern(self, label: Label) -> int:
        key = label.canonical
        if key not in self.ids:
            self.ids[key] = len(self.labels)
            self.labels.append(label)
        return self.ids[key]

    def get(self, label: Label) -> int | None:
        return self.ids.get(label.canonical)


def resolve(ast: StoryAst) -> ResolveResult:
    """Build a validated StoryGraph from a grammatical AST.

    Collects as many diagnostics as possible; the graph is produced only
    when no error-level diagnostic occurred.
    """
    diags: list[Diagnostic] = []
    nodes = _Interner()
    events = _Interner()

    owner: dict[int, int] = {}  # node id -> section index
    seen_sections: dict[str, int] = {}
    sections: list[Section] = []

    for sect_index, sect in enumerate(ast.sections):
        key = sect.name.canonical
        if key in seen_sections:
            diags.append(
                error(
                    "duplicate-section-name",
                    f"section {key!r} is declared more than once",
                    sect.span,
                )
            )
        seen_sections.setdefault(key, sect_index)

        sect_nodes: list[int] = []
        sect_trans: list[NodeTransition] = []
        for decl in sect.transitions:
            for single in desugar_or(decl):
                src = nodes.intern(single.pre_nodes[0])
                dst = nodes.intern(single.dest)
                for nid in (src, dst):
                    prev = owner.get(nid)
                    if prev is None:
                        owner[nid] = sect_index
                        sect_nodes.append(nid)
                    elif prev != sect_index:
                        diags.append(
                            error(
                                "node-in-multiple-sections",
                                f"node {nodes.labels[nid].canonical!r} is used in "
                                f"sections {ast.sections[prev].name.canonical!r} "
                                f"and {sect.name.canonical!r}",
                                single.span,
                            )
                        )
                    elif nid not in sect_nodes:
                        sect_nodes.append(nid)
                if src == dst:
                    diags.append(
                        error(
                            "self-loop",
                            f"node {single.dest.canonical!r} transitions to itself",
                            single.span,
                        )
                    )
                    continue
                evt_ids = _intern_events(single, events)
                sect_trans.append(
                    NodeTransition(src, dst, evt_ids, span=single.span)
                )
        sections.append(
            Section(sect_index, sect.name, tuple(sect_nodes), tuple(sect_trans))
        )

    where_trans: list[SectionTransition] = []
    for decl in ast.where_clauses:
        for single in desugar_or(decl):
            endpoints = []
            unowned = False
            for label in (single.pre_nodes[0], single.dest):
                nid = nodes.get(label)
                if nid is None or nid not in owner:
                    diags.append(
                        error(
                            "where-endpoint-unowned",
                            f"node {label.canonical!r} in a WHERE clause is not "
                            "mentioned by any section",
                            single.span,
                        )
                    )
                    unowned = True
                endpoints.append(nid)
            if unowned:
                continue
            src, dst = endpoints
            if src == dst:
                diags.append(
                    error(
                        "self-loop",
                        f"node {single.dest.canonical!r} transitions to itself",
                        single.span,
                    )
                )
                continue
            if owner[src] == owner[dst]:
                diags.append(
                    error(
                        "where-within-single-section",
                        "WHERE transition "
                        f"{nodes.labels[src].canonical!r} GOES "
                        f"{nodes.labels[dst].canonical!r} stays inside section "
                        f"{sections[owner[src]].name.canonical!r}",
                        single.span,
                    )
                )
                continue
            where_trans.append(
                SectionTransition(src, dst, _intern_events(single, events), span=single.span)
            )

    initial = nodes.get(ast.initial)
    if initial is None:
        diags.append(
            error(
                "unknown-initial-node",
                f"INITIAL node {ast.initial.canonical!r} does not appear in any transition",
            )
        )

    all_trans: list[StoryTransition] = [
        t for s in sections for t in s.transitions
    ] + list(where_trans)
    _warn_duplicates(all_trans, nodes, diags)
    _warn_nondeterminism(all_trans, nodes, diags)

    if any(d.level.value == "error" for d in diags):
        return ResolveResult(None, diags)

    graph = StoryGraph(
        name=ast.story_name,
        initial=initial,
        sections=tuple(sections),
        section_transitions=tuple(where_trans),
        node_labels=tuple(nodes.labels),
        event_labels=tuple(events.labels),
        node_section=tuple(owner[n] for n in range(len(nodes.labels))),
    )
    return ResolveResult(graph, diags)


def _intern_events(decl: TransitionDecl, events: _Interner) -> tuple[int, ...]:
    ids: list[int] = []
    for evt in decl.events:
        eid = events.intern(evt)
        if eid not in ids:
            ids.append(eid)
    return tuple(ids)


def _warn_duplicates(trans, nodes, diags):
    seen = set()
    for t in trans:
        key = (t.src, t.dst, t.event_set)
        if key in seen:
            diags.append(
                warning(
                    "duplicate-transition",
                    f"transition {nodes.labels[t.src].canonical!r} GOES "
                    f"{nodes.labels[t.dst].canonical!r} is declared twice with "
                    "the same events",
                    t.span,
                )
            )
        seen.add(key)


def _warn_nondeterminism(trans, nodes, diags):
    # Event sets only grow, so any two transitions out of one node can be
    # enabled at the same time; declaration order decides at runtime.
    out_counts: dict[int, int] = {}
    for t in trans:
        out_counts[t.src] = out_counts.get(t.src, 0) + 1
    for nid, count in out_counts.items():
        if count > 1:
            diags.append(
                warning(
                    "nondeterministic-choice",
                    f"node {nodes.labels[nid].canonical!r} has {count} outgoing "
                    "transitions; the one declared first wins when several are enabled",
                )
            )


class CycleError(Exception):
    """The transition union contains a cycle."""

    def __init__(self, cycle: list[NodeId], graph_labels: tuple[Label, ...]):
        names = " -> ".join(graph_labels[n].canonical for n in cycle)
        super().__init__(f"story graph has a cycle: {names}")
        self.cycle = cycle
        self.diagnostic = error("cycle", f"story graph has a cycle: {names}")


def validate_dag(graph: StoryGraph) -> list[NodeId]:
    """Topologically order all nodes, or raise CycleError with one
    explicit cycle."""
    n = graph.node_count
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for t in graph.transitions_in_order():
        succ[t.src].append(t.dst)
        indeg[t.dst] += 1

    ready = sorted(i for i in range(n) if indeg[i] == 0)
    order: list[int] = []
    while ready:
        node = ready.pop(0)
        order.append(node)
        for nxt in succ[node]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                # keep determinism: insert in id order
                lo = 0
                while lo < len(ready) and ready[lo] < nxt:
                    lo += 1
                ready.insert(lo, nxt)
    if len(order) == n:
        return order
    raise CycleError(_find_cycle(succ, n), graph.node_labels)


def _find_cycle(succ: list[list[int]], n: int) -> list[int]:
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * n
    stack: list[int] = []

    def dfs(node: int) -> list[int] | None:
        color[node] = GRAY
        stack.append(node)
        for nxt in succ[node]:
            if color[nxt] is GRAY:
                at = stack.index(nxt)
                return stack[at:] + [nxt]
            if color[nxt] is WHITE:
                found = dfs(nxt)
                if found:
                    return found
        stack.pop()
        color[node] = BLACK
        return None

    for start in range(n):
        if color[start] is WHITE:
            found = dfs(start)
            if found:
                return found
    raise AssertionError("cycle reported but none found")


def reachability_report(graph: StoryGraph) -> list[Diagnostic]:
    """Warn about nodes unreachable from INITIAL; list terminal nodes."""
    succ: dict[int, list[int]] = {}
    has_out: set[int] = set()
    for t in graph.transitions_in_order():
        succ.setdefault(t.src, []).append(t.dst)
        has_out.add(t.src)

    seen = {graph.initial}
    frontier = [graph.initial]
    while frontier:
        node = frontier.pop(0)
        for nxt in succ.get(node, []):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)

    report: list[Diagnostic] = []
    for nid in range(graph.node_count):
        if nid not in seen:
            report.append(
                warning(
                    "unreachable-node",
                    f"node {graph.node_labels[nid].canonical!r} cannot be reached "
                    "from the initial node",
                )
            )
    terminals = [
        graph.node_labels[nid].canonical
        for nid in range(graph.node_count)
        if nid not in has_out
    ]
    if terminals:
        report.append(
            info(
                "terminal-nodes",
                "terminal nodes (no outgoing transitions): " + ", ".join(terminals),
            )
        )
    return report
