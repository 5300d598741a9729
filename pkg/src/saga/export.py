"""Graph exports: graphviz dot text and the JSON document the walker
UI consumes."""

from __future__ import annotations

import json

from .model import StoryGraph


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: StoryGraph) -> str:
    """Render the story as one digraph: a labeled cluster per section,
    readable node names, solid node-transition edges and dashed WHERE
    edges; the initial node is double-circled."""
    lines = [f"digraph {_quote(graph.name.canonical)} {{"]
    lines.append('    rankdir="LR";')
    for sect in graph.sections:
        lines.append(f"    subgraph cluster_{sect.id} {{")
        lines.append(f"        label={_quote(sect.name.canonical)};")
        for nid in sect.nodes:
            attrs = [f"label={_quote(graph.node_label(nid).canonical)}"]
            if nid == graph.initial:
                attrs.append("shape=doublecircle")
            lines.append(f"        n{nid} [{', '.join(attrs)}];")
        lines.append("    }")
    for sect in graph.sections:
        for t in sect.transitions:
            label = " AND ".join(graph.event_label(e).canonical for e in t.events)
            lines.append(f"    n{t.src} -> n{t.dst} [label={_quote(label)}];")
    for t in graph.section_transitions:
        label = " AND ".join(graph.event_label(e).canonical for e in t.events)
        lines.append(
            f"    n{t.src} -> n{t.dst} [style=dashed, label={_quote(label)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_doc(graph: StoryGraph) -> dict:
    transitions = []
    for sect in graph.sections:
        for t in sect.transitions:
            transitions.append(_trans_doc(graph, t, "node"))
    for t in graph.section_transitions:
        transitions.append(_trans_doc(graph, t, "section"))
    return {
        "story": graph.name.canonical,
        "initial": graph.node_label(graph.initial).canonical,
        "sections": [
            {
                "name": s.name.canonical,
                "nodes": [graph.node_label(n).canonical for n in s.nodes],
            }
            for s in graph.sections
        ],
        "transitions": transitions,
    }


def _trans_doc(graph: StoryGraph, t, kind: str) -> dict:
    return {
        "src": graph.node_label(t.src).canonical,
        "dst": graph.node_label(t.dst).canonical,
        "events": [graph.event_label(e).canonical for e in t.events],
        "kind": kind,
    }


def to_graph_json(graph: StoryGraph) -> str:
    return json.dumps(graph_doc(graph), indent=2) + "\n"
