"""Parse-tree types for SAGA scripts, plus the canonical pretty-printer.

Spans are carried for diagnostics but ignored by structural equality,
so a printed-and-reparsed tree compares equal to the original.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexer import SourceSpan

_NO_SPAN = SourceSpan(0, 0, 0, 0)


@dataclass(frozen=True)
class Label:
    """A multi-word phrase naming a story, section, node or event."""

    words: tuple[str, ...]

    def __post_init__(self):
        if not self.words:
            raise ValueError("label needs at least one word")

    @property
    def canonical(self) -> str:
        return " ".join(self.words)

    @staticmethod
    def of(text: str) -> "Label":
        return Label(tuple(text.split()))

    def __str__(self) -> str:
        return self.canonical


@dataclass(frozen=True)
class TransitionDecl:
    pre_nodes: tuple[Label, ...]
    dest: Label
    events: tuple[Label, ...]
    span: SourceSpan = field(default=_NO_SPAN, compare=False)

    def __post_init__(self):
        if not self.pre_nodes:
            raise ValueError("transition needs at least one source node")
        if not self.events:
            raise ValueError("transition needs at least one event")


@dataclass(frozen=True)
class SectionDecl:
    name: Label
    transitions: tuple[TransitionDecl, ...]
    span: SourceSpan = field(default=_NO_SPAN, compare=False)

    def __post_init__(self):
        if not self.transitions:
            raise ValueError("section needs at least one transition")


@dataclass(frozen=True)
class StoryAst:
    story_name: Label
    initial: Label
    sections: tuple[SectionDecl, ...]
    where_clauses: tuple[TransitionDecl, ...] = ()

    def __post_init__(self):
        if not self.sections:
            raise ValueError("story needs at least one section")


def _print_transition(t: TransitionDecl) -> str:
    pre = " OR ".join(n.canonical for n in t.pre_nodes)
    evts = " AND ".join(e.canonical for e in t.events)
    return f"{pre} GOES {t.dest.canonical} WHEN {evts}"


def to_saga_text(ast: StoryAst) -> str:
    """Render an AST back to canonical SAGA source."""
    lines = [f"STORY {ast.story_name.canonical}", f"INITIAL {ast.initial.canonical}"]
    for sect in ast.sections:
        lines.append(f"SECTION {sect.name.canonical} {{")
        for i, t in enumerate(sect.transitions):
            comma = "," if i + 1 < len(sect.transitions) else ""
            lines.append(f"    {_print_transition(t)}{comma}")
        lines.append("}")
    lines.append("WHERE")
    for i, t in enumerate(ast.where_clauses):
        comma = "," if i + 1 < len(ast.where_clauses) else ""
        lines.append(f"    {_print_transition(t)}{comma}")
    return "\n".join(lines) + "\n"
