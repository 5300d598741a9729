"""Instantiate the state-machine design pattern for a concrete story.

Output is an AbstractCode package named "StoryDSL" holding six
story-independent pattern classes (Node, NodeTransition, Section,
SectionTransition, Story, StoryManager) plus a Main driver class whose
CreateStoryManager routine builds the specific story: every node with
its readable name as a string literal, per-section node lists with
positional inserts, transition objects with their event lists, and
finally the assembled Story wrapped in a StoryManager.

Identifiers stay traceable: they are derived from the readable labels
by a fixed mangling rule rather than being synthesized counters.
"""

from __future__ import annotations

import re

from .abstract_code import (
    AbstractCode,
    BinOp,
    Block,
    Call,
    CodeModule,
    Comment,
    CommentDelimit,
    Cond,
    Foreach,
    ListAppend,
    ListDec,
    ListDecLiterals,
    MethodCall,
    New,
    ObjDecDef,
    Package,
    Return,
    Transformation,
    Var,
    VarDecDef,
    While,
    assign_var,
    block,
    construct,
    lit,
    list_insert,
    list_of,
    one_liner,
    param,
    priv_func,
    priv_var,
    pub_func,
    pub_module,
    return_var,
    typ,
    BOOL_T,
    NODE_T,
    NODE_TRANS_T,
    SECT_T,
    SECT_TRANS_T,
    STORY_T,
    STORY_MAN_T,
    STRING_T,
)
from .ast import Label
from .model import StoryGraph

PACKAGE_NAME = "StoryDSL"
BANNER_WIDTH = 80

_IDENT_RE = re.compile(r"[^A-Za-z0-9_]")


class IdentifierMangler:
    """Derives identifiers from readable labels, suffixing collisions."""

    def __init__(self):
        self._issued: set[str] = set()

    def mangle(self, prefix: str, label: Label | str) -> str:
        text = label.canonical if isinstance(label, Label) else label
        base = f"{prefix}__{_IDENT_RE.sub('_', text)}"
        name = base
        counter = 2
        while name in self._issued:
            name = f"{base}_{counter}"
            counter += 1
        self._issued.add(name)
        return name

    def reserve(self, name: str) -> str:
        if name in self._issued:
            raise ValueError(f"identifier {name!r} already issued")
        self._issued.add(name)
        return name


def mangle(prefix: str, label: Label | str) -> str:
    """Collision-free only within a fresh context; the driver uses a
    shared IdentifierMangler instead."""
    return IdentifierMangler().mangle(prefix, label)


# ---------------------------------------------------------------------------
# Story-independent pattern modules


def _getter(ret_type, field: str) -> Transformation:
    return pub_func(typ(ret_type), "Get" + field[0].upper() + field[1:], [],
                    one_liner(return_var(field)))


def _node_module() -> CodeModule:
    return pub_module(
        "Node",
        [priv_var("nodeName", STRING_T)],
        [
            pub_func(
                construct("Node"),
                "Node",
                [param("name", STRING_T)],
                one_liner(assign_var("nodeName", Var("name"))),
            ),
            _getter(STRING_T, "nodeName"),
        ],
    )


def _node_transition_module() -> CodeModule:
    return pub_module(
        "NodeTransition",
        [
            priv_var("srcNode", NODE_T),
            priv_var("dstNode", NODE_T),
            priv_var("nodeTransEvents", list_of(STRING_T)),
        ],
        [
            pub_func(
                construct("NodeTransition"),
                "NodeTransition",
                [
                    param("src", NODE_T),
                    param("dst", NODE_T),
                    param("evts", list_of(STRING_T)),
                ],
                (
                    block(
                        assign_var("srcNode", Var("src")),
                        assign_var("dstNode", Var("dst")),
                        assign_var("nodeTransEvents", Var("evts")),
                    ),
                ),
            ),
            _getter(NODE_T, "srcNode"),
            _getter(NODE_T, "dstNode"),
            _getter(list_of(STRING_T), "nodeTransEvents"),
        ],
    )


def _section_module() -> CodeModule:
    return pub_module(
        "Section",
        [
            priv_var("sectionName", STRING_T),
            priv_var("sectionNodes", list_of(NODE_T)),
            priv_var("sectionTransitions", list_of(NODE_TRANS_T)),
        ],
        [
            pub_func(
                construct("Section"),
                "Section",
                [
                    param("name", STRING_T),
                    param("nodes", list_of(NODE_T)),
                    param("transitions", list_of(NODE_TRANS_T)),
                ],
                (
                    block(
                        assign_var("sectionName", Var("name")),
                        assign_var("sectionNodes", Var("nodes")),
                        assign_var("sectionTransitions", Var("transitions")),
                    ),
                ),
            ),
            _getter(STRING_T, "sectionName"),
            _getter(list_of(NODE_T), "sectionNodes"),
            _getter(list_of(NODE_TRANS_T), "sectionTransitions"),
        ],
    )


def _section_transition_module() -> CodeModule:
    return pub_module(
        "SectionTransition",
        [
            priv_var("srcNode", NODE_T),
            priv_var("dstNode", NODE_T),
            priv_var("sectTransEvents", list_of(STRING_T)),
        ],
        [
            pub_func(
                construct("SectionTransition"),
                "SectionTransition",
                [
                    param("src", NODE_T),
                    param("dst", NODE_T),
                    param("evts", list_of(STRING_T)),
                ],
                (
                    block(
                        assign_var("srcNode", Var("src")),
                        assign_var("dstNode", Var("dst")),
                        assign_var("sectTransEvents", Var("evts")),
                    ),
                ),
            ),
            _getter(NODE_T, "srcNode"),
            _getter(NODE_T, "dstNode"),
            _getter(list_of(STRING_T), "sectTransEvents"),
        ],
    )


def _story_module() -> CodeModule:
    return pub_module(
        "Story",
        [
            priv_var("storyName", STRING_T),
            priv_var("storySections", list_of(SECT_T)),
            priv_var("storySectionTransitions", list_of(SECT_TRANS_T)),
            priv_var("initialNode", NODE_T),
        ],
        [
            pub_func(
                construct("Story"),
                "Story",
                [
                    param("name", STRING_T),
                    param("sects", list_of(SECT_T)),
                    param("sectTrans", list_of(SECT_TRANS_T)),
                    param("init", NODE_T),
                ],
                (
                    block(
                        assign_var("storyName", Var("name")),
                        assign_var("storySections", Var("sects")),
                        assign_var("storySectionTransitions", Var("sectTrans")),
                        assign_var("initialNode", Var("init")),
                    ),
                ),
            ),
            _getter(STRING_T, "storyName"),
            _getter(list_of(SECT_T), "storySections"),
            _getter(list_of(SECT_TRANS_T), "storySectionTransitions"),
            _getter(NODE_T, "initialNode"),
        ],
    )


def _story_manager_module() -> CodeModule:
    # One cascading sweep: scan all transitions in declaration order and
    # fire the first enabled one; repeat until a sweep fires nothing.
    fire_node = Cond(
        BinOp("==", Var("progress"), lit(False)),
        (
            Cond(
                BinOp("==", MethodCall(Var("tr"), "GetSrcNode"), Var("currentNode")),
                (
                    Cond(
                        Call("EventsSatisfied",
                             (MethodCall(Var("tr"), "GetNodeTransEvents"),)),
                        (
                            assign_var(
                                "currentNode", MethodCall(Var("tr"), "GetDstNode")
                            ),
                            assign_var("fired", lit(True)),
                            assign_var("progress", lit(True)),
                        ),
                    ),
                ),
            ),
        ),
    )
    fire_section = Cond(
        BinOp("==", Var("progress"), lit(False)),
        (
            Cond(
                BinOp("==", MethodCall(Var("str2"), "GetSrcNode"), Var("currentNode")),
                (
                    Cond(
                        Call("EventsSatisfied",
                             (MethodCall(Var("str2"), "GetSectTransEvents"),)),
                        (
                            assign_var(
                                "currentNode", MethodCall(Var("str2"), "GetDstNode")
                            ),
                            assign_var("fired", lit(True)),
                            assign_var("progress", lit(True)),
                        ),
                    ),
                ),
            ),
        ),
    )
    sweep = While(
        Var("progress"),
        (
            assign_var("progress", lit(False)),
            Foreach(
                "sect",
                SECT_T,
                MethodCall(Var("story"), "GetStorySections"),
                (
                    Foreach(
                        "tr",
                        NODE_TRANS_T,
                        MethodCall(Var("sect"), "GetSectionTransitions"),
                        (fire_node,),
                    ),
                ),
            ),
            Foreach(
                "str2",
                SECT_TRANS_T,
                MethodCall(Var("story"), "GetStorySectionTransitions"),
                (fire_section,),
            ),
        ),
    )
    signal_event = pub_func(
        typ(BOOL_T),
        "SignalEvent",
        [param("evt", STRING_T)],
        (
            block(
                Comment("Events are permanent: record first, then cascade."),
                ListAppend(Var("happenedEvents"), Var("evt")),
                VarDecDef("fired", BOOL_T, lit(False)),
                VarDecDef("progress", BOOL_T, lit(True)),
            ),
            block(sweep),
            block(Return(Var("fired"))),
        ),
    )
    has_happened = priv_func(
        typ(BOOL_T),
        "HasHappened",
        [param("evt", STRING_T)],
        (
            block(
                Foreach(
                    "happened",
                    STRING_T,
                    Var("happenedEvents"),
                    (
                        Cond(
                            BinOp("==", Var("happened"), Var("evt")),
                            (Return(lit(True)),),
                        ),
                    ),
                ),
                Return(lit(False)),
            ),
        ),
    )
    events_satisfied = priv_func(
        typ(BOOL_T),
        "EventsSatisfied",
        [param("evts", list_of(STRING_T))],
        (
            block(
                Foreach(
                    "evt",
                    STRING_T,
                    Var("evts"),
                    (
                        Cond(
                            BinOp("==", Call("HasHappened", (Var("evt"),)), lit(False)),
                            (Return(lit(False)),),
                        ),
                    ),
                ),
                Return(lit(True)),
            ),
        ),
    )
    return pub_module(
        "StoryManager",
        [
            priv_var("story", STORY_T),
            priv_var("currentNode", NODE_T),
            priv_var("happenedEvents", list_of(STRING_T)),
        ],
        [
            pub_func(
                construct("StoryManager"),
                "StoryManager",
                [param("st", STORY_T)],
                (
                    block(
                        assign_var("story", Var("st")),
                        assign_var(
                            "currentNode", MethodCall(Var("st"), "GetInitialNode")
                        ),
                        assign_var("happenedEvents", New(list_of(STRING_T))),
                    ),
                ),
            ),
            signal_event,
            _getter(NODE_T, "currentNode"),
            has_happened,
            events_satisfied,
        ],
    )


def generate_pattern_modules() -> list[CodeModule]:
    """The six fixed classes; identical for every story."""
    return [
        _node_module(),
        _node_transition_module(),
        _section_module(),
        _section_transition_module(),
        _story_module(),
        _story_manager_module(),
    ]


# ---------------------------------------------------------------------------
# Story-specific driver


def generate_story_instantiation(graph: StoryGraph) -> Transformation:
    """Build the CreateStoryManager routine for one story."""
    mangler = IdentifierMangler()
    blocks: list[Block] = []

    node_names = {
        nid: mangler.mangle("node", graph.node_label(nid))
        for nid in range(graph.node_count)
    }
    node_list_names = {}
    trans_list_names = {}
    sect_names = {}

    # Nodes, grouped per section.
    for sect in graph.sections:
        stmts = [Comment(f'"{sect.name.canonical}"')]
        for nid in sect.nodes:
            label = graph.node_label(nid).canonical
            stmts.append(
                ObjDecDef(node_names[nid], NODE_T, New(NODE_T, (lit(label),)))
            )
        blocks.append(Block(tuple(stmts)))

        list_name = mangler.mangle("nodes", sect.name)
        node_list_names[sect.id] = list_name
        inserts = [ListDec(list_name, NODE_T, len(sect.nodes))]
        for i, nid in enumerate(sect.nodes):
            inserts.append(list_insert(list_name, i, Var(node_names[nid])))
        blocks.append(Block(tuple(inserts)))
    blocks.append(Block((CommentDelimit("End Nodes", BANNER_WIDTH),)))

    # Node transitions, grouped per section.
    evt_counter = 0
    for sect in graph.sections:
        stmts = [Comment(f'"{sect.name.canonical}" transitions')]
        trans_vars = []
        for t in sect.transitions:
            evts_name = mangler.reserve(f"evts__{evt_counter}")
            trans_name = mangler.reserve(f"nodeTrans__{evt_counter}")
            evt_counter += 1
            stmts.append(
                ListDecLiterals(
                    evts_name,
                    "evt",
                    STRING_T,
                    tuple(lit(graph.event_label(e).canonical) for e in t.events),
                )
            )
            stmts.append(
                ObjDecDef(
                    trans_name,
                    NODE_TRANS_T,
                    New(
                        NODE_TRANS_T,
                        (Var(node_names[t.src]), Var(node_names[t.dst]), Var(evts_name)),
                    ),
                )
            )
            trans_vars.append(trans_name)
        blocks.append(Block(tuple(stmts)))

        list_name = mangler.mangle("trans", sect.name)
        trans_list_names[sect.id] = list_name
        inserts = [ListDec(list_name, NODE_TRANS_T, len(trans_vars))]
        for i, name in enumerate(trans_vars):
            inserts.append(list_insert(list_name, i, Var(name)))
        blocks.append(Block(tuple(inserts)))
    blocks.append(Block((CommentDelimit("End Node Transitions", BANNER_WIDTH),)))

    # Sections.
    stmts = []
    for sect in graph.sections:
        name = mangler.mangle("sect", sect.name)
        sect_names[sect.id] = name
        stmts.append(
            ObjDecDef(
                name,
                SECT_T,
                New(
                    SECT_T,
                    (
                        lit(sect.name.canonical),
                        Var(node_list_names[sect.id]),
                        Var(trans_list_names[sect.id]),
                    ),
                ),
            )
        )
    blocks.append(Block(tuple(stmts)))
    sections_list = mangler.reserve("sections")
    inserts = [ListDec(sections_list, SECT_T, len(graph.sections))]
    for i, sect in enumerate(graph.sections):
        inserts.append(list_insert(sections_list, i, Var(sect_names[sect.id])))
    blocks.append(Block(tuple(inserts)))
    blocks.append(Block((CommentDelimit("End Sections", BANNER_WIDTH),)))

    # WHERE transitions.
    stmts = [Comment("WHERE transitions")]
    sect_trans_vars = []
    for t in graph.section_transitions:
        evts_name = mangler.reserve(f"evts__{evt_counter}")
        trans_name = mangler.reserve(f"sectTrans__{len(sect_trans_vars)}")
        evt_counter += 1
        stmts.append(
            ListDecLiterals(
                evts_name,
                "evt",
                STRING_T,
                tuple(lit(graph.event_label(e).canonical) for e in t.events),
            )
        )
        stmts.append(
            ObjDecDef(
                trans_name,
                SECT_TRANS_T,
                New(
                    SECT_TRANS_T,
                    (Var(node_names[t.src]), Var(node_names[t.dst]), Var(evts_name)),
                ),
            )
        )
        sect_trans_vars.append(trans_name)
    blocks.append(Block(tuple(stmts)))
    sect_trans_list = mangler.reserve("sectionTransitions")
    inserts = [ListDec(sect_trans_list, SECT_TRANS_T, len(sect_trans_vars))]
    for i, name in enumerate(sect_trans_vars):
        inserts.append(list_insert(sect_trans_list, i, Var(name)))
    blocks.append(Block(tuple(inserts)))
    blocks.append(Block((CommentDelimit("End Section Transitions", BANNER_WIDTH),)))

    # Story and manager.
    story_var = mangler.reserve("story")
    blocks.append(
        Block(
            (
                ObjDecDef(
                    story_var,
                    STORY_T,
                    New(
                        STORY_T,
                        (
                            lit(graph.name.canonical),
                            Var(sections_list),
                            Var(sect_trans_list),
                            Var(node_names[graph.initial]),
                        ),
                    ),
                ),
                Return(New(STORY_MAN_T, (Var(story_var),))),
            )
        )
    )

    return pub_func(typ(STORY_MAN_T), "CreateStoryManager", [], tuple(blocks))


def compile_story(graph: StoryGraph) -> AbstractCode:
    """Full middle end: pattern modules plus the story driver."""
    modules = generate_pattern_modules()
    driver = pub_module("Main", [], [generate_story_instantiation(graph)])
    return AbstractCode(Package(PACKAGE_NAME, tuple(modules) + (driver,)))
