"""C# output dialect: one file per class, classes inside a namespace.

Only the driver extract of the reference output is known for C#; the
surrounding file layout mirrors the Java dialect with C# syntax.
"""

from __future__ import annotations

from ..abstract_code import StateType
from .base import (
    GENERIC_ENTRIES,
    Lines,
    OutputFile,
    RenderConfig,
    Renderer,
    UnmappableType,
    finish,
    tab,
)

_BASE_TYPES = {"bool": "bool", "int": "int", "string": "string"}


def _state_type(r: Renderer, t: StateType) -> str:
    if t.is_object:
        return t.kind
    if t.kind == "base":
        return _BASE_TYPES[t.base.value]
    if t.kind == "list":
        return f"List<{_state_type(r, t.elem)}>"
    raise UnmappableType(t, "csharp")


def _list_dec(r: Renderer, s) -> Lines:
    list_type = _state_type(r, StateType("list", elem=s.elem_type))
    return [f"{list_type} {s.name} = new {list_type}({s.capacity});"]


def _list_dec_literals(r: Renderer, s) -> Lines:
    list_type = _state_type(r, StateType("list", elem=s.elem_type))
    items = ", ".join(r.value(v) for v in s.literals)
    return [f"{list_type} {s.name} = new {list_type} {{ {items} }};"]


def _list_insert(r: Renderer, s) -> Lines:
    return [f"{r.value(s.receiver)}.Insert({s.index}, {r.value(s.value)});"]


def _list_append(r: Renderer, s) -> Lines:
    return [f"{r.value(s.receiver)}.Add({r.value(s.value)});"]


def _foreach(r: Renderer, s) -> Lines:
    head = (
        f"foreach ({r.state_type(s.elem_type)} {s.var} in {r.value(s.iterable)}) {{"
    )
    return [head] + tab(r.statements(s.body)) + ["}"]


def _files(r: Renderer, code) -> list[OutputFile]:
    pkg = code.package
    out = []
    for mod in pkg.modules:
        lines = [
            "using System;",
            "using System.Collections.Generic;",
            "",
            f"namespace {pkg.name} {{",
        ]
        lines.extend(tab(r.module(mod)))
        lines.append("}")
        out.append(OutputFile(f"{pkg.name}/{mod.name}.cs", finish(lines)))
    return out


CONFIG = RenderConfig(
    name="csharp",
    table={
        **GENERIC_ENTRIES,
        "state_type": _state_type,
        "list_dec": _list_dec,
        "list_dec_literals": _list_dec_literals,
        "list_insert": _list_insert,
        "list_append": _list_append,
        "foreach": _foreach,
    },
    files=_files,
)
