"""Java output dialect: one file per class under the package directory.

Import list is a fixed constant taken from the reference output (Arrays
is pulled in for the event-list literals, so it stays even in files
that do not use it).
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
)

_BASE_TYPES = {"bool": "boolean", "int": "int", "string": "String"}
_BOXED = {"boolean": "Boolean", "int": "Integer", "String": "String"}


def _state_type(r: Renderer, t: StateType) -> str:
    if t.is_object:
        return t.kind
    if t.kind == "base":
        return _BASE_TYPES[t.base.value]
    if t.kind == "list":
        elem = _state_type(r, t.elem)
        return f"Vector<{_BOXED.get(elem, elem)}>"
    raise UnmappableType(t, "java")


def _list_dec(r: Renderer, s) -> Lines:
    list_type = _state_type(r, StateType("list", elem=s.elem_type))
    return [f"{list_type} {s.name} = new {list_type}({s.capacity});"]


def _list_dec_literals(r: Renderer, s) -> Lines:
    list_type = _state_type(r, StateType("list", elem=s.elem_type))
    items = ", ".join(r.value(v) for v in s.literals)
    return [f"{list_type} {s.name} = new {list_type}(Arrays.asList({items}));"]


def _list_insert(r: Renderer, s) -> Lines:
    return [f"{r.value(s.receiver)}.add({s.index}, {r.value(s.value)});"]


def _list_append(r: Renderer, s) -> Lines:
    return [f"{r.value(s.receiver)}.add({r.value(s.value)});"]


def _new(r: Renderer, v) -> str:
    args = ", ".join(r.value(a) for a in v.args)
    return f"new {_state_type(r, v.type)}({args})"


def _list_index(r: Renderer, v) -> str:
    return f"{r.value(v.receiver)}.get({r.value(v.index)})"


def _files(r: Renderer, code) -> list[OutputFile]:
    pkg = code.package
    out = []
    for mod in pkg.modules:
        lines = [
            f"package {pkg.name};",
            "",
            "import java.util.Arrays;",
            "import java.util.Vector;",
            "",
        ]
        lines.extend(r.module(mod))
        out.append(OutputFile(f"{pkg.name}/{mod.name}.java", finish(lines)))
    return out


CONFIG = RenderConfig(
    name="java",
    table={
        **GENERIC_ENTRIES,
        "state_type": _state_type,
        "list_dec": _list_dec,
        "list_dec_literals": _list_dec_literals,
        "list_insert": _list_insert,
        "list_append": _list_append,
        "new": _new,
        "list_index": _list_index,
    },
    files=_files,
)
