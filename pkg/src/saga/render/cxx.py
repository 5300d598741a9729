"""C++ output dialect: exactly two files for the whole package.

Two passes over the IR: one renders the header (forward declarations
plus class declarations with public/private regions), the other the
implementation (out-of-class member definitions qualified with
ClassName::).  Object-valued types become pointers; lists stay values.
"""

from __future__ import annotations

from ..abstract_code import CodeModule, Scope, StateType, Transformation
from .base import (
    GENERIC_ENTRIES,
    Lines,
    OutputFile,
    RenderConfig,
    Renderer,
    UnmappableType,
    finish,
    sep_join,
    tab,
)

_BASE_TYPES = {"bool": "bool", "int": "int", "string": "string"}


def _state_type(r: Renderer, t: StateType) -> str:
    if t.is_object:
        return f"{t.kind}*"
    if t.kind == "base":
        return _BASE_TYPES[t.base.value]
    if t.kind == "list":
        return f"vector<{_state_type(r, t.elem)}>"
    raise UnmappableType(t, "cxx")


def _list_dec(r: Renderer, s) -> Lines:
    list_type = _state_type(r, StateType("list", elem=s.elem_type))
    return [f"{list_type} {s.name};", f"{s.name}.reserve({s.capacity});"]


def _list_dec_literals(r: Renderer, s) -> Lines:
    list_type = _state_type(r, StateType("list", elem=s.elem_type))
    items = ", ".join(r.value(v) for v in s.literals)
    return [f"{list_type} {s.name} = {{ {items} }};"]


def _list_insert(r: Renderer, s) -> Lines:
    # Inserts are always sequential from index 0, so push_back is faithful.
    return [f"{r.value(s.receiver)}.push_back({r.value(s.value)});"]


def _list_append(r: Renderer, s) -> Lines:
    return [f"{r.value(s.receiver)}.push_back({r.value(s.value)});"]


def _method_call(r: Renderer, v) -> str:
    args = ", ".join(r.value(a) for a in v.args)
    sep = "->" if v.receiver_is_object else "."
    return f"{r.value(v.receiver)}{sep}{v.method}({args})"


def _new(r: Renderer, v) -> str:
    args = ", ".join(r.value(a) for a in v.args)
    if v.type.is_object:
        return f"new {v.type.kind}({args})"
    return f"{_state_type(r, v.type)}({args})"


def _list_index(r: Renderer, v) -> str:
    return f"{r.value(v.receiver)}.at({r.value(v.index)})"


def _member_sig(r: Renderer, func: Transformation) -> str:
    if func.is_constructor:
        return f"{func.name}({r.params(func.params)});"
    return f"{r.trans_type(func.return_type)} {func.name}({r.params(func.params)});"


def _class_decl(r: Renderer, mod: CodeModule) -> Lines:
    regions: list[Lines] = []
    for scope, label in ((Scope.PUBLIC, "public:"), (Scope.PRIVATE, "private:")):
        members = [_member_sig(r, f) for f in mod.funcs if f.scope is scope]
        members += [
            f"{r.state_type(v.type)} {v.name};" for v in mod.vars if v.scope is scope
        ]
        if members:
            regions.append([label] + tab(members))
    return [f"class {mod.name} {{"] + tab(sep_join(regions)) + ["};"]


def _definition(r: Renderer, mod: CodeModule, func: Transformation) -> Lines:
    if func.is_constructor:
        head = f"{mod.name}::{func.name}({r.params(func.params)}) {{"
    else:
        ret = r.trans_type(func.return_type)
        head = f"{ret} {mod.name}::{func.name}({r.params(func.params)}) {{"
    return [head] + tab(r.body(func.body)) + ["}"]


def _files(r: Renderer, code) -> list[OutputFile]:
    pkg = code.package
    guard = f"{pkg.name.upper()}_H"

    forward = [f"class {mod.name};" for mod in pkg.modules]
    decls = [_class_decl(r, mod) for mod in pkg.modules]
    header_lines = [
        f"#ifndef {guard}",
        f"#define {guard}",
        "",
        "#include <string>",
        "#include <vector>",
        "",
        "using namespace std;",
        "",
        f"namespace {pkg.name} {{",
        *tab(sep_join([forward] + decls)),
        "}",
        "",
        "#endif",
    ]

    defs = [
        _definition(r, mod, func) for mod in pkg.modules for func in mod.funcs
    ]
    impl_lines = [
        f'#include "{pkg.name}.h"',
        "",
        "using namespace std;",
        f"using namespace {pkg.name};",
        "",
        *sep_join(defs),
    ]

    return [
        OutputFile(f"{pkg.name}.h", finish(header_lines)),
        OutputFile(f"{pkg.name}.cpp", finish(impl_lines)),
    ]


CONFIG = RenderConfig(
    name="cxx",
    table={
        **GENERIC_ENTRIES,
        "state_type": _state_type,
        "list_dec": _list_dec,
        "list_dec_literals": _list_dec_literals,
        "list_insert": _list_insert,
        "list_append": _list_append,
        "method_call": _method_call,
        "new": _new,
        "list_index": _list_index,
    },
    files=_files,
)
