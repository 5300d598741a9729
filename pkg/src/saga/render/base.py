"""Shared rendering machinery for the output dialects.

Each dialect is a configuration record: a dispatch table mapping every
IR node category to a render function, mostly shared generic C-family
renderers with a handful of dialect overrides.  Render functions take
the driving Renderer (for recursion) and the node, returning either a
string (values, types) or a list of lines (statements and larger).

Blank separator lines inherit the indentation of their context, which
is how the original generated listings look; indentation is four
spaces per level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..abstract_code import (
    AbstractCode,
    Assign,
    BinOp,
    Block,
    Call,
    CodeModule,
    Comment,
    CommentDelimit,
    Cond,
    Foreach,
    Jump,
    ListAppend,
    ListDec,
    ListDecLiterals,
    ListIndex,
    Lit,
    MethodCall,
    New,
    ObjDecDef,
    ObjVar,
    Parameter,
    Return,
    Scope,
    StateType,
    Transformation,
    TransType,
    ValueStmt,
    Var,
    VarDec,
    VarDecDef,
    While,
)

INDENT = "    "

Lines = list[str]


@dataclass(frozen=True)
class OutputFile:
    path: str
    content: str


class UnmappableType(Exception):
    def __init__(self, state_type, dialect: str):
        super().__init__(f"dialect {dialect!r} has no mapping for type {state_type}")
        self.state_type = state_type
        self.dialect = dialect


def tab(lines: Lines, levels: int = 1) -> Lines:
    """Indent every line, blank separators included (they keep the
    surrounding indentation, as the reference listings do)."""
    prefix = INDENT * levels
    return [prefix + line for line in lines]


def sep_join(chunks: list[Lines]) -> Lines:
    """Join line chunks with one blank line between non-empty chunks."""
    out: Lines = []
    for chunk in chunks:
        if not chunk:
            continue
        if out:
            out.append("")
        out.extend(chunk)
    return out


def finish(lines: Lines) -> str:
    return "\n".join(lines) + "\n"


def escape_string(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


# The categories every dialect configuration must bind.
REQUIRED_ENTRIES = frozenset(
    {
        "module",
        "transformation",
        "param",
        "scope",
        "state_type",
        "trans_type",
        "assign",
        "var_dec",
        "list_dec",
        "list_dec_literals",
        "var_dec_def",
        "obj_dec_def",
        "cond",
        "foreach",
        "while",
        "jump",
        "return",
        "value_stmt",
        "list_insert",
        "list_append",
        "comment",
        "comment_delimit",
        "var",
        "lit",
        "obj_var",
        "method_call",
        "bin_op",
        "new",
        "call",
        "list_index",
    }
)


@dataclass(frozen=True)
class RenderConfig:
    """A dialect: its name, renderer record, and whole-package layout."""

    name: str
    table: dict[str, Callable]
    files: Callable  # (Renderer, AbstractCode) -> list[OutputFile]

    def __post_init__(self):
        missing = REQUIRED_ENTRIES - self.table.keys()
        if missing:
            raise ValueError(f"dialect {self.name} lacks renderers: {sorted(missing)}")


_STMT_KEYS = {
    Assign: "assign",
    VarDec: "var_dec",
    ListDec: "list_dec",
    ListDecLiterals: "list_dec_literals",
    VarDecDef: "var_dec_def",
    ObjDecDef: "obj_dec_def",
    Cond: "cond",
    Foreach: "foreach",
    While: "while",
    Jump: "jump",
    Return: "return",
    ValueStmt: "value_stmt",
    Comment: "comment",
    CommentDelimit: "comment_delimit",
}

_VALUE_KEYS = {
    Var: "var",
    Lit: "lit",
    ObjVar: "obj_var",
    MethodCall: "method_call",
    BinOp: "bin_op",
    New: "new",
    Call: "call",
    ListIndex: "list_index",
}


class Renderer:
    def __init__(self, config: RenderConfig):
        self.config = config
        self.dialect = config.name

    def _entry(self, key: str) -> Callable:
        return self.config.table[key]

    # -- dispatch ---------------------------------------------------------

    def value(self, v) -> str:
        if isinstance(v, ListAppend) or isinstance(v, list):
            raise TypeError(f"not a value: {v!r}")
        return self._entry(_VALUE_KEYS[type(v)])(self, v)

    def statement(self, s) -> Lines:
        from ..abstract_code import ListInsert

        if isinstance(s, ListInsert):
            return self._entry("list_insert")(self, s)
        if isinstance(s, ListAppend):
            return self._entry("list_append")(self, s)
        return self._entry(_STMT_KEYS[type(s)])(self, s)

    def statements(self, stmts) -> Lines:
        out: Lines = []
        for s in stmts:
            out.extend(self.statement(s))
        return out

    def body(self, blocks: tuple[Block, ...]) -> Lines:
        return sep_join([self.statements(b.statements) for b in blocks])

    def state_type(self, t: StateType) -> str:
        return self._entry("state_type")(self, t)

    def trans_type(self, t: TransType) -> str:
        return self._entry("trans_type")(self, t)

    def param(self, p: Parameter) -> str:
        return self._entry("param")(self, p)

    def params(self, ps) -> str:
        return ", ".join(self.param(p) for p in ps)

    def scope(self, s: Scope) -> str:
        return self._entry("scope")(self, s)

    def transformation(self, mod: CodeModule, func: Transformation) -> Lines:
        return self._entry("transformation")(self, mod, func)

    def module(self, mod: CodeModule) -> Lines:
        return self._entry("module")(self, mod)

    def render_package(self, code: AbstractCode) -> list[OutputFile]:
        return self.config.files(self, code)


# ---------------------------------------------------------------------------
# Generic renderers (shared across the C family)


def scope_doc(r: Renderer, s: Scope) -> str:
    return "public" if s is Scope.PUBLIC else "private"


def param_doc(r: Renderer, p: Parameter) -> str:
    return f"{r.state_type(p.type)} {p.name}"


def trans_type_doc(r: Renderer, t: TransType) -> str:
    if t.kind == "void":
        return "void"
    if t.kind == "state":
        return r.state_type(t.state)
    return ""  # constructors carry no return type


def assign_doc(r: Renderer, s: Assign) -> Lines:
    return [f"{r.value(s.target)} = {r.value(s.value)};"]


def var_dec_doc(r: Renderer, s: VarDec) -> Lines:
    return [f"{r.state_type(s.type)} {s.name};"]


def var_dec_def_doc(r: Renderer, s) -> Lines:
    return [f"{r.state_type(s.type)} {s.name} = {r.value(s.init)};"]


def cond_doc(r: Renderer, s: Cond) -> Lines:
    lines = [f"if ({r.value(s.cond)}) {{"]
    lines.extend(tab(r.statements(s.then)))
    if s.otherwise:
        lines.append("} else {")
        lines.extend(tab(r.statements(s.otherwise)))
    lines.append("}")
    return lines


def foreach_doc(r: Renderer, s: Foreach) -> Lines:
    head = f"for ({r.state_type(s.elem_type)} {s.var} : {r.value(s.iterable)}) {{"
    return [head] + tab(r.statements(s.body)) + ["}"]


def while_doc(r: Renderer, s: While) -> Lines:
    return [f"while ({r.value(s.cond)}) {{"] + tab(r.statements(s.body)) + ["}"]


def jump_doc(r: Renderer, s: Jump) -> Lines:
    return [f"{s.kind};"]


def return_doc(r: Renderer, s: Return) -> Lines:
    if s.value is None:
        return ["return;"]
    return [f"return {r.value(s.value)};"]


def value_stmt_doc(r: Renderer, s: ValueStmt) -> Lines:
    return [f"{r.value(s.value)};"]


def comment_doc(r: Renderer, s: Comment) -> Lines:
    return [f"// {s.text}"]


def comment_delimit_doc(r: Renderer, s: CommentDelimit) -> Lines:
    prefix = f"// {s.text} "
    return [prefix + "-" * max(0, s.total_width - len(prefix))]


def var_doc(r: Renderer, v: Var) -> str:
    return v.name


def lit_doc(r: Renderer, v: Lit) -> str:
    if isinstance(v.value, bool):
        return "true" if v.value else "false"
    if isinstance(v.value, int):
        return str(v.value)
    return escape_string(v.value)


def obj_var_doc(r: Renderer, v: ObjVar) -> str:
    return f"{v.obj}.{v.attr}"


def method_call_doc(r: Renderer, v: MethodCall) -> str:
    args = ", ".join(r.value(a) for a in v.args)
    return f"{r.value(v.receiver)}.{v.method}({args})"


def bin_op_doc(r: Renderer, v: BinOp) -> str:
    return f"{r.value(v.lhs)} {v.op} {r.value(v.rhs)}"


def new_doc(r: Renderer, v: New) -> str:
    args = ", ".join(r.value(a) for a in v.args)
    return f"new {r.state_type(v.type)}({args})"


def call_doc(r: Renderer, v: Call) -> str:
    args = ", ".join(r.value(a) for a in v.args)
    return f"{v.name}({args})"


def list_index_doc(r: Renderer, v: ListIndex) -> str:
    return f"{r.value(v.receiver)}[{r.value(v.index)}]"


def transformation_doc(r: Renderer, mod: CodeModule, func: Transformation) -> Lines:
    """Inline method with body, Java/C# style."""
    scope = r.scope(func.scope)
    if func.is_constructor:
        head = f"{scope} {func.name}({r.params(func.params)}) {{"
    else:
        ret = r.trans_type(func.return_type)
        head = f"{scope} {ret} {func.name}({r.params(func.params)}) {{"
    return [head] + tab(r.body(func.body)) + ["}"]


def module_doc(r: Renderer, mod: CodeModule) -> Lines:
    """Class with methods first, then state variables, blank-separated."""
    chunks = [r.transformation(mod, f) for f in mod.funcs]
    fields = [
        f"{r.scope(v.scope)} {r.state_type(v.type)} {v.name};" for v in mod.vars
    ]
    if fields:
        chunks.append(fields)
    head = f"{r.scope(mod.scope)} class {mod.name} {{"
    return [head] + tab(sep_join(chunks)) + ["}"]


GENERIC_ENTRIES: dict[str, Callable] = {
    "module": module_doc,
    "transformation": transformation_doc,
    "param": param_doc,
    "scope": scope_doc,
    "trans_type": trans_type_doc,
    "assign": assign_doc,
    "var_dec": var_dec_doc,
    "var_dec_def": var_dec_def_doc,
    "obj_dec_def": var_dec_def_doc,
    "cond": cond_doc,
    "foreach": foreach_doc,
    "while": while_doc,
    "jump": jump_doc,
    "return": return_doc,
    "value_stmt": value_stmt_doc,
    "comment": comment_doc,
    "comment_delimit": comment_delimit_doc,
    "var": var_doc,
    "lit": lit_doc,
    "obj_var": obj_var_doc,
    "method_call": method_call_doc,
    "bin_op": bin_op_doc,
    "new": new_doc,
    "call": call_doc,
    "list_index": list_index_doc,
}
