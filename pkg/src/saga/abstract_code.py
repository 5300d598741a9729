"""Language-agnostic object-oriented code IR.

The generated state machine is first built as a tree of packages,
modules (classes), transformations (methods) and statements, then
rendered into a concrete dialect.  Method bodies are lists of blocks
rather than flat statement lists: blocks carry no semantics but mark
conceptual groups, so renderers can place blank lines and comments.

Builder helpers at the bottom keep code generation readable; they are
plain constructors and never mutate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union


# ---------------------------------------------------------------------------
# Types


class BaseKind(str, Enum):
    BOOL = "bool"
    INT = "int"
    STRING = "string"


@dataclass(frozen=True)
class StateType:
    kind: str  # one of _OBJECT_KINDS | {"list", "base"}
    base: BaseKind | None = None
    elem: "StateType | None" = None

    @property
    def is_object(self) -> bool:
        return self.kind in _OBJECT_KINDS

    def __str__(self) -> str:
        if self.kind == "list":
            return f"List[{self.elem}]"
        if self.kind == "base":
            return self.base.value
        return self.kind


_OBJECT_KINDS = frozenset(
    {"Node", "NodeTransition", "Section", "SectionTransition", "Story", "StoryManager"}
)

NODE_T = StateType("Node")
NODE_TRANS_T = StateType("NodeTransition")
SECT_T = StateType("Section")
SECT_TRANS_T = StateType("SectionTransition")
STORY_T = StateType("Story")
STORY_MAN_T = StateType("StoryManager")
BOOL_T = StateType("base", base=BaseKind.BOOL)
INT_T = StateType("base", base=BaseKind.INT)
STRING_T = StateType("base", base=BaseKind.STRING)


def list_of(elem: StateType) -> StateType:
    return StateType("list", elem=elem)


@dataclass(frozen=True)
class TransType:
    kind: str  # "state" | "void" | "construct"
    state: StateType | None = None
    name: str | None = None


VOID = TransType("void")


def typ(state: StateType) -> TransType:
    return TransType("state", state=state)


def construct(name: str) -> TransType:
    return TransType("construct", name=name)


class Scope(str, Enum):
    PRIVATE = "private"
    PUBLIC = "public"


# ---------------------------------------------------------------------------
# Values (expression language)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Lit:
    value: Union[bool, int, str]  # bool before int: isinstance order matters


@dataclass(frozen=True)
class ObjVar:
    obj: str
    attr: str


@dataclass(frozen=True)
class MethodCall:
    """Method invocation on an object- or list-valued receiver.

    ``receiver_is_object`` lets the C++ renderer pick ``->`` vs ``.``.
    """

    receiver: "Value"
    method: str
    args: tuple["Value", ...] = ()
    receiver_is_object: bool = True


@dataclass(frozen=True)
class BinOp:
    op: str  # one of < == && +
    lhs: "Value"
    rhs: "Value"


@dataclass(frozen=True)
class New:
    type: StateType
    args: tuple["Value", ...] = ()


@dataclass(frozen=True)
class Call:
    """Call of a sibling method on the current object."""

    name: str
    args: tuple["Value", ...] = ()


@dataclass(frozen=True)
class ListIndex:
    receiver: "Value"
    index: "Value"


Value = Union[Var, Lit, ObjVar, MethodCall, BinOp, New, Call, ListIndex]

BIN_OPS = frozenset({"<", "==", "&&", "+"})


# ---------------------------------------------------------------------------
# Statements


@dataclass(frozen=True)
class Assign:
    target: Value  # must be Var or ObjVar
    value: Value


@dataclass(frozen=True)
class VarDec:
    name: str
    type: StateType


@dataclass(frozen=True)
class ListDec:
    name: str
    elem_type: StateType
    capacity: int

    def __post_init__(self):
        if self.capacity < 0:
            raise ValueError("list capacity must be >= 0")


@dataclass(frozen=True)
class ListDecLiterals:
    name: str
    elem_label: str
    elem_type: StateType
    literals: tuple[Lit, ...]


@dataclass(frozen=True)
class VarDecDef:
    name: str
    type: StateType
    init: Value


@dataclass(frozen=True)
class ObjDecDef:
    name: str
    type: StateType
    init: Value


@dataclass(frozen=True)
class Cond:
    cond: Value
    then: tuple["Statement", ...]
    otherwise: tuple["Statement", ...] = ()


@dataclass(frozen=True)
class Foreach:
    var: str
    elem_type: StateType
    iterable: Value
    body: tuple["Statement", ...]


@dataclass(frozen=True)
class While:
    cond: Value
    body: tuple["Statement", ...]


@dataclass(frozen=True)
class Jump:
    kind: str  # "break" | "continue"


@dataclass(frozen=True)
class Return:
    value: Value | None = None


@dataclass(frozen=True)
class ValueStmt:
    value: Value


@dataclass(frozen=True)
class ListInsert:
    receiver: Value
    index: int
    value: Value


@dataclass(frozen=True)
class ListAppend:
    receiver: Value
    value: Value


@dataclass(frozen=True)
class Comment:
    text: str


@dataclass(frozen=True)
class CommentDelimit:
    text: str
    total_width: int


Statement = Union[
    Assign,
    VarDec,
    ListDec,
    ListDecLiterals,
    VarDecDef,
    ObjDecDef,
    Cond,
    Foreach,
    While,
    Jump,
    Return,
    ValueStmt,
    ListInsert,
    ListAppend,
    Comment,
    CommentDelimit,
]

Declaration = (VarDec, ListDec, ListDecLiterals, VarDecDef, ObjDecDef)


@dataclass(frozen=True)
class Block:
    statements: tuple[Statement, ...]


Body = tuple[Block, ...]


# ---------------------------------------------------------------------------
# Module structure


@dataclass(frozen=True)
class Parameter:
    name: str
    type: StateType


@dataclass(frozen=True)
class StateVar:
    name: str
    scope: Scope
    type: StateType


@dataclass(frozen=True)
class Transformation:
    name: str
    scope: Scope
    return_type: TransType
    params: tuple[Parameter, ...]
    body: Body

    @property
    def is_constructor(self) -> bool:
        return self.return_type.kind == "construct"


@dataclass(frozen=True)
class CodeModule:
    name: str
    scope: Scope
    vars: tuple[StateVar, ...]
    funcs: tuple[Transformation, ...]


@dataclass(frozen=True)
class Package:
    name: str
    modules: tuple[CodeModule, ...]


@dataclass(frozen=True)
class AbstractCode:
    package: Package


# ---------------------------------------------------------------------------
# Builders


class NotAnLValue(Exception):
    def __init__(self, target):
        super().__init__(
            f"assignment target must be a Var or ObjVar, got {type(target).__name__}"
        )


def assign(target: Value, value: Value) -> Assign:
    if not isinstance(target, (Var, ObjVar)):
        raise NotAnLValue(target)
    return Assign(target, value)


def assign_var(name: str, value: Value) -> Assign:
    return assign(Var(name), value)


def var(name: str) -> Var:
    return Var(name)


def lit(value: Union[bool, int, str]) -> Lit:
    return Lit(value)


def new_obj(type: StateType, *args: Value) -> New:
    return New(type, tuple(args))


def call_method(receiver: Value, method: str, *args: Value, on_list=False) -> MethodCall:
    return MethodCall(receiver, method, tuple(args), receiver_is_object=not on_list)


def return_var(name: str) -> Return:
    return Return(Var(name))


def one_liner(stmt: Statement) -> Body:
    return (Block((stmt,)),)


def block(*stmts: Statement) -> Block:
    return Block(tuple(stmts))


def param(name: str, type: StateType) -> Parameter:
    return Parameter(name, type)


def priv_var(name: str, type: StateType) -> StateVar:
    return StateVar(name, Scope.PRIVATE, type)


def pub_var(name: str, type: StateType) -> StateVar:
    return StateVar(name, Scope.PUBLIC, type)


def pub_func(
    return_type: TransType, name: str, params: list[Parameter], body: Body
) -> Transformation:
    return Transformation(name, Scope.PUBLIC, return_type, tuple(params), tuple(body))


def priv_func(
    return_type: TransType, name: str, params: list[Parameter], body: Body
) -> Transformation:
    return Transformation(name, Scope.PRIVATE, return_type, tuple(params), tuple(body))


def pub_module(
    name: str, vars: list[StateVar], funcs: list[Transformation]
) -> CodeModule:
    return CodeModule(name, Scope.PUBLIC, tuple(vars), tuple(funcs))


def list_insert(receiver_name: str, index: int, value: Value) -> ListInsert:
    return ListInsert(Var(receiver_name), index, value)


def list_append(receiver: Value, value: Value) -> ListAppend:
    return ListAppend(receiver, value)


# ---------------------------------------------------------------------------
# Validation


# Methods renderers know how to emit on list values.
LIST_METHODS = frozenset({"Insert", "Append"})


def validate_ir(code: AbstractCode) -> list[str]:
    """Structural checks over a package; returns human-readable findings.

    Blocks are layout-only, so validation flattens them; the result is
    identical however statements are grouped.
    """
    findings: list[str] = []
    pkg = code.package
    module_names = [m.name for m in pkg.modules]
    for name in sorted({n for n in module_names if module_names.count(n) > 1}):
        findings.append(f"DuplicateModule: package {pkg.name} declares {name} twice")

    known_modules = set(module_names)
    all_methods = {f.name for m in pkg.modules for f in m.funcs} | LIST_METHODS
    for mod in pkg.modules:
        members = [v.name for v in mod.vars] + [f.name for f in mod.funcs]
        for name in sorted({n for n in members if members.count(n) > 1}):
            findings.append(f"DuplicateMember: module {mod.name} declares {name} twice")
        method_names = {f.name for f in mod.funcs}
        fields = {v.name for v in mod.vars}
        for func in mod.funcs:
            if func.is_constructor and func.name != mod.name:
                findings.append(
                    f"BadConstructor: constructor {func.name} in module {mod.name} "
                    "must carry the module name"
                )
            scope = set(fields)
            scope.update(p.name for p in func.params)
            for stmt in _flatten(func.body):
                findings.extend(
                    _check_statement(
                        stmt, scope, method_names, known_modules, mod, func, all_methods
                    )
                )
    return findings


def _flatten(body: Body):
    for blk in body:
        yield from blk.statements


def _check_statement(stmt, scope, methods, modules, mod, func, all_methods=frozenset()):
    findings: list[str] = []
    where = f"{mod.name}.{func.name}"
    known_methods = set(all_methods) | set(methods) | LIST_METHODS

    def check_value(value):
        if isinstance(value, Var):
            if value.name not in scope:
                findings.append(f"UnresolvedVar: {value.name!r} in {where}")
        elif isinstance(value, ObjVar):
            if value.obj != "this" and value.obj not in scope:
                findings.append(f"UnresolvedVar: {value.obj!r} in {where}")
        elif isinstance(value, MethodCall):
            if value.method not in known_methods:
                findings.append(f"UnresolvedMethod: {value.method!r} in {where}")
            check_value(value.receiver)
            for a in value.args:
                check_value(a)
        elif isinstance(value, BinOp):
            if value.op not in BIN_OPS:
                findings.append(f"UnknownOperator: {value.op!r} in {where}")
            check_value(value.lhs)
            check_value(value.rhs)
        elif isinstance(value, New):
            if value.type.is_object and value.type.kind not in modules:
                findings.append(
                    f"UnknownType: new {value.type.kind} in {where} has no module"
                )
            for a in value.args:
                check_value(a)
        elif isinstance(value, Call):
            if value.name not in methods:
                findings.append(f"UnresolvedCall: {value.name!r} in {where}")
            for a in value.args:
                check_value(a)
        elif isinstance(value, ListIndex):
            check_value(value.receiver)
            check_value(value.index)

    if isinstance(stmt, Assign):
        if not isinstance(stmt.target, (Var, ObjVar)):
            findings.append(f"NotAnLValue: assignment target in {where}")
        else:
            check_value(stmt.target)
        check_value(stmt.value)
    elif isinstance(stmt, Declaration):
        scope.add(stmt.name)
        init = getattr(stmt, "init", None)
        if init is not None:
            check_value(init)
    elif isinstance(stmt, Cond):
        check_value(stmt.cond)
        inner = set(scope)
        for s in stmt.then + stmt.otherwise:
            findings.extend(_check_statement(s, inner, methods, modules, mod, func, all_methods))
    elif isinstance(stmt, Foreach):
        check_value(stmt.iterable)
        inner = set(scope) | {stmt.var}
        for s in stmt.body:
            findings.extend(_check_statement(s, inner, methods, modules, mod, func, all_methods))
    elif isinstance(stmt, While):
        check_value(stmt.cond)
        inner = set(scope)
        for s in stmt.body:
            findings.extend(_check_statement(s, inner, methods, modules, mod, func, all_methods))
    elif isinstance(stmt, Return):
        if stmt.value is not None:
            check_value(stmt.value)
    elif isinstance(stmt, ValueStmt):
        check_value(stmt.value)
    elif isinstance(stmt, (ListInsert, ListAppend)):
        check_value(stmt.receiver)
        check_value(stmt.value)
    elif isinstance(stmt, CommentDelimit):
        if stmt.total_width < len(stmt.text) + 4:
            findings.append(
                f"BannerTooNarrow: width {stmt.total_width} cannot fit "
                f"{stmt.text!r} in {where}"
            )
    return findings


def flatten_blocks(code: AbstractCode) -> AbstractCode:
    """Collapse every body to a single block (used to test that blocks
    are layout-only)."""

    def flat(func: Transformation) -> Transformation:
        stmts = tuple(_flatten(func.body))
        return Transformation(
            func.name, func.scope, func.return_type, func.params, (Block(stmts),)
        )

    modules = tuple(
        CodeModule(m.name, m.scope, m.vars, tuple(flat(f) for f in m.funcs))
        for m in code.package.modules
    )
    return AbstractCode(Package(code.package.name, modules))


def to_debug_json(code: AbstractCode) -> str:
    """Stable JSON dump of the IR for snapshot tests."""
    import dataclasses
    import json

    def convert(obj):
        if dataclasses.is_dataclass(obj):
            d = {"_kind": type(obj).__name__}
            for f in dataclasses.fields(obj):
                d[f.name] = convert(getattr(obj, f.name))
            return d
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, tuple):
            return [convert(x) for x in obj]
        return obj

    return json.dumps(convert(code), indent=2, sort_keys=True)
