"""Diagnostics shared by the resolver, validator and CLI.

Text form is one line per diagnostic: ``LEVEL file:line:col CODE message``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .lexer import SourceSpan


class Level(str, Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True)
class Diagnostic:
    level: Level
    code: str
    message: str
    span: SourceSpan | None = None

    def to_text(self, file: str = "<input>") -> str:
        line = self.span.start_line if self.span else 0
        col = self.span.start_col if self.span else 0
        return f"{self.level.value.upper()} {file}:{line}:{col} {self.code} {self.message}"

    def to_json_obj(self, file: str = "<input>") -> dict:
        return {
            "level": self.level.value,
            "file": file,
            "line": self.span.start_line if self.span else 0,
            "col": self.span.start_col if self.span else 0,
            "code": self.code,
            "message": self.message,
        }


def error(code: str, message: str, span: SourceSpan | None = None) -> Diagnostic:
    return Diagnostic(Level.ERROR, code, message, span)


def warning(code: str, message: str, span: SourceSpan | None = None) -> Diagnostic:
    return Diagnostic(Level.WARNING, code, message, span)


def info(code: str, message: str, span: SourceSpan | None = None) -> Diagnostic:
    return Diagnostic(Level.INFO, code, message, span)


def to_json(diags: list[Diagnostic], file: str = "<input>") -> str:
    return json.dumps([d.to_json_obj(file) for d in diags], indent=2)


def has_errors(diags: list[Diagnostic]) -> bool:
    return any(d.level is Level.ERROR for d in diags)
