"""Tokenizer for SAGA story scripts.

SAGA is a keyword-delimited language: a handful of capitalized English
words (STORY, GOES, WHEN, ...) separate free-form multi-word phrases.
Whitespace only delimits tokens and is otherwise irrelevant; commas and
curly braces are the only punctuation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto


KEYWORDS = frozenset(
    {"STORY", "INITIAL", "SECTION", "GOES", "WHEN", "WHERE", "OR", "AND"}
)

# ASCII whitespace; anything else printable is word material.
_WHITESPACE = frozenset(" \t\r\n\f\v")
_PUNCT = {"{", "}", ","}


class TokenKind(Enum):
    KEYWORD = auto()
    WORD = auto()
    LBRACE = auto()
    RBRACE = auto()
    COMMA = auto()
    EOF = auto()


@dataclass(frozen=True)
class SourceSpan:
    """1-based, inclusive source region."""

    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.start_line}:{self.start_col}"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: SourceSpan

    def is_keyword(self, word: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.lexeme == word


class LexError(Exception):
    """Raised for any tokenization failure."""

    def __init__(self, code: str, message: str, span: SourceSpan):
        super().__init__(f"{span} {code}: {message}")
        self.code = code
        self.message = message
        self.span = span


class UnterminatedBlockComment(LexError):
    def __init__(self, span: SourceSpan):
        super().__init__(
            "unterminated-block-comment", "block comment is never closed", span
        )


class NonAsciiCharacter(LexError):
    def __init__(self, ch: str, span: SourceSpan):
        super().__init__(
            "non-ascii-character",
            f"character {ch!r} is outside the visible ASCII range",
            span,
        )


def strip_comments(source: str) -> str:
    """Remove C-style comments while preserving line structure.

    Line comments vanish (their newline stays); block comments collapse
    to the newlines they contained, or a single space when they span no
    newline, so token separation and line numbers survive.  Block
    comments do not nest.
    """
    out: list[str] = []
    i = 0
    line, col = 1, 1
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "/" and i + 1 < n and source[i + 1] == "/":
            while i < n and source[i] != "\n":
                i += 1
                col += 1
        elif ch == "/" and i + 1 < n and source[i + 1] == "*":
            open_span = SourceSpan(line, col, line, col + 1)
            i += 2
            col += 2
            newlines = 0
            while True:
                if i >= n:
                    raise UnterminatedBlockComment(open_span)
                if source[i] == "*" and i + 1 < n and source[i + 1] == "/":
                    i += 2
                    col += 2
                    break
                if source[i] == "\n":
                    newlines += 1
                    line += 1
                    col = 1
                else:
                    col += 1
                i += 1
            out.append("\n" * newlines if newlines else " ")
        else:
            out.append(ch)
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1
    return "".join(out)


def tokenize(source: str) -> list[Token]:
    """Turn comment-free source into a token list ending in EOF."""
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch in _WHITESPACE:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1
            continue
        here = SourceSpan(line, col, line, col)
        if not (" " <= ch <= "~"):
            raise NonAsciiCharacter(ch, here)
        if ch in _PUNCT:
            kind = {
                "{": TokenKind.LBRACE,
                "}": TokenKind.RBRACE,
                ",": TokenKind.COMMA,
            }[ch]
            tokens.append(Token(kind, ch, here))
            i += 1
            col += 1
            continue
        # A word: maximal run of visible chars excluding whitespace and punctuation.
        start = i
        start_col = col
        while i < n and source[i] not in _WHITESPACE and source[i] not in _PUNCT:
            c = source[i]
            if not (" " <= c <= "~"):
                raise NonAsciiCharacter(c, SourceSpan(line, col, line, col))
            i += 1
            col += 1
        lexeme = source[start:i]
        span = SourceSpan(line, start_col, line, col - 1)
        kind = TokenKind.KEYWORD if lexeme in KEYWORDS else TokenKind.WORD
        tokens.append(Token(kind, lexeme, span))
    tokens.append(Token(TokenKind.EOF, "", SourceSpan(line, col, line, col)))
    return tokens


def lex(source: str) -> list[Token]:
    """Convenience: strip comments, then tokenize."""
    return tokenize(strip_comments(source))
