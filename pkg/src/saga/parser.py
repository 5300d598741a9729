"""Recursive-descent parser for SAGA token streams.

Labels are greedy: consecutive WORD tokens fold into one phrase until a
keyword or punctuation ends it.  The first grammar violation aborts the
parse with a positioned SagaSyntaxError.
"""

from __future__ import annotations

from .ast import Label, SectionDecl, StoryAst, TransitionDecl
from .lexer import SourceSpan, Token, TokenKind, lex


class SagaSyntaxError(Exception):
    def __init__(self, expected: str, found: Token, code: str = "syntax-error"):
        shown = found.lexeme if found.kind is not TokenKind.EOF else "end of input"
        super().__init__(f"{found.span} expected {expected}, found {shown!r}")
        self.expected = expected
        self.found = found
        self.span = found.span
        self.code = code


class MissingStoryName(SagaSyntaxError):
    def __init__(self, found: Token):
        super().__init__("STORY <name>", found, code="missing-story-name")


class MissingInitial(SagaSyntaxError):
    def __init__(self, found: Token):
        super().__init__("INITIAL <node>", found, code="missing-initial")


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.cur
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def expect_keyword(self, word: str) -> Token:
        if not self.cur.is_keyword(word):
            raise SagaSyntaxError(word, self.cur)
        return self.advance()


def _parse_label(c: _Cursor, what: str) -> tuple[Label, SourceSpan]:
    if c.cur.kind is not TokenKind.WORD:
        raise SagaSyntaxError(what, c.cur)
    words = []
    first = c.cur.span
    last = first
    while c.cur.kind is TokenKind.WORD:
        tok = c.advance()
        words.append(tok.lexeme)
        last = tok.span
    span = SourceSpan(first.start_line, first.start_col, last.end_line, last.end_col)
    return Label(tuple(words)), span


def _parse_transition(c: _Cursor) -> TransitionDecl:
    pre: list[Label] = []
    label, start = _parse_label(c, "a source node name")
    pre.append(label)
    while c.cur.is_keyword("OR"):
        c.advance()
        label, _ = _parse_label(c, "a node name after OR")
        pre.append(label)
    c.expect_keyword("GOES")
    dest, _ = _parse_label(c, "a destination node name")
    c.expect_keyword("WHEN")
    events: list[Label] = []
    label, end = _parse_label(c, "an event name")
    events.append(label)
    while c.cur.is_keyword("AND"):
        c.advance()
        label, end = _parse_label(c, "an event name after AND")
        events.append(label)
    span = SourceSpan(start.start_line, start.start_col, end.end_line, end.end_col)
    return TransitionDecl(tuple(pre), dest, tuple(events), span)


def _parse_transition_list(c: _Cursor) -> list[TransitionDecl]:
    transitions = [_parse_transition(c)]
    while c.cur.kind is TokenKind.COMMA:
        c.advance()
        transitions.append(_parse_transition(c))
    return transitions


def _parse_section(c: _Cursor) -> SectionDecl:
    start = c.expect_keyword("SECTION").span
    name, _ = _parse_label(c, "a section name")
    if c.cur.kind is not TokenKind.LBRACE:
        raise SagaSyntaxError("'{'", c.cur)
    c.advance()
    transitions = _parse_transition_list(c)
    if c.cur.kind is not TokenKind.RBRACE:
        raise SagaSyntaxError("'}' or ','", c.cur)
    end = c.advance().span
    span = SourceSpan(start.start_line, start.start_col, end.end_line, end.end_col)
    return SectionDecl(name, tuple(transitions), span)


def parse(tokens: list[Token]) -> StoryAst:
    """Parse a full token stream (ending in EOF) into a StoryAst."""
    c = _Cursor(tokens)
    if not c.cur.is_keyword("STORY"):
        raise MissingStoryName(c.cur)
    c.advance()
    if c.cur.kind is not TokenKind.WORD:
        raise MissingStoryName(c.cur)
    story_name, _ = _parse_label(c, "a story name")
    if not c.cur.is_keyword("INITIAL"):
        raise MissingInitial(c.cur)
    c.advance()
    if c.cur.kind is not TokenKind.WORD:
        raise MissingInitial(c.cur)
    initial, _ = _parse_label(c, "an initial node name")

    sections = [_parse_section(c)]
    while c.cur.is_keyword("SECTION"):
        sections.append(_parse_section(c))

    c.expect_keyword("WHERE")
    # The WHERE list may be empty; the keyword itself is required.
    where: list[TransitionDecl] = []
    if c.cur.kind is not TokenKind.EOF:
        where = _parse_transition_list(c)
    if c.cur.kind is not TokenKind.EOF:
        raise SagaSyntaxError("end of input", c.cur)
    return StoryAst(story_name, initial, tuple(sections), tuple(where))


def parse_text(source: str) -> StoryAst:
    """Strip comments, tokenize and parse in one step."""
    return parse(lex(source))
