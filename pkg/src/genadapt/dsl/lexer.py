"""Tokenizer for ``.gaf`` sources.

Keywords are contextual: every word lexes as IDENT and the parser decides
whether it plays a keyword role.  Identifiers may carry inner hyphens
(``Q-Beh0``); a hyphen only joins two alphanumeric characters, so the edge
operator must be separated from its operands (``A - B``).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..diagnostics import Diagnostic, SourceLocation, error

IDENT = "IDENT"
INTEGER = "INTEGER"
STRING = "STRING"
PUNCT = "PUNCT"
COMMENT = "COMMENT"
EOF = "EOF"

_TWO_CHAR = ("==", "!=", "<=", ">=")
_ONE_CHAR = "{}();:,-=<>"
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}


def _digit(ch: str) -> bool:
    return ch.isascii() and ch.isdigit()


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    value: object
    loc: SourceLocation

    def __str__(self) -> str:
        if self.kind == EOF:
            return "end of file"
        return repr(self.text)


class Lexer:
    def __init__(self, text: str, path: str):
        self.text = text
        self.path = path
        self.pos = 0
        self.line = 1
        self.col = 1
        self.diagnostics: list[Diagnostic] = []

    def location(self) -> SourceLocation:
        return SourceLocation(self.path, self.line, self.col)

    def peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def advance(self, n: int = 1) -> str:
        chunk = self.text[self.pos : self.pos + n]
        for ch in chunk:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return chunk

    def tokens(self) -> list[Token]:
        out = []
        while True:
            tok = self.next_token()
            if tok is None:
                continue
            out.append(tok)
            if tok.kind == EOF:
                return out

    def next_token(self) -> Token | None:
        while self.peek() and self.peek() in " \t\r\n\f\ufeff":
            self.advance()
        loc = self.location()
        ch = self.peek()
        if not ch:
            return Token(EOF, "", None, loc)
        if ch == "/" and self.peek(1) == "/":
            start = self.pos
            while self.peek() and self.peek() != "\n":
                self.advance()
            body = self.text[start + 2 : self.pos].rstrip("\r")
            return Token(COMMENT, self.text[start : self.pos], body, loc)
        if ch.isascii() and ch.isalpha():
            return self.identifier(loc)
        if _digit(ch) or (ch == "-" and _digit(self.peek(1))):
            return self.integer(loc)
        if ch == '"':
            return self.string(loc)
        two = ch + self.peek(1)
        if two in _TWO_CHAR:
            self.advance(2)
            return Token(PUNCT, two, two, loc)
        if ch in _ONE_CHAR:
            self.advance()
            return Token(PUNCT, ch, ch, loc)
        self.advance()
        self.diagnostics.append(error("bad-character", f"unexpected character {ch!r}", loc))
        return None

    def identifier(self, loc: SourceLocation) -> Token:
        start = self.pos
        self.advance()
        while True:
            ch = self.peek()
            if ch.isascii() and (ch.isalnum() or ch == "_"):
                self.advance()
            elif ch == "-" and self.peek(1).isascii() and self.peek(1).isalnum():
                self.advance()
            else:
                break
        word = self.text[start : self.pos]
        return Token(IDENT, word, word, loc)

    def integer(self, loc: SourceLocation) -> Token:
        start = self.pos
        if self.peek() == "-":
            self.advance()
        while _digit(self.peek()):
            self.advance()
        text = self.text[start : self.pos]
        return Token(INTEGER, text, int(text), loc)

    def string(self, loc: SourceLocation) -> Token | None:
        start = self.pos
        self.advance()
        chars = []
        while True:
            ch = self.peek()
            if not ch or ch == "\n":
                self.diagnostics.append(error("unterminated-string", "string literal is not closed", loc))
                return None
            self.advance()
            if ch == '"':
                break
            if ch == "\\":
                esc = self.peek()
                if esc in _ESCAPES:
                    self.advance()
                    chars.append(_ESCAPES[esc])
                    continue
                self.diagnostics.append(
                    error("bad-escape", f"unknown escape sequence \\{esc}", self.location())
                )
                continue
            chars.append(ch)
        return Token(STRING, self.text[start : self.pos], "".join(chars), loc)


def tokenize(text: str, path: str) -> tuple[list[Token], list[Diagnostic]]:
    lexer = Lexer(text, path)
    toks = lexer.tokens()
    return toks, lexer.diagnostics


def quote(value: str) -> str:
    """Render ``value`` as a string literal the lexer reads back unchanged."""
    out = ['"']
    for ch in value:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\t":
            out.append("\\t")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)
