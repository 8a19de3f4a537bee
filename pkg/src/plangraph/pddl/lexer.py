"""Tokenizer for PDDL text: parentheses, names, variables, keywords, numbers.

Identifiers are case-insensitive per PDDL convention and lowered here; every
token keeps its 1-based line and column for diagnostics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import LexError

LPAREN = "("
RPAREN = ")"
NAME = "name"        # plain identifier, including '='
VARIABLE = "var"     # ?identifier
KEYWORD = "keyword"  # :identifier
NUMBER = "number"    # integer literal (validation rejects negatives later)
MINUS = "-"          # standalone type separator
EOF = "eof"

_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_\-.]*")
_NUMBER_RE = re.compile(r"[0-9]+")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    col: int

    def __repr__(self):
        return f"Token({self.kind}, {self.value!r}, {self.line}:{self.col})"


def tokenize(text: str, filename: str | None = None) -> list[Token]:
    """Tokenize PDDL text; raises LexError with position on a bad character."""
    tokens: list[Token] = []
    i = 0
    line = 1
    line_start = 0
    n = len(text)

    def col() -> int:
        return i - line_start + 1

    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
            line_start = i
            continue
        if ch in " \t\r\f":
            i += 1
            continue
        if ch == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "(":
            tokens.append(Token(LPAREN, "(", line, col()))
            i += 1
            continue
        if ch == ")":
            tokens.append(Token(RPAREN, ")", line, col()))
            i += 1
            continue
        if ch == "?":
            m = _NAME_RE.match(text, i + 1)
            if not m:
                raise LexError("'?' must be followed by an identifier",
                               filename=filename, line=line, column=col())
            tokens.append(Token(VARIABLE, "?" + m.group(0).lower(), line, col()))
            i = m.end()
            continue
        if ch == ":":
            m = _NAME_RE.match(text, i + 1)
            if not m:
                raise LexError("':' must be followed by an identifier",
                               filename=filename, line=line, column=col())
            tokens.append(Token(KEYWORD, ":" + m.group(0).lower(), line, col()))
            i = m.end()
            continue
        if ch == "-":
            nxt = text[i + 1] if i + 1 < n else " "
            if nxt in " \t\r\n\f()":
                tokens.append(Token(MINUS, "-", line, col()))
                i += 1
                continue
            m = _NUMBER_RE.match(text, i + 1)
            if m:
                tokens.append(Token(NUMBER, "-" + m.group(0), line, col()))
                i = m.end()
                continue
            raise LexError("identifiers may not start with '-'",
                           filename=filename, line=line, column=col())
        if ch == "=":
            tokens.append(Token(NAME, "=", line, col()))
            i += 1
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            tokens.append(Token(NUMBER, m.group(0), line, col()))
            i = m.end()
            continue
        m = _NAME_RE.match(text, i)
        if m:
            tokens.append(Token(NAME, m.group(0).lower(), line, col()))
            i = m.end()
            continue
        raise LexError(f"unexpected character {ch!r}",
                       filename=filename, line=line, column=col())

    tokens.append(Token(EOF, "", line, col()))
    return tokens
