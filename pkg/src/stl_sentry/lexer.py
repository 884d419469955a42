"""Tokenizer for C++ source text.

Produces a flat token stream with exact source spans.  Comments are kept as
tokens (the suppression marks live in them) and preprocessor directives are
swallowed as single line-tokens so they can never contribute use sites.
No preprocessing, no trigraphs; raw string literals are supported.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class TokenKind(Enum):
    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    PUNCTUATOR = "punctuator"
    NUMBER = "number-literal"
    STRING = "string-literal"
    CHAR = "char-literal"
    COMMENT = "comment"
    DIRECTIVE = "directive"
    END = "end-of-input"


@dataclass(frozen=True)
class Token:
    """One lexical unit.  ``text`` is the exact source substring at ``span``."""

    kind: TokenKind
    text: str
    line: int  # 1-based
    col: int  # 1-based
    start: int
    end: int  # half-open offset into the source string

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class LexError:
    line: int
    col: int
    message: str


KEYWORDS = frozenset(
    """
    asm auto bool break case catch char char16_t char32_t class const
    const_cast constexpr continue decltype default delete do double
    dynamic_cast else enum explicit export extern false float for friend
    goto if inline int long mutable namespace new noexcept nullptr operator
    private protected public register reinterpret_cast return short signed
    sizeof static static_assert static_cast struct switch template this
    thread_local throw true try typedef typeid typename union unsigned using
    virtual void volatile wchar_t while
    """.split()
)

# Longest match first; anything not listed falls back to a single character.
_PUNCTUATORS = (
    "<<=", ">>=", "->*", "...",
    "::", "->", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "++", "--", ".*", "##",
)

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
# pp-number: a digit (or dot-digit) followed by identifier chars, dots,
# digit separators, and signed exponents.
_NUMBER_RE = re.compile(r"\.?[0-9](?:[eEpP][+-]|[0-9a-zA-Z_.'])*")
_RAW_STRING_START_RE = re.compile(r'(?:u8|u|U|L)?R"')
_STRING_START_RE = re.compile(r'(?:u8|u|U|L)?"')
_CHAR_START_RE = re.compile(r"(?:u8|u|U|L)?'")

_WHITESPACE = " \t\r\n\f\v"


class _Lexer:
    def __init__(self, source: str) -> None:
        self.src = source
        self.pos = 0
        self.line = 1
        self.line_start = 0
        self.tokens: list[Token] = []
        self.errors: list[LexError] = []

    def col(self, pos: int) -> int:
        return pos - self.line_start + 1

    def _count_newlines(self, start: int, end: int) -> None:
        chunk = self.src[start:end]
        n = chunk.count("\n")
        if n:
            self.line += n
            self.line_start = start + chunk.rindex("\n") + 1

    def emit(self, kind: TokenKind, start: int, end: int, line: int, col: int) -> None:
        self.tokens.append(Token(kind, self.src[start:end], line, col, start, end))

    def error(self, line: int, col: int, message: str) -> None:
        self.errors.append(LexError(line, col, message))

    def at_line_start(self, pos: int) -> bool:
        return all(c in " \t" for c in self.src[self.line_start : pos])

    def _line_end(self, pos: int) -> int:
        nl = self.src.find("\n", pos)
        return len(self.src) if nl < 0 else nl

    def run(self) -> None:
        src = self.src
        n = len(src)
        while True:
            while self.pos < n and src[self.pos] in _WHITESPACE:
                if src[self.pos] == "\n":
                    self.line += 1
                    self.line_start = self.pos + 1
                self.pos += 1
            if self.pos >= n:
                break
            start, line, col = self.pos, self.line, self.col(self.pos)
            c = src[start]

            if c == "#" and self.at_line_start(start):
                self._directive(start, line, col)
                continue
            if src.startswith("//", start):
                end = self._line_end(start)
                self.emit(TokenKind.COMMENT, start, end, line, col)
                self.pos = end
                continue
            if src.startswith("/*", start):
                close = src.find("*/", start + 2)
                if close < 0:
                    # Unterminated: close the comment at end of line so the
                    # rest of the file still gets scanned.
                    self.error(line, col, "unterminated block comment")
                    end = self._line_end(start)
                else:
                    end = close + 2
                self.emit(TokenKind.COMMENT, start, end, line, col)
                self._count_newlines(start, end)
                self.pos = end
                continue

            m = _RAW_STRING_START_RE.match(src, start)
            if m:
                self._raw_string(start, m.end(), line, col)
                continue
            m = _STRING_START_RE.match(src, start)
            if m:
                self._quoted(start, m.end(), '"', TokenKind.STRING, line, col)
                continue
            m = _CHAR_START_RE.match(src, start)
            if m:
                self._quoted(start, m.end(), "'", TokenKind.CHAR, line, col)
                continue

            m = _NUMBER_RE.match(src, start)
            if m:
                self.emit(TokenKind.NUMBER, start, m.end(), line, col)
                self.pos = m.end()
                continue

            m = _IDENT_RE.match(src, start)
            if m:
                kind = TokenKind.KEYWORD if m.group() in KEYWORDS else TokenKind.IDENTIFIER
                self.emit(kind, start, m.end(), line, col)
                self.pos = m.end()
                continue

            for p in _PUNCTUATORS:
                if src.startswith(p, start):
                    self.emit(TokenKind.PUNCTUATOR, start, start + len(p), line, col)
                    self.pos = start + len(p)
                    break
            else:
                # Single-char punctuator; unknown bytes pass through so the
                # token stream stays lossless.
                self.emit(TokenKind.PUNCTUATOR, start, start + 1, line, col)
                self.pos = start + 1

        self.tokens.append(
            Token(TokenKind.END, "", self.line, self.col(len(src)), len(src), len(src))
        )

    def _directive(self, start: int, line: int, col: int) -> None:
        # One token per logical line; backslash continuations are folded in.
        pos = start
        while True:
            end = self._line_end(pos)
            if end < len(self.src) and self.src[start:end].endswith("\\"):
                pos = end + 1
                continue
            break
        self.emit(TokenKind.DIRECTIVE, start, end, line, col)
        self._count_newlines(start, end)
        self.pos = end

    def _quoted(
        self, start: int, body: int, quote: str, kind: TokenKind, line: int, col: int
    ) -> None:
        src = self.src
        pos = body
        while pos < len(src):
            c = src[pos]
            if c == "\\" and pos + 1 < len(src):
                pos += 2
                continue
            if c == quote:
                self.emit(kind, start, pos + 1, line, col)
                self._count_newlines(start, pos + 1)
                self.pos = pos + 1
                return
            if c == "\n":
                break
            pos += 1
        # Unterminated: keep what we saw on this line, resume on the next.
        self.error(line, col, f"unterminated {kind.value}")
        end = self._line_end(start)
        self.emit(kind, start, end, line, col)
        self.pos = end

    def _raw_string(self, start: int, body: int, line: int, col: int) -> None:
        src = self.src
        paren = src.find("(", body)
        delim = src[body:paren] if 0 <= paren <= body + 16 else None
        if delim is not None:
            close = src.find(")" + delim + '"', paren + 1)
            if close >= 0:
                end = close + len(delim) + 2
                self.emit(TokenKind.STRING, start, end, line, col)
                self._count_newlines(start, end)
                self.pos = end
                return
        self.error(line, col, "unterminated raw string literal")
        end = self._line_end(start)
        self.emit(TokenKind.STRING, start, end, line, col)
        self.pos = end


def tokenize(source: str) -> tuple[list[Token], list[LexError]]:
    """Tokenize C++ source.

    Returns the token list (terminated by an end-of-input token) and any
    lex-error records.  Lexing is best-effort: an unterminated literal or
    block comment is reported at its opening delimiter and scanning resumes
    on the next line.  ``>>`` is kept atomic; the type parser splits it.
    """
    lx = _Lexer(source)
    lx.run()
    return lx.tokens, lx.errors
