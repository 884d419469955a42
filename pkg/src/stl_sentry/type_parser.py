"""Parse and normalize (possibly templated, possibly qualified) type expressions.

The grammar covers what the rules need: qualified names, template argument
lists, pointer/reference/const decorations on arguments, and opaque non-type
arguments.  An atomic ``>>`` token closing two nested argument lists is split
here; the lexer never has to know about bracket context.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexer import Token, TokenKind

# Keyword types are modeled as single-segment names.  Adjacent builtin
# keywords fuse into one segment ("unsigned long") so normalize round-trips.
BUILTIN_TYPES = frozenset(
    "bool char wchar_t char16_t char32_t int short long signed unsigned "
    "float double void".split()
)

_OPAQUE_KEYWORDS = frozenset({"true", "false", "nullptr", "this", "sizeof"})

# Statement-ish tokens that can never appear inside an argument list; hitting
# one of these while a '<' is open means the list is unbalanced.
_HARD_STOPS = frozenset({";", "{", "}", ")"})


@dataclass(frozen=True)
class TypeArg:
    """One template argument: a nested type or an opaque non-type value.

    Exactly one of ``expr``/``opaque`` is set; decorations apply to ``expr``.
    """

    expr: TypeExpr | None = None
    opaque: str | None = None
    const: bool = False
    pointers: int = 0
    reference: bool = False


@dataclass(frozen=True)
class TypeExpr:
    """A parsed type: qualifier segments plus an ordered argument list."""

    name: tuple[str, ...]
    args: tuple[TypeArg, ...] = ()
    span: tuple[int, int] = (0, 0)
    leading_qualified: bool = False

    @property
    def qualified_text(self) -> str:
        return "::".join(self.name)


@dataclass(frozen=True)
class ParseIssue:
    """A recoverable parse (or lex) failure, reported but never thrown past
    the scanner."""

    line: int
    col: int
    message: str


class TypeParseError(Exception):
    """Raised mid-expression when the input cannot be a type after all."""

    def __init__(self, line: int, col: int, message: str) -> None:
        super().__init__(f"{line}:{col}: {message}")
        self.issue = ParseIssue(line, col, message)


class _Cursor:
    """Token cursor with support for consuming an atomic '>>' as two '>'."""

    __slots__ = ("toks", "i", "half_gt")

    def __init__(self, toks: list[Token], i: int) -> None:
        self.toks = toks
        self.i = i
        self.half_gt = False  # first '>' of a '>>' already consumed

    def peek(self, ahead: int = 0) -> Token:
        j = min(self.i + ahead, len(self.toks) - 1)
        return self.toks[j]

    def advance(self) -> Token:
        tok = self.toks[self.i]
        if self.i < len(self.toks) - 1:
            self.i += 1
        return tok


def parse_type(tokens: list[Token], start: int) -> tuple[TypeExpr, int] | None:
    """Parse the longest type expression beginning at ``tokens[start]``.

    Returns ``(expr, next_index)`` or None when the token cannot begin a
    type (nothing is consumed).  Raises :class:`TypeParseError` for inputs
    that start like a type but cannot be one (unbalanced ``<``, constructs
    outside the grammar); the caller owns recovery.
    """
    cur = _Cursor(tokens, start)
    expr = _parse_expr(cur)
    if expr is None:
        return None
    if cur.half_gt:
        # A dangling second '>' of an atomic '>>' at top level has nothing
        # left to close; swallow the token so the caller resumes cleanly.
        cur.advance()
        cur.half_gt = False
    return expr, cur.i


def _parse_expr(cur: _Cursor) -> TypeExpr | None:
    tok = cur.peek()
    first = tok
    leading = False
    if tok.kind is TokenKind.PUNCTUATOR and tok.text == "::":
        if cur.peek(1).kind is not TokenKind.IDENTIFIER:
            return None
        leading = True
        cur.advance()
        tok = cur.peek()

    segments: list[str] = []
    if tok.kind is TokenKind.KEYWORD and tok.text in BUILTIN_TYPES:
        words = [cur.advance().text]
        while cur.peek().kind is TokenKind.KEYWORD and cur.peek().text in BUILTIN_TYPES:
            words.append(cur.advance().text)
        segments.append(" ".join(words))
        end = cur.toks[cur.i - 1].end
        return TypeExpr(tuple(segments), (), (first.start, end), leading)

    if tok.kind is not TokenKind.IDENTIFIER:
        return None
    segments.append(cur.advance().text)
    while (
        not cur.half_gt
        and cur.peek().text == "::"
        and cur.peek().kind is TokenKind.PUNCTUATOR
    ):
        if cur.peek(1).kind is not TokenKind.IDENTIFIER:
            nxt = cur.peek(1)
            raise TypeParseError(nxt.line, nxt.col, "expected identifier after '::'")
        cur.advance()
        segments.append(cur.advance().text)

    end = cur.toks[cur.i - 1].end
    args: tuple[TypeArg, ...] = ()
    if not cur.half_gt and cur.peek().text == "<" and cur.peek().kind is TokenKind.PUNCTUATOR:
        open_tok = cur.advance()
        args, end = _parse_args(cur, open_tok)
    return TypeExpr(tuple(segments), args, (first.start, end), leading)


def _at_closer(cur: _Cursor) -> bool:
    if cur.half_gt:
        return True
    tok = cur.peek()
    return tok.kind is TokenKind.PUNCTUATOR and tok.text in (">", ">>")


def _consume_closer(cur: _Cursor) -> int:
    """Consume one '>' worth of closing; returns the end offset covered."""
    tok = cur.peek()
    if cur.half_gt:
        cur.half_gt = False
        cur.advance()
        return tok.end
    if tok.text == ">":
        cur.advance()
        return tok.end
    # '>>': closes this level and leaves the second half for the parent.
    cur.half_gt = True
    return tok.start + 1


def _parse_args(cur: _Cursor, open_tok: Token) -> tuple[tuple[TypeArg, ...], int]:
    args: list[TypeArg] = []
    if _at_closer(cur):
        return (), _consume_closer(cur)
    while True:
        args.append(_parse_one_arg(cur, open_tok))
        tok = cur.peek()
        if _at_closer(cur):
            return tuple(args), _consume_closer(cur)
        if tok.text == "," and tok.kind is TokenKind.PUNCTUATOR:
            cur.advance()
            continue
        if tok.kind is TokenKind.END or tok.text in _HARD_STOPS:
            raise TypeParseError(
                open_tok.line, open_tok.col, "unbalanced '<' in template argument list"
            )
        raise TypeParseError(
            open_tok.line,
            open_tok.col,
            f"template argument list opened here cannot contain '{tok.text}'",
        )


def _parse_one_arg(cur: _Cursor, open_tok: Token) -> TypeArg:
    tok = cur.peek()
    if tok.kind is TokenKind.END or tok.text in _HARD_STOPS:
        raise TypeParseError(
            open_tok.line, open_tok.col, "unbalanced '<' in template argument list"
        )

    is_const = False
    if tok.kind is TokenKind.KEYWORD and tok.text == "const":
        is_const = True
        cur.advance()
        tok = cur.peek()

    opaque = _match_opaque(cur)
    if opaque is not None:
        return TypeArg(opaque=opaque, const=is_const)

    expr = _parse_expr(cur)
    if expr is None:
        raise TypeParseError(
            tok.line, tok.col, f"expected type or value, found '{tok.text}'"
        )
    pointers = 0
    reference = False
    while not cur.half_gt and cur.peek().text == "*":
        pointers += 1
        cur.advance()
    if not cur.half_gt and cur.peek().text in ("&", "&&"):
        reference = True
        cur.advance()
    return TypeArg(expr=expr, const=is_const, pointers=pointers, reference=reference)


def _match_opaque(cur: _Cursor) -> str | None:
    tok = cur.peek()
    if tok.kind in (TokenKind.NUMBER, TokenKind.CHAR, TokenKind.STRING):
        cur.advance()
        return tok.text
    if tok.kind is TokenKind.KEYWORD and tok.text in _OPAQUE_KEYWORDS:
        cur.advance()
        return tok.text
    if tok.text == "-" and cur.peek(1).kind is TokenKind.NUMBER:
        cur.advance()
        return "-" + cur.advance().text
    return None


def normalize(t: TypeExpr) -> str:
    """Canonical rendering: '::'-joined segments, one space after commas,
    no space around '::' or angle brackets, decorations as written in code."""
    text = t.qualified_text
    if t.leading_qualified:
        text = "::" + text
    if t.args:
        text += "<" + ", ".join(_arg_text(a) for a in t.args) + ">"
    return text


def _arg_text(a: TypeArg) -> str:
    core = a.opaque if a.opaque is not None else normalize(a.expr)  # type: ignore[arg-type]
    if a.const:
        core = "const " + core
    core += "*" * a.pointers
    if a.reference:
        core += "&"
    return core


def structurally_equal(a: TypeExpr, b: TypeExpr) -> bool:
    """Structural equality, ignoring source spans."""
    if a.name != b.name or a.leading_qualified != b.leading_qualified:
        return False
    if len(a.args) != len(b.args):
        return False
    for x, y in zip(a.args, b.args):
        if (x.opaque, x.const, x.pointers, x.reference) != (
            y.opaque,
            y.const,
            y.pointers,
            y.reference,
        ):
            return False
        if (x.expr is None) != (y.expr is None):
            return False
        if x.expr is not None and not structurally_equal(x.expr, y.expr):
            return False
    return True


def parse_type_text(text: str) -> TypeExpr | None:
    """Parse a standalone type written as text (config entries, tests)."""
    from .lexer import tokenize

    tokens, errors = tokenize(text)
    if errors:
        return None
    try:
        res = parse_type(tokens, 0)
    except TypeParseError:
        return None
    if res is None:
        return None
    expr, nxt = res
    if tokens[nxt].kind is not TokenKind.END:
        return None
    return expr
