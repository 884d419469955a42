"""Extract type use sites from one translation unit's token stream.

The walk is statement-level and heuristic: it recognizes variable and alias
declarations, base-class specifiers, function parameters, new-expressions,
and the explicit type argument of the four cast keywords.  Anything it
cannot read is skipped silently; the contract is "misses are silent, never
false positives on non-type statements".  Includes are not followed and
nothing is preprocessed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .lexer import Token, TokenKind
from .type_parser import (
    ParseIssue,
    TypeArg,
    TypeExpr,
    TypeParseError,
    parse_type,
)

ALIAS_DEPTH_LIMIT = 32


class SiteKind(Enum):
    VARIABLE_DECL = "variable-decl"
    ALIAS_DECL = "alias-decl"
    BASE_CLASS = "base-class"
    FUNCTION_PARAM = "function-param"
    NEW_EXPR = "new-expr"
    TEMPLATE_ARG = "explicit-template-arg"


@dataclass(frozen=True)
class UseSite:
    """One place where a type is instantiated or referenced."""

    kind: SiteKind
    type: TypeExpr
    line: int
    col: int
    same_line_comments: tuple[str, ...] = ()
    # Comments inherited from the declaration lines of aliases this site's
    # type was expanded through (marks there suppress the expansion).
    alias_comments: tuple[str, ...] = ()
    # True for the Deprecated<Self> base-class specifier that marks a class
    # deprecated; the DEPRECATED rule must not fire on the marker itself.
    is_deprecation_marker: bool = False
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class AliasEntry:
    type: TypeExpr
    line: int
    comments: tuple[str, ...]


@dataclass
class ScanResult:
    sites: list[UseSite]
    aliases: dict[str, AliasEntry]
    deprecated: frozenset[str]
    errors: list[ParseIssue]


_DECL_PREFIXES = frozenset(
    "static const inline virtual explicit constexpr extern mutable volatile "
    "register friend typename thread_local".split()
)

_SKIP_STMT_KEYWORDS = frozenset(
    "if else for while do switch case default break continue goto return try "
    "catch throw delete sizeof static_assert asm decltype noexcept".split()
)

_CAST_KEYWORDS = frozenset(
    {"static_cast", "dynamic_cast", "reinterpret_cast", "const_cast"}
)

_ACCESS_KEYWORDS = frozenset({"public", "protected", "private"})

_PARAM_PREFIXES = frozenset(
    "const volatile register typename struct class enum union".split()
)


@dataclass
class _Scope:
    kind: str  # "class" | "function" | "namespace" | "block"
    class_name: str | None = None
    params: frozenset[str] = frozenset()


class _Scanner:
    def __init__(self, tokens: list[Token]) -> None:
        self.sig: list[Token] = [
            t
            for t in tokens
            if t.kind not in (TokenKind.COMMENT, TokenKind.DIRECTIVE)
        ]
        self.comments_by_line: dict[int, list[str]] = {}
        for t in tokens:
            if t.kind is TokenKind.COMMENT:
                self.comments_by_line.setdefault(t.line, []).append(t.text)
        self.i = 0
        self.scopes: list[_Scope] = []
        self.pending_params: frozenset[str] = frozenset()
        self.sites: list[UseSite] = []
        self.aliases: dict[str, AliasEntry] = {}
        self.deprecated: set[str] = set()
        self.errors: list[ParseIssue] = []

    # -- token helpers ---------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        j = min(self.i + ahead, len(self.sig) - 1)
        return self.sig[j]

    def advance(self, n: int = 1) -> None:
        self.i = min(self.i + n, len(self.sig) - 1)

    def at_end(self) -> bool:
        return self.peek().kind is TokenKind.END

    # -- scope helpers ---------------------------------------------------

    def push(self, scope: _Scope) -> None:
        self.scopes.append(scope)

    def pop(self) -> None:
        if self.scopes:
            self.scopes.pop()

    @property
    def active_params(self) -> frozenset[str]:
        names: set[str] = set(self.pending_params)
        for s in self.scopes:
            names |= s.params
        return frozenset(names)

    def current_class(self) -> str | None:
        for s in reversed(self.scopes):
            if s.kind == "class":
                return s.class_name
        return None

    def take_pending(self) -> frozenset[str]:
        params = self.pending_params
        self.pending_params = frozenset()
        return params

    # -- site emission ---------------------------------------------------

    def mentions_param(self, t: TypeExpr) -> bool:
        params = self.active_params
        if not params:
            return False
        if t.name[0] in params:
            return True
        return any(
            arg.expr is not None and self.mentions_param(arg.expr) for arg in t.args
        )

    def emit(self, kind: SiteKind, texpr: TypeExpr, tok: Token, **flags) -> None:
        if self.mentions_param(texpr):
            return
        comments = tuple(self.comments_by_line.get(tok.line, ()))
        self.sites.append(
            UseSite(kind, texpr, tok.line, tok.col, comments, **flags)
        )

    def record_error(self, exc: TypeParseError) -> None:
        self.errors.append(exc.issue)

    # -- type parsing ----------------------------------------------------

    def parse_type_here(self) -> tuple[TypeExpr, Token] | None:
        """Parse a type at the cursor; advances on success, else stays put.
        Raises TypeParseError like the underlying parser."""
        tok = self.peek()
        res = parse_type(self.sig, self.i)
        if res is None:
            return None
        texpr, nxt = res
        self.i = nxt
        return texpr, tok

    # -- statement machinery ----------------------------------------------

    def skip_balanced(self, open_text: str, close_text: str) -> None:
        """Cursor sits on the opener; skip past its matching closer,
        scanning the interior for new-expressions and casts."""
        depth = 0
        while not self.at_end():
            t = self.peek()
            if t.text == open_text:
                depth += 1
            elif t.text == close_text:
                depth -= 1
                if depth == 0:
                    self.advance()
                    return
            elif t.text == "new" and t.kind is TokenKind.KEYWORD:
                self.scan_new_expr()
                continue
            elif t.text in _CAST_KEYWORDS and self.peek(1).text == "<":
                self.scan_cast()
                continue
            self.advance()

    def scan_statement_generic(self) -> None:
        """Consume one statement-ish region: up to ';' at depth zero, or
        enter a '{' block scope.  Picks up new-expressions and casts."""
        while not self.at_end():
            t = self.peek()
            if t.text == ";":
                self.advance()
                return
            if t.text == "}":
                return  # scope end; main loop owns it
            if t.text == "{":
                self.advance()
                self.push(_Scope("block", params=self.take_pending()))
                return
            if t.text in ("(", "["):
                self.skip_balanced(t.text, ")" if t.text == "(" else "]")
                continue
            if t.text == "new" and t.kind is TokenKind.KEYWORD:
                self.scan_new_expr()
                continue
            if t.text in _CAST_KEYWORDS and self.peek(1).text == "<":
                self.scan_cast()
                continue
            self.advance()

    def recover_statement(self) -> None:
        """After a parse error: skip to the next ';' or scope boundary."""
        while not self.at_end():
            t = self.peek()
            if t.text == ";":
                self.advance()
                return
            if t.text in ("{", "}"):
                return
            self.advance()

    # -- constructs --------------------------------------------------------

    def scan_new_expr(self) -> None:
        self.advance()  # 'new'
        if self.peek().text == "(":  # placement form
            self.skip_balanced("(", ")")
        try:
            got = self.parse_type_here()
        except TypeParseError as exc:
            self.record_error(exc)
            self.recover_statement()
            return
        if got is not None:
            texpr, tok = got
            self.emit(SiteKind.NEW_EXPR, texpr, tok)

    def scan_cast(self) -> None:
        self.advance(2)  # cast keyword, '<'
        try:
            got = self.parse_type_here()
        except TypeParseError as exc:
            self.record_error(exc)
            self.recover_statement()
            return
        if got is not None:
            texpr, tok = got
            self.emit(SiteKind.TEMPLATE_ARG, texpr, tok)
        # declarator decorations inside the cast's angle brackets
        while self.peek().text in ("*", "&", "&&", "const"):
            self.advance()
        if self.peek().text in (">", ">>"):
            self.advance()

    def scan_template_intro(self) -> None:
        self.advance(2)  # 'template' '<'
        depth = 1
        prev: Token | None = None
        names: set[str] = set()
        while depth > 0 and not self.at_end():
            t = self.peek()
            if t.text == "<":
                depth += 1
            elif t.text == ">":
                depth -= 1
            elif t.text == ">>":
                depth -= 2
            elif depth == 1 and t.kind is TokenKind.IDENTIFIER:
                if prev is not None and prev.text in ("class", "typename"):
                    names.add(t.text)
                elif (
                    self.peek(1).text in (",", ">", ">>", "=")
                    and prev is not None
                    and prev.text not in ("::", "=", ",", "<")
                ):
                    names.add(t.text)  # non-type parameter name
            prev = t
            self.advance()
        self.pending_params = self.pending_params | frozenset(names)

    def scan_class(self) -> None:
        self.advance()  # 'class' | 'struct'
        name: str | None = None
        if self.peek().kind is TokenKind.IDENTIFIER:
            name = self.peek().text
            self.advance()
            while self.peek().text == "::" and self.peek(1).kind is TokenKind.IDENTIFIER:
                name = self.peek(1).text
                self.advance(2)
        t = self.peek()
        if t.text == ":":
            self.advance()
            self.scan_base_list(name)
            t = self.peek()
        if t.text == "{":
            self.advance()
            self.push(_Scope("class", class_name=name, params=self.take_pending()))
            return
        if t.text == ";":
            self.advance()
            self.take_pending()
            return
        # Elaborated declarations ('class Foo f;') and anything else: not a
        # construct we read.  Silent skip.
        self.take_pending()
        self.scan_statement_generic()

    def scan_base_list(self, class_name: str | None) -> None:
        while not self.at_end():
            while self.peek().text in ("virtual",) or self.peek().text in _ACCESS_KEYWORDS:
                self.advance()
            try:
                got = self.parse_type_here()
            except TypeParseError as exc:
                self.record_error(exc)
                self.recover_statement()
                return
            if got is None:
                self.recover_statement()
                return
            texpr, tok = got
            marker = self.is_self_deprecation(texpr, class_name)
            if marker and class_name is not None:
                self.deprecated.add(class_name)
            self.emit(
                SiteKind.BASE_CLASS, texpr, tok, is_deprecation_marker=marker
            )
            if self.peek().text == ",":
                self.advance()
                continue
            return

    @staticmethod
    def is_self_deprecation(texpr: TypeExpr, class_name: str | None) -> bool:
        if class_name is None or texpr.name[-1] != "Deprecated":
            return False
        if len(texpr.args) != 1:
            return False
        arg = texpr.args[0]
        return arg.expr is not None and arg.expr.name == (class_name,)

    def scan_namespace(self) -> None:
        self.advance()
        while self.peek().kind is TokenKind.IDENTIFIER or self.peek().text == "::":
            self.advance()
        if self.peek().text == "{":
            self.advance()
            self.push(_Scope("namespace", params=self.take_pending()))
        else:
            self.scan_statement_generic()

    def skip_enum_or_union(self) -> None:
        self.advance()
        while not self.at_end() and self.peek().text not in ("{", ";"):
            self.advance()
        if self.peek().text == "{":
            self.skip_balanced("{", "}")
        if self.peek().text == ";":
            self.advance()

    def scan_typedef(self) -> None:
        self.advance()  # 'typedef'
        while self.peek().text in _DECL_PREFIXES:
            self.advance()
        try:
            got = self.parse_type_here()
        except TypeParseError as exc:
            self.record_error(exc)
            self.recover_statement()
            return
        if got is None:
            self.scan_statement_generic()
            return
        texpr, tok = got
        while self.peek().text in ("*", "&"):
            self.advance()
        if self.peek().kind is TokenKind.IDENTIFIER and self.peek(1).text == ";":
            self.register_alias(self.peek().text, texpr, tok)
            self.advance(2)
        else:
            # Function-pointer and array typedefs are outside the grammar.
            self.scan_statement_generic()

    def scan_using(self) -> None:
        self.advance()  # 'using'
        t = self.peek()
        if t.text == "namespace":
            self.scan_statement_generic()
            return
        if t.kind is TokenKind.IDENTIFIER and self.peek(1).text == "=":
            alias_name = t.text
            self.advance(2)
            try:
                got = self.parse_type_here()
            except TypeParseError as exc:
                self.record_error(exc)
                self.recover_statement()
                return
            if got is None:
                self.scan_statement_generic()
                return
            texpr, tok = got
            self.register_alias(alias_name, texpr, tok)
            self.scan_statement_generic()
            return
        self.scan_statement_generic()

    def register_alias(self, name: str, texpr: TypeExpr, tok: Token) -> None:
        # A dependent alias body would only ever expand to dependent types;
        # neither the entry nor the site is recorded.
        if self.mentions_param(texpr):
            return
        comments = tuple(self.comments_by_line.get(tok.line, ()))
        self.aliases[name] = AliasEntry(texpr, tok.line, comments)
        self.emit(SiteKind.ALIAS_DECL, texpr, tok)

    # -- declarations ------------------------------------------------------

    def scan_declaration_or_expression(self) -> None:
        stmt_start = self.i
        while self.peek().text in _DECL_PREFIXES:
            self.advance()
        try:
            got = self.parse_type_here()
        except TypeParseError as exc:
            self.record_error(exc)
            self.recover_statement()
            return
        if got is None:
            self.i = stmt_start
            self.scan_statement_generic()
            return
        texpr, tok = got
        self.finish_after_type(texpr, tok, stmt_start)

    def finish_after_type(self, texpr: TypeExpr, tok: Token, stmt_start: int) -> None:
        while self.peek().text in ("*", "&", "&&", "const"):
            self.advance()
        t = self.peek()

        if t.kind is TokenKind.IDENTIFIER:
            self.advance()
            while self.peek().text == "::" and self.peek(1).kind is TokenKind.IDENTIFIER:
                self.advance(2)
            nxt = self.peek()
            if nxt.text == "(":
                self.function_or_variable(texpr, tok)
                return
            if nxt.text in (";", "=", ",", "[", "{", ":"):
                self.emit(SiteKind.VARIABLE_DECL, texpr, tok)
                self.take_pending()
                self.scan_statement_generic()
                return
            self.i = stmt_start
            self.scan_statement_generic()
            return

        if t.text == "(":
            cls = self.current_class()
            if cls is not None and texpr.name[-1] == cls and not texpr.args:
                # constructor declaration/definition
                self.function_or_variable(None, tok)
                return
            self.i = stmt_start
            self.scan_statement_generic()
            return

        if t.text == "operator" and t.kind is TokenKind.KEYWORD:
            self.advance()
            if self.peek().text == "(" and self.peek(1).text == ")":
                self.advance(2)  # the call-operator symbol
            else:
                while not self.at_end() and self.peek().text not in ("(", ";", "{", "}"):
                    self.advance()
            if self.peek().text == "(":
                self.function_or_variable(None, tok)
                return
            self.scan_statement_generic()
            return

        self.i = stmt_start
        self.scan_statement_generic()

    def function_or_variable(self, var_type: TypeExpr | None, type_tok: Token) -> None:
        """Cursor sits on '(' after a declarator (or constructor name).
        Decide between a function's parameter list and a variable with a
        constructor-style initializer."""
        save = self.i
        params = self.try_parse_params()
        if params is not None and self.peek().text in (
            ";", "{", "=", ":", "const", "noexcept", "override", "final",
            "volatile", "&", "&&", "throw", "->",
        ):
            for ptexpr, ptok in params:
                self.emit(SiteKind.FUNCTION_PARAM, ptexpr, ptok)
            self.finish_function_tail()
            return
        self.i = save
        if var_type is not None:
            self.emit(SiteKind.VARIABLE_DECL, var_type, type_tok)
        self.take_pending()
        self.scan_statement_generic()

    def finish_function_tail(self) -> None:
        while not self.at_end():
            t = self.peek()
            if t.text in ("const", "volatile", "noexcept", "override", "final", "&", "&&"):
                self.advance()
                continue
            if t.text == "throw" and self.peek(1).text == "(":
                self.advance()
                self.skip_balanced("(", ")")
                continue
            if t.text == "->":  # trailing return type: skip to body or ';'
                while not self.at_end() and self.peek().text not in ("{", ";"):
                    self.advance()
                continue
            break
        t = self.peek()
        if t.text == ":":
            # constructor initializer list: skip to the body brace
            self.advance()
            while not self.at_end() and self.peek().text != "{":
                if self.peek().text == "(":
                    self.skip_balanced("(", ")")
                    continue
                if self.peek().text in (";", "}"):
                    return
                self.advance()
            t = self.peek()
        if t.text == "{":
            self.advance()
            self.push(_Scope("function", params=self.take_pending()))
            return
        if t.text == "=":  # '= 0', '= default', '= delete'
            self.take_pending()
            self.scan_statement_generic()
            return
        if t.text == ";":
            self.advance()
        self.take_pending()

    def try_parse_params(self) -> list[tuple[TypeExpr, Token]] | None:
        """Parse '(' parameter-declaration-list ')'.  Returns the parameter
        types, or None (cursor position is then unspecified; caller saved)."""
        self.advance()  # '('
        out: list[tuple[TypeExpr, Token]] = []
        if self.peek().text == ")":
            self.advance()
            return out
        while True:
            if self.peek().text == "...":
                self.advance()
            else:
                while self.peek().text in _PARAM_PREFIXES:
                    self.advance()
                try:
                    got = self.parse_type_here()
                except TypeParseError:
                    return None
                if got is None:
                    return None
                ptexpr, ptok = got
                while self.peek().text in ("*", "&", "&&", "const"):
                    self.advance()
                if self.peek().kind is TokenKind.IDENTIFIER:
                    self.advance()
                while self.peek().text == "[":
                    self.skip_brackets_flat()
                if self.peek().text == "=":
                    self.advance()
                    if not self.skip_default_argument():
                        return None
                out.append((ptexpr, ptok))
            t = self.peek()
            if t.text == ",":
                self.advance()
                continue
            if t.text == ")":
                self.advance()
                return out
            return None

    def skip_brackets_flat(self) -> None:
        depth = 0
        while not self.at_end():
            t = self.peek()
            if t.text == "[":
                depth += 1
            elif t.text == "]":
                depth -= 1
                if depth == 0:
                    self.advance()
                    return
            self.advance()

    def skip_default_argument(self) -> bool:
        depth = 0
        while not self.at_end():
            t = self.peek()
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                if depth == 0:
                    return True
                depth -= 1
            elif t.text == "," and depth == 0:
                return True
            elif t.text in (";", "{", "}"):
                return False
            self.advance()
        return False

    # -- main loop ---------------------------------------------------------

    def run(self) -> None:
        while not self.at_end():
            t = self.peek()
            if t.text == "}":
                self.advance()
                self.pop()
                if self.peek().text == ";":
                    self.advance()
                continue
            if t.text == ";":
                self.advance()
                continue
            if t.text == "template" and self.peek(1).text == "<":
                self.scan_template_intro()
                continue
            if t.text in ("class", "struct") and t.kind is TokenKind.KEYWORD:
                self.scan_class()
                continue
            if t.text == "namespace" and t.kind is TokenKind.KEYWORD:
                self.scan_namespace()
                continue
            if t.text in ("enum", "union") and t.kind is TokenKind.KEYWORD:
                self.skip_enum_or_union()
                continue
            if t.text == "typedef" and t.kind is TokenKind.KEYWORD:
                self.scan_typedef()
                continue
            if t.text == "using" and t.kind is TokenKind.KEYWORD:
                self.scan_using()
                continue
            if t.text in _ACCESS_KEYWORDS and self.peek(1).text == ":":
                self.advance(2)
                continue
            if t.text == "extern" and self.peek(1).kind is TokenKind.STRING:
                self.advance(2)
                if self.peek().text == "{":
                    self.advance()
                    self.push(_Scope("block"))
                continue
            if t.text in _SKIP_STMT_KEYWORDS and t.kind is TokenKind.KEYWORD:
                self.scan_statement_generic()
                continue
            self.scan_declaration_or_expression()


def extract_sites(tokens: list[Token]) -> ScanResult:
    """Walk a token stream and collect use sites, the file's alias table,
    and classes discovered deprecated via a ``Deprecated<Self>`` base."""
    sc = _Scanner(tokens)
    sc.run()
    return ScanResult(sc.sites, sc.aliases, frozenset(sc.deprecated), sc.errors)


# -- alias resolution -------------------------------------------------------


def resolve_aliases(sites: list[UseSite], table: dict[str, AliasEntry]) -> list[UseSite]:
    """Expand alias names (transitively, depth-capped) inside each site's
    type.  Location stays at the original use; a cycle or depth overflow
    leaves the site unexpanded and attaches a note."""
    if not table:
        return list(sites)
    out: list[UseSite] = []
    for site in sites:
        expanded, used, overflow = _expand(site.type, table, 0)
        if overflow:
            name = site.type.qualified_text
            note = (
                f"alias expansion for '{name}' abandoned: cycle or chain "
                f"deeper than {ALIAS_DEPTH_LIMIT}"
            )
            if note not in site.notes:
                site = replace(site, notes=site.notes + (note,))
            out.append(site)
            continue
        if used:
            inherited = []
            for alias_name in sorted(used):
                inherited.extend(table[alias_name].comments)
            merged = site.alias_comments + tuple(
                c for c in inherited if c not in site.alias_comments
            )
            out.append(replace(site, type=expanded, alias_comments=merged))
        else:
            out.append(site)
    return out


def _expand(
    t: TypeExpr, table: dict[str, AliasEntry], depth: int
) -> tuple[TypeExpr, set[str], bool]:
    used: set[str] = set()
    hops = 0
    while not t.args and t.qualified_text in table:
        if depth + hops >= ALIAS_DEPTH_LIMIT:
            return t, used, True
        used.add(t.qualified_text)
        t = table[t.qualified_text].type
        hops += 1
        if hops > ALIAS_DEPTH_LIMIT:
            return t, used, True
    if t.args:
        new_args: list[TypeArg] = []
        changed = False
        for arg in t.args:
            if arg.expr is None:
                new_args.append(arg)
                continue
            sub, sub_used, overflow = _expand(arg.expr, table, depth + hops)
            if overflow:
                return t, used, True
            used |= sub_used
            if sub is not arg.expr:
                changed = True
                new_args.append(replace(arg, expr=sub))
            else:
                new_args.append(arg)
        if changed:
            t = replace(t, args=tuple(new_args))
    return t, used, False
