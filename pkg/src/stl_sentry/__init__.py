"""stl-sentry: a lint tool for risky C++ STL container instantiations.

Flags boolean vector instantiations, containers of auto pointers, and use of
deprecated classes, with believe-me marks (template tags and comment marks)
for intentional cases.
"""

from .config import ConfigError, RuleConfig, load_config
from .engine import (
    Diagnostic,
    Report,
    RunSummary,
    analyze_file,
    decode_json,
    exit_code,
    render_json,
    render_text,
    run_sources,
    summarize,
)
from .lexer import LexError, Token, TokenKind, tokenize
from .rules import (
    ContainerEntry,
    RuleId,
    RuleMatch,
    build_catalog,
    match_coap,
    match_deprecated,
    match_vec_bool,
    matches_for_site,
)
from .scanner import (
    AliasEntry,
    ScanResult,
    SiteKind,
    UseSite,
    extract_sites,
    resolve_aliases,
)
from .suppression import SuppressionVerdict, is_suppressed, parse_mark
from .type_parser import (
    ParseIssue,
    TypeArg,
    TypeExpr,
    TypeParseError,
    normalize,
    parse_type,
    parse_type_text,
    structurally_equal,
)

__version__ = "0.1.0"

__all__ = [
    "AliasEntry",
    "ConfigError",
    "ContainerEntry",
    "Diagnostic",
    "LexError",
    "ParseIssue",
    "Report",
    "RuleConfig",
    "RuleId",
    "RuleMatch",
    "RunSummary",
    "ScanResult",
    "SiteKind",
    "SuppressionVerdict",
    "Token",
    "TokenKind",
    "TypeArg",
    "TypeExpr",
    "TypeParseError",
    "UseSite",
    "analyze_file",
    "build_catalog",
    "decode_json",
    "exit_code",
    "extract_sites",
    "is_suppressed",
    "load_config",
    "match_coap",
    "match_deprecated",
    "match_vec_bool",
    "matches_for_site",
    "normalize",
    "parse_mark",
    "parse_type",
    "parse_type_text",
    "render_json",
    "render_text",
    "resolve_aliases",
    "run_sources",
    "structurally_equal",
    "summarize",
    "tokenize",
]
