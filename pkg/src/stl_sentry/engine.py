"""Per-file analysis pipeline and report rendering.

``analyze_file`` composes tokenize, site extraction, alias resolution, rule
matching, and suppression into an ordered diagnostic list.  Reports come in
two shapes: a text form (one line per diagnostic plus a counting footer) and
a versioned JSON document that round-trips losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .config import RuleConfig
from .lexer import tokenize
from .rules import RuleId, RuleMatch, build_catalog, matches_for_site
from .scanner import extract_sites, resolve_aliases
from .suppression import is_suppressed, malformed_marks
from .type_parser import ParseIssue

JSON_VERSION = 1

SEVERITY_NOTE = "note"

# Non-rule diagnostic ids (severity is always "note").
ALIAS_LIMIT_ID = "ALIAS_LIMIT"
MARK_SYNTAX_ID = "MARK_SYNTAX"

VEC_BOOL_MESSAGE = (
    "VECTOR_BOOL_IS_IN_USE: std::vector<bool> is a specialized container, "
    "not an instantiation of the primary vector template"
)


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    severity: str  # "warning" | "error" | "note"
    file: str
    line: int
    col: int
    message: str
    suppressed: bool
    mechanism: str | None
    detail: str


@dataclass(frozen=True)
class RunSummary:
    files: int
    warnings: int  # unsuppressed, severity "warning"
    errors: int  # unsuppressed, severity "error"
    suppressed: int
    parse_errors: int
    exit_code: int


@dataclass(frozen=True)
class Report:
    files: tuple[str, ...]
    diagnostics: tuple[Diagnostic, ...]
    summary: RunSummary


def _message_for(match: RuleMatch) -> str:
    if match.rule is RuleId.VEC_BOOL:
        return VEC_BOOL_MESSAGE
    if match.rule is RuleId.COAP:
        return (
            f"container of auto pointers: '{match.subject}' has incomplete "
            "type and cannot be defined"
        )
    return (
        f"DeprecatedClass: use of deprecated class '{match.subject}' "
        f"[with DEPRECATED = {match.subject}]"
    )


def analyze_file(
    source: str, cfg: RuleConfig, filename: str = "<source>"
) -> tuple[list[Diagnostic], list[ParseIssue]]:
    """Analyze one translation unit.  Nothing is thrown; lex and parse
    failures come back as issue records next to the diagnostics."""
    tokens, lex_errors = tokenize(source)
    scan = extract_sites(tokens)
    sites = resolve_aliases(scan.sites, scan.aliases)
    deprecated = scan.deprecated | frozenset(cfg.deprecated_names)
    catalog = build_catalog(cfg)

    diags: list[Diagnostic] = []
    noted_marks: set[tuple[int, str]] = set()
    for site in sites:
        for note in site.notes:
            diags.append(
                Diagnostic(
                    ALIAS_LIMIT_ID, SEVERITY_NOTE, filename, site.line, site.col,
                    note, False, None, "",
                )
            )
        matches = matches_for_site(site, catalog, deprecated, cfg)
        for match in matches:
            verdict = is_suppressed(match, site)
            diags.append(
                Diagnostic(
                    match.rule.value,
                    cfg.severity_for(match.rule.value),
                    filename,
                    site.line,
                    site.col,
                    _message_for(match),
                    verdict.suppressed,
                    verdict.mechanism,
                    match.detail,
                )
            )
        if matches:
            for bad in malformed_marks(site):
                key = (site.line, bad)
                if key in noted_marks:
                    continue
                noted_marks.add(key)
                diags.append(
                    Diagnostic(
                        MARK_SYNTAX_ID, SEVERITY_NOTE, filename, site.line,
                        site.col, f"malformed believe-me mark: {bad}", False,
                        None, "",
                    )
                )

    diags.sort(key=lambda d: (d.line, d.col, d.rule))
    issues = [ParseIssue(e.line, e.col, e.message) for e in lex_errors]
    issues.extend(scan.errors)
    return diags, issues


def exit_code(warnings: int, errors: int, deny_warnings: bool) -> int:
    """0 clean (or warnings tolerated), 1 warnings denied, 2 errors.
    Exit code 3 is reserved for usage/config/IO failures in the CLI."""
    if errors:
        return 2
    if warnings and deny_warnings:
        return 1
    return 0


def summarize(
    diags: list[Diagnostic] | tuple[Diagnostic, ...],
    parse_error_count: int,
    file_count: int,
    deny_warnings: bool,
) -> RunSummary:
    warnings = sum(1 for d in diags if not d.suppressed and d.severity == "warning")
    errors = sum(1 for d in diags if not d.suppressed and d.severity == "error")
    suppressed = sum(1 for d in diags if d.suppressed)
    return RunSummary(
        files=file_count,
        warnings=warnings,
        errors=errors,
        suppressed=suppressed,
        parse_errors=parse_error_count,
        exit_code=exit_code(warnings, errors, deny_warnings),
    )


def run_sources(
    named_sources: list[tuple[str, str]], cfg: RuleConfig
) -> Report:
    """Analyze (path, source) pairs; results merge in path-sorted order."""
    ordered = sorted(named_sources, key=lambda pair: pair[0])
    all_diags: list[Diagnostic] = []
    issue_count = 0
    files: list[str] = []
    for path, source in ordered:
        files.append(path)
        diags, issues = analyze_file(source, cfg, filename=path)
        all_diags.extend(diags)
        issue_count += len(issues)
    summary = summarize(all_diags, issue_count, len(files), cfg.deny_warnings)
    return Report(tuple(files), tuple(all_diags), summary)


# -- rendering ---------------------------------------------------------------


def render_text(
    diags: list[Diagnostic] | tuple[Diagnostic, ...],
    summary: RunSummary,
    show_suppressed: bool = False,
) -> str:
    lines = []
    for d in diags:
        if d.suppressed and not show_suppressed:
            continue
        line = f"{d.file}:{d.line}:{d.col}: {d.severity}: [{d.rule}] {d.message}"
        if d.suppressed:
            line = f"suppressed: {line} (suppressed by {d.mechanism})"
        lines.append(line)
    lines.append(
        f"{summary.files} file(s) scanned: {summary.warnings} warnings, "
        f"{summary.errors} errors, {summary.suppressed} suppressed, "
        f"{summary.parse_errors} parse errors"
    )
    return "\n".join(lines) + "\n"


def render_json(report: Report) -> str:
    """Single JSON document, stable field order, compact separators."""
    doc = {
        "version": JSON_VERSION,
        "files": list(report.files),
        "diagnostics": [
            {
                "rule": d.rule,
                "severity": d.severity,
                "file": d.file,
                "line": d.line,
                "col": d.col,
                "message": d.message,
                "suppressed": d.suppressed,
                "mechanism": d.mechanism,
                "detail": d.detail,
            }
            for d in report.diagnostics
        ],
        "summary": {
            "files": report.summary.files,
            "warnings": report.summary.warnings,
            "errors": report.summary.errors,
            "suppressed": report.summary.suppressed,
            "parse_errors": report.summary.parse_errors,
        },
    }
    return json.dumps(doc, separators=(",", ":"))


def decode_json(text: str) -> Report:
    """Inverse of :func:`render_json`; decode∘encode is the identity."""
    doc = json.loads(text)
    diags = tuple(
        Diagnostic(
            rule=d["rule"],
            severity=d["severity"],
            file=d["file"],
            line=d["line"],
            col=d["col"],
            message=d["message"],
            suppressed=d["suppressed"],
            mechanism=d["mechanism"],
            detail=d["detail"],
        )
        for d in doc["diagnostics"]
    )
    s = doc["summary"]
    warnings, errors = s["warnings"], s["errors"]
    summary = RunSummary(
        files=s["files"],
        warnings=warnings,
        errors=errors,
        suppressed=s["suppressed"],
        parse_errors=s["parse_errors"],
        exit_code=exit_code(warnings, errors, False),
    )
    return Report(tuple(doc["files"]), diags, summary)
