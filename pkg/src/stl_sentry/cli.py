"""Command-line entry point.

Usage::

    stl-sentry [--format text|json] [--config cfg.json] [--deny-warnings]
               [--show-suppressed] [--no-unqualified] [--list-rules]
               <files-or-directories>...

Directories recurse over C++ sources (*.cpp, *.cc, *.cxx, *.h, *.hpp).
Exit codes: 0 clean, 1 warnings under --deny-warnings, 2 errors, 3 for
usage/config/IO failures.  STL_SENTRY_CONFIG names a default config file
when --config is absent.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, replace

from .config import DEFAULT_SEVERITY, RULE_IDS, ConfigError, RuleConfig, load_config
from .engine import Report, render_json, render_text, run_sources

SOURCE_EXTENSIONS = (".cpp", ".cc", ".cxx", ".h", ".hpp")
CONFIG_ENV_VAR = "STL_SENTRY_CONFIG"

_RULE_BLURBS = {
    "VEC_BOOL": "boolean vector instantiation (packed specialization, proxy references)",
    "COAP": "standard container of auto pointers (copies null their source)",
    "DEPRECATED": "use of a class marked deprecated (marker base or config list)",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


@dataclass(frozen=True)
class ParsedCli:
    config: RuleConfig
    paths: tuple[str, ...]
    output_format: str
    list_rules: bool


def _build_parser() -> _Parser:
    parser = _Parser(prog="stl-sentry", add_help=True)
    parser.add_argument("paths", nargs="*", metavar="PATH",
                        help="source files or directories to scan")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--config", metavar="FILE", default=None)
    parser.add_argument("--deny-warnings", action="store_true")
    parser.add_argument("--show-suppressed", action="store_true")
    parser.add_argument("--list-rules", action="store_true")
    parser.add_argument("--no-unqualified", action="store_true",
                        help="match only std::-qualified container names")
    return parser


def parse_args(argv: list[str]) -> ParsedCli:
    """Parse flags and assemble the effective RuleConfig (flags override
    config-file values).  Raises UsageError or ConfigError; both exit 3."""
    ns = _build_parser().parse_args(argv)

    config_path = ns.config or os.environ.get(CONFIG_ENV_VAR)
    cfg = load_config(config_path) if config_path else RuleConfig()

    if ns.no_unqualified:
        cfg = replace(cfg, match_unqualified=False)
    if ns.show_suppressed:
        cfg = replace(cfg, show_suppressed=True)
    if ns.deny_warnings:
        cfg = replace(cfg, deny_warnings=True)

    if not ns.paths and not ns.list_rules:
        raise UsageError("no input files or directories given")
    return ParsedCli(cfg, tuple(ns.paths), ns.format, ns.list_rules)


def _walk_directory(root: str, symlink_hops: int = 0) -> list[str]:
    found: list[str] = []
    try:
        entries = sorted(os.scandir(root), key=lambda e: e.name)
    except OSError as exc:
        raise UsageError(f"cannot read directory '{root}': {exc.strerror}")
    for entry in entries:
        if entry.is_dir(follow_symlinks=True):
            hops = symlink_hops + (1 if entry.is_symlink() else 0)
            if hops <= 1:  # follow symlinked directories one level deep
                found.extend(_walk_directory(entry.path, hops))
        elif entry.name.endswith(SOURCE_EXTENSIONS):
            found.append(entry.path)
    return found


def collect_files(paths: tuple[str, ...]) -> list[str]:
    files: list[str] = []
    for path in paths:
        if os.path.isdir(path):
            files.extend(_walk_directory(path))
        elif os.path.isfile(path):
            files.append(path)
        else:
            raise UsageError(f"no such file or directory: '{path}'")
    seen: set[str] = set()
    unique = [f for f in sorted(files) if not (f in seen or seen.add(f))]
    return unique


def _print_rules() -> None:
    for rule in RULE_IDS:
        print(f"{rule:<12} {DEFAULT_SEVERITY[rule]:<8} {_RULE_BLURBS[rule]}")


def run(paths: tuple[str, ...], cfg: RuleConfig) -> Report:
    files = collect_files(paths)
    named: list[tuple[str, str]] = []
    for path in files:
        try:
            with open(path, encoding="utf-8", errors="replace") as fh:
                named.append((path, fh.read()))
        except OSError as exc:
            raise UsageError(f"cannot read '{path}': {exc.strerror}")
    return run_sources(named, cfg)


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        parsed = parse_args(argv)
        if parsed.list_rules:
            _print_rules()
            return 0
        report = run(parsed.paths, parsed.config)
    except (UsageError, ConfigError) as exc:
        print(f"stl-sentry: error: {exc}", file=sys.stderr)
        return 3

    if parsed.output_format == "json":
        sys.stdout.write(render_json(report) + "\n")
    else:
        sys.stdout.write(
            render_text(
                report.diagnostics,
                report.summary,
                show_suppressed=parsed.config.show_suppressed,
            )
        )
    return report.summary.exit_code


def cli_entry() -> None:
    raise SystemExit(main())
