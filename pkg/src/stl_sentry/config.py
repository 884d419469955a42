"""Rule configuration and JSON config-file loading.

The config document mirrors the CLI surface::

    {
      "rules": {"VEC_BOOL": {"enabled": true, "severity": "warning"}},
      "deprecated": ["Foo"],
      "containers": [{"name": "my::small_vector", "element_positions": [0]}],
      "match_unqualified": true
    }

Unknown keys are rejected; a rule can be re-weighted between "warning" and
"error" but never demoted to "note".
"""

from __future__ import annotations

import json
from dataclasses import dataclass

RULE_IDS = ("VEC_BOOL", "COAP", "DEPRECATED")
SEVERITIES = ("warning", "error")

DEFAULT_SEVERITY = {"VEC_BOOL": "warning", "COAP": "error", "DEPRECATED": "warning"}


class ConfigError(Exception):
    """Unreadable or malformed configuration; the message names the key."""


@dataclass(frozen=True)
class RuleConfig:
    enabled: frozenset[str] = frozenset(RULE_IDS)
    severity_overrides: tuple[tuple[str, str], ...] = ()
    deprecated_names: tuple[str, ...] = ()
    extra_containers: tuple[tuple[str, tuple[int, ...]], ...] = ()
    match_unqualified: bool = True
    show_suppressed: bool = False
    deny_warnings: bool = False

    def severity_for(self, rule: str) -> str:
        for name, sev in self.severity_overrides:
            if name == rule:
                return sev
        return DEFAULT_SEVERITY[rule]


def _require_keys(obj: dict, allowed: tuple[str, ...], where: str) -> None:
    for key in obj:
        if key not in allowed:
            raise ConfigError(f"unknown key '{key}' in {where}")


def parse_config_document(doc: object) -> RuleConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a JSON object")
    _require_keys(doc, ("rules", "deprecated", "containers", "match_unqualified"), "config")

    enabled = set(RULE_IDS)
    overrides: list[tuple[str, str]] = []
    rules = doc.get("rules", {})
    if not isinstance(rules, dict):
        raise ConfigError("'rules' must be an object")
    for rule, body in rules.items():
        if rule not in RULE_IDS:
            raise ConfigError(f"unknown rule '{rule}' in 'rules'")
        if not isinstance(body, dict):
            raise ConfigError(f"'rules.{rule}' must be an object")
        _require_keys(body, ("enabled", "severity"), f"rules.{rule}")
        if "enabled" in body:
            if not isinstance(body["enabled"], bool):
                raise ConfigError(f"'rules.{rule}.enabled' must be a boolean")
            if not body["enabled"]:
                enabled.discard(rule)
        if "severity" in body:
            sev = body["severity"]
            if sev not in SEVERITIES:
                raise ConfigError(
                    f"'rules.{rule}.severity' must be one of {'/'.join(SEVERITIES)}, "
                    f"got '{sev}'"
                )
            overrides.append((rule, sev))

    deprecated = doc.get("deprecated", [])
    if not isinstance(deprecated, list) or not all(
        isinstance(n, str) and n for n in deprecated
    ):
        raise ConfigError("'deprecated' must be a list of class names")

    containers: list[tuple[str, tuple[int, ...]]] = []
    raw_containers = doc.get("containers", [])
    if not isinstance(raw_containers, list):
        raise ConfigError("'containers' must be a list")
    for idx, entry in enumerate(raw_containers):
        if not isinstance(entry, dict):
            raise ConfigError(f"'containers[{idx}]' must be an object")
        _require_keys(entry, ("name", "element_positions"), f"containers[{idx}]")
        name = entry.get("name")
        positions = entry.get("element_positions")
        if not isinstance(name, str) or not name:
            raise ConfigError(f"'containers[{idx}].name' must be a non-empty string")
        if (
            not isinstance(positions, list)
            or not positions
            or not all(isinstance(p, int) and not isinstance(p, bool) and p >= 0 for p in positions)
        ):
            raise ConfigError(
                f"'containers[{idx}].element_positions' must be a non-empty "
                "list of non-negative integers"
            )
        containers.append((name, tuple(positions)))

    unqualified = doc.get("match_unqualified", True)
    if not isinstance(unqualified, bool):
        raise ConfigError("'match_unqualified' must be a boolean")

    return RuleConfig(
        enabled=frozenset(enabled),
        severity_overrides=tuple(overrides),
        deprecated_names=tuple(deprecated),
        extra_containers=tuple(containers),
        match_unqualified=unqualified,
    )


def load_config(path: str) -> RuleConfig:
    """Read and validate a JSON config file."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config '{path}': {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"malformed JSON in '{path}' at line {exc.lineno}, column {exc.colno}"
        ) from exc
    return parse_config_document(doc)
