"""Believe-me marks: programmer annotations that silence a diagnostic at one
point in the program text.

Two mechanisms exist.  A template tag — an ``I_KNOW_VECTOR_BOOL`` argument in
any position of the matched boolean vector — and a comment mark::

    // stl-sentry: believe-me(VEC_BOOL)

The comment body, after trimming, must read exactly
``stl-sentry: believe-me(<RULE_ID>)`` with RULE_ID one of VEC_BOOL or COAP;
it applies to all matches of that rule on its source line.  COAP accepts only
the comment mark (there is no tag for a hard error), and DEPRECATED accepts
neither: a deprecated class has a better replacement, so only configuration
can silence the rule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rules import RuleId, RuleMatch
from .scanner import UseSite

TAG_NAME = "I_KNOW_VECTOR_BOOL"

MECH_TEMPLATE_TAG = "template-tag"
MECH_COMMENT_MARK = "comment-mark"

_MARK_PREFIX = "stl-sentry:"
_SUPPRESSIBLE = (RuleId.VEC_BOOL.value, RuleId.COAP.value)


@dataclass(frozen=True)
class SuppressionVerdict:
    suppressed: bool
    mechanism: str | None = None  # "template-tag" | "comment-mark"
    mark_text: str | None = None


@dataclass(frozen=True)
class MarkParse:
    """Outcome of reading one comment: a valid mark, a malformed one, or an
    ordinary comment."""

    rule: str | None = None
    malformed: bool = False
    text: str = ""


NOT_SUPPRESSED = SuppressionVerdict(False)


def comment_body(comment: str) -> str:
    if comment.startswith("//"):
        return comment[2:].strip()
    if comment.startswith("/*") and comment.endswith("*/"):
        return comment[2:-2].strip()
    return comment.strip()


def parse_mark(comment: str) -> MarkParse:
    body = comment_body(comment)
    if not body.startswith(_MARK_PREFIX):
        return MarkParse()
    for rule in _SUPPRESSIBLE:
        if body == f"stl-sentry: believe-me({rule})":
            return MarkParse(rule=rule, text=comment)
    # Recognized prefix with a body outside the grammar: worth a note, the
    # author meant to suppress something.
    return MarkParse(malformed=True, text=comment)


def _has_tag(match: RuleMatch) -> bool:
    return any(
        arg.expr is not None and arg.expr.name == (TAG_NAME,)
        for arg in match.node.args
    )


def is_suppressed(match: RuleMatch, site: UseSite) -> SuppressionVerdict:
    """Decide whether ``match`` (produced for ``site``) is suppressed.

    Marks inherited from an alias's declaration line count: a mark on the
    typedef suppresses the diagnostic at every expansion of that alias.
    """
    if match.rule is RuleId.DEPRECATED:
        return NOT_SUPPRESSED
    if match.rule is RuleId.VEC_BOOL and _has_tag(match):
        return SuppressionVerdict(True, MECH_TEMPLATE_TAG, TAG_NAME)
    for comment in site.same_line_comments + site.alias_comments:
        parsed = parse_mark(comment)
        if parsed.rule == match.rule.value:
            return SuppressionVerdict(True, MECH_COMMENT_MARK, comment)
    return NOT_SUPPRESSED


def malformed_marks(site: UseSite) -> list[str]:
    """Comments on the site's line that look like marks but do not parse."""
    return [
        c
        for c in site.same_line_comments + site.alias_comments
        if parse_mark(c).malformed
    ]
