"""Rule matching over resolved type expressions.

Three rules cover the risky constructs this tool knows about:

* ``VEC_BOOL``    — a boolean instantiation of the vector template, which is
  a packed specialization with proxy references rather than a real vector.
* ``COAP``        — a standard container instantiated with ownership-moving
  auto pointers; element copies null their source, so these are forbidden.
* ``DEPRECATED``  — use of a class marked deprecated (discovered in-file via
  the marker base class, or listed in configuration).

Matching walks the whole argument tree, so an offending container buried in
another container's arguments still fires.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterator

from .scanner import SiteKind, UseSite
from .type_parser import TypeArg, TypeExpr, normalize


class RuleId(Enum):
    VEC_BOOL = "VEC_BOOL"
    COAP = "COAP"
    DEPRECATED = "DEPRECATED"


@dataclass(frozen=True)
class RuleMatch:
    rule: RuleId
    detail: str  # argument position path, or the class name that matched
    node: TypeExpr  # the subtree that fired (suppression reads its args)
    subject: str  # normalized offender / deprecated class name, for messages
    site: UseSite | None = None


@dataclass(frozen=True)
class ContainerEntry:
    name: str  # unqualified container name
    element_positions: tuple[int, ...]
    position_labels: tuple[tuple[int, str], ...] = ()
    qualified: tuple[str, ...] = ()  # full name for config-supplied entries

    def label(self, position: int) -> str | None:
        for pos, lab in self.position_labels:
            if pos == position:
                return lab
        return None


# Element positions per standard container; allocator and comparator slots
# are deliberately absent (the nested tree walk still sees anything wrapped
# in a real container there).
DEFAULT_CATALOG: tuple[ContainerEntry, ...] = (
    ContainerEntry("vector", (0,)),
    ContainerEntry("list", (0,)),
    ContainerEntry("deque", (0,)),
    ContainerEntry("set", (0,)),
    ContainerEntry("multiset", (0,)),
    ContainerEntry("map", (0, 1), ((0, "key"), (1, "value"))),
    ContainerEntry("multimap", (0, 1), ((0, "key"), (1, "value"))),
    ContainerEntry("stack", (0,)),
    ContainerEntry("queue", (0,)),
    ContainerEntry("priority_queue", (0,)),
)


def build_catalog(cfg) -> tuple[ContainerEntry, ...]:
    extra = []
    for name, positions in getattr(cfg, "extra_containers", ()):
        parts = tuple(name.split("::"))
        extra.append(
            ContainerEntry(parts[-1], tuple(positions), qualified=parts)
        )
    return DEFAULT_CATALOG + tuple(extra)


def iter_nodes(t: TypeExpr, path: tuple[int, ...] = ()) -> Iterator[tuple[TypeExpr, tuple[int, ...]]]:
    """Pre-order walk of a type tree, yielding (node, argument-index path)."""
    yield t, path
    for i, arg in enumerate(t.args):
        if arg.expr is not None:
            yield from iter_nodes(arg.expr, path + (i,))


def path_text(path: tuple[int, ...]) -> str:
    return ", ".join(f"argument {i}" for i in path)


def _name_is(t: TypeExpr, simple: str, unqualified: bool) -> bool:
    if t.name == ("std", simple):
        return True
    return unqualified and t.name == (simple,)


def _is_plain(arg: TypeArg) -> bool:
    return arg.pointers == 0 and not arg.reference and not arg.const


def _catalog_entry(t: TypeExpr, catalog: tuple[ContainerEntry, ...], unqualified: bool) -> ContainerEntry | None:
    for entry in catalog:
        if entry.qualified:
            if t.name == entry.qualified or (unqualified and t.name == (entry.name,)):
                return entry
        elif _name_is(t, entry.name, unqualified):
            return entry
    return None


def match_vec_bool(t: TypeExpr, cfg) -> RuleMatch | None:
    """Fire when a boolean vector instantiation appears anywhere in ``t``."""
    unq = getattr(cfg, "match_unqualified", True)
    for node, path in iter_nodes(t):
        if not _name_is(node, "vector", unq) or not node.args:
            continue
        head = node.args[0]
        if head.expr is not None and head.expr.name == ("bool",) and _is_plain(head):
            return RuleMatch(RuleId.VEC_BOOL, path_text(path), node, normalize(node))
    return None


def match_coap(t: TypeExpr, catalog: tuple[ContainerEntry, ...], cfg) -> RuleMatch | None:
    """Fire when a catalog container carries auto_ptr in an element slot."""
    unq = getattr(cfg, "match_unqualified", True)
    for node, path in iter_nodes(t):
        entry = _catalog_entry(node, catalog, unq)
        if entry is None:
            continue
        for pos in entry.element_positions:
            if pos >= len(node.args):
                continue
            arg = node.args[pos]
            if (
                arg.expr is not None
                and _name_is(arg.expr, "auto_ptr", unq)
                and _is_plain(arg)
            ):
                detail = path_text(path + (pos,))
                label = entry.label(pos)
                if label:
                    detail += f" ({label})"
                return RuleMatch(RuleId.COAP, detail, node, normalize(node))
    return None


def match_deprecated(t: TypeExpr, dep: frozenset[str]) -> RuleMatch | None:
    """Fire when any name in ``t`` has its final segment in the deprecated
    set.  The class's own definition and its marker base never reach here;
    the scanner tags those sites and ``matches_for_site`` filters them."""
    if not dep:
        return None
    for node, path in iter_nodes(t):
        cls = node.name[-1]
        if cls in dep:
            detail = cls if not path else path_text(path)
            return RuleMatch(RuleId.DEPRECATED, detail, node, cls)
    return None


def matches_for_site(
    site: UseSite,
    catalog: tuple[ContainerEntry, ...],
    dep: frozenset[str],
    cfg,
) -> list[RuleMatch]:
    """All rule matches for one resolved use site, site-kind rules applied.

    Alias declarations are diagnosed at their expansions, not here; the
    ``Deprecated<Self>`` base-class site that *marks* a class is exempt from
    the DEPRECATED rule.
    """
    if site.kind is SiteKind.ALIAS_DECL:
        return []
    enabled = getattr(cfg, "enabled", frozenset(r.value for r in RuleId))
    out: list[RuleMatch] = []
    if RuleId.VEC_BOOL.value in enabled:
        m = match_vec_bool(site.type, cfg)
        if m:
            out.append(replace(m, site=site))
    if RuleId.COAP.value in enabled:
        m = match_coap(site.type, catalog, cfg)
        if m:
            out.append(replace(m, site=site))
    if RuleId.DEPRECATED.value in enabled and not site.is_deprecation_marker:
        m = match_deprecated(site.type, dep)
        if m:
            out.append(replace(m, site=site))
    return out
