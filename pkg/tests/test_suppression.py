from __future__ import annotations

import random

from stl_sentry.config import RuleConfig
from stl_sentry.engine import analyze_file
from stl_sentry.rules import RuleId, matches_for_site, DEFAULT_CATALOG
from stl_sentry.scanner import SiteKind, UseSite
from stl_sentry.suppression import (
    MECH_COMMENT_MARK,
    MECH_TEMPLATE_TAG,
    is_suppressed,
    malformed_marks,
    parse_mark,
)
from stl_sentry.type_parser import parse_type_text

from oracles import generate_source_file, insert_mark

CFG = RuleConfig()


def first_match(text: str, kind=SiteKind.VARIABLE_DECL, comments=(), dep=frozenset()):
    site = UseSite(kind, parse_type_text(text), 1, 1, tuple(comments))
    matches = matches_for_site(site, DEFAULT_CATALOG, dep, CFG)
    assert matches, text
    return matches[0], site


def test_template_tag_suppresses_vec_bool_any_position():
    for text in (
        "vector<bool, I_KNOW_VECTOR_BOOL>",
        "vector<bool, I_KNOW_VECTOR_BOOL, Alloc>",
        "vector<bool, Alloc, I_KNOW_VECTOR_BOOL>",
    ):
        m, site = first_match(text)
        verdict = is_suppressed(m, site)
        assert verdict.suppressed
        assert verdict.mechanism == MECH_TEMPLATE_TAG


def test_no_marks_means_not_suppressed():
    m, site = first_match("std::vector<bool>")
    assert not is_suppressed(m, site).suppressed


def test_comment_mark_suppresses_same_line():
    m, site = first_match(
        "std::vector<bool>", comments=["// stl-sentry: believe-me(VEC_BOOL)"]
    )
    verdict = is_suppressed(m, site)
    assert verdict.suppressed
    assert verdict.mechanism == MECH_COMMENT_MARK


def test_coap_only_comment_mark():
    m, site = first_match("std::vector<std::auto_ptr<int> >")
    assert m.rule is RuleId.COAP
    assert not is_suppressed(m, site).suppressed
    # a template tag never silences COAP
    m2, site2 = first_match("std::vector<std::auto_ptr<int>, I_KNOW_VECTOR_BOOL>")
    assert not is_suppressed(m2, site2).suppressed
    m3, site3 = first_match(
        "std::vector<std::auto_ptr<int> >",
        comments=["// stl-sentry: believe-me(COAP)"],
    )
    assert is_suppressed(m3, site3).suppressed


def test_deprecated_never_suppressed():
    m, site = first_match(
        "Foo", comments=["// stl-sentry: believe-me(DEPRECATED)"], dep=frozenset({"Foo"})
    )
    assert m.rule is RuleId.DEPRECATED
    assert not is_suppressed(m, site).suppressed


def test_mark_grammar_is_bit_exact():
    assert parse_mark("// stl-sentry: believe-me(VEC_BOOL)").rule == "VEC_BOOL"
    assert parse_mark("/* stl-sentry: believe-me(COAP) */").rule == "COAP"
    assert parse_mark("//   stl-sentry: believe-me(VEC_BOOL)  ").rule == "VEC_BOOL"
    assert parse_mark("// plain comment").rule is None
    assert not parse_mark("// plain comment").malformed
    for bad in (
        "// stl-sentry: believe-me(DEPRECATED)",
        "// stl-sentry: believe-me(VECBOOL)",
        "// stl-sentry: believe me(VEC_BOOL)",
        "// stl-sentry:believe-me(VEC_BOOL)",
        "// stl-sentry: believe-me(VEC_BOOL) extra",
    ):
        parsed = parse_mark(bad)
        assert parsed.malformed, bad
        assert parsed.rule is None


def test_malformed_mark_yields_note_diagnostic():
    src = "std::vector<bool> b; // stl-sentry: believe-me(VECBOOL)\n"
    diags, _ = analyze_file(src, CFG, "x.cpp")
    assert [d.rule for d in diags] == ["MARK_SYNTAX", "VEC_BOOL"]
    note = diags[0]
    assert note.severity == "note"
    vec = diags[1]
    assert not vec.suppressed


def test_wrong_rule_mark_does_not_suppress():
    src = "std::vector<bool> b; // stl-sentry: believe-me(COAP)\n"
    diags, _ = analyze_file(src, CFG, "x.cpp")
    vec = [d for d in diags if d.rule == "VEC_BOOL"][0]
    assert not vec.suppressed


def test_locality_mark_affects_only_its_line():
    src = (
        "std::vector<bool> a; // stl-sentry: believe-me(VEC_BOOL)\n"
        "std::vector<bool> b;\n"
    )
    diags, _ = analyze_file(src, CFG, "x.cpp")
    by_line = {d.line: d.suppressed for d in diags if d.rule == "VEC_BOOL"}
    assert by_line == {1: True, 2: False}


def unsuppressed_count(diags) -> int:
    return sum(1 for d in diags if not d.suppressed and d.severity != "note")


def deprecated_set(diags):
    return sorted((d.line, d.col) for d in diags if d.rule == "DEPRECATED")


def test_monotonicity_and_deprecated_immunity():
    rng = random.Random(404)
    for _ in range(60):
        src = generate_source_file(rng)
        diags, _ = analyze_file(src, CFG, "gen.cpp")
        before = unsuppressed_count(diags)
        dep_before = deprecated_set(diags)
        targets = [d for d in diags if not d.suppressed and d.rule in ("VEC_BOOL", "COAP")]
        for target in targets:
            marked = insert_mark(src, target.line, target.rule)
            after_diags, _ = analyze_file(marked, CFG, "gen.cpp")
            assert unsuppressed_count(after_diags) <= before
            assert deprecated_set(after_diags) == dep_before
        # arbitrary insertions leave DEPRECATED alone as well
        line = rng.randint(1, src.count("\n"))
        rule = rng.choice(("VEC_BOOL", "COAP"))
        poked, _ = analyze_file(insert_mark(src, line, rule), CFG, "gen.cpp")
        assert deprecated_set(poked) == dep_before


def test_removing_marks_never_decreases_unsuppressed():
    src = (
        "std::vector<bool> a; // stl-sentry: believe-me(VEC_BOOL)\n"
        "std::vector<std::auto_ptr<int> > b; // stl-sentry: believe-me(COAP)\n"
    )
    with_marks, _ = analyze_file(src, CFG, "x.cpp")
    stripped = "\n".join(line.split(" //")[0] for line in src.split("\n"))
    without, _ = analyze_file(stripped, CFG, "x.cpp")
    assert unsuppressed_count(without) >= unsuppressed_count(with_marks)


def test_malformed_marks_helper():
    site = UseSite(
        SiteKind.VARIABLE_DECL,
        parse_type_text("std::vector<bool>"),
        1,
        1,
        ("// stl-sentry: oops", "// fine"),
    )
    assert malformed_marks(site) == ["// stl-sentry: oops"]
