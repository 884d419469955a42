"""Secondary-component gate: every manifest fixture holds on the pinned
compiler, and the linter CLI agrees with the compile-time behavior."""

from __future__ import annotations

import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

MARKS_DIR = Path(__file__).parent.parent
FIXTURES = MARKS_DIR / "fixtures"

sys.path.insert(0, str(MARKS_DIR))

from run_fixtures import check_fixture, load_manifest  # noqa: E402

MANIFEST = load_manifest(FIXTURES / "manifest.json")

needs_compiler = pytest.mark.skipif(
    shutil.which(MANIFEST["compiler"]["command"]) is None,
    reason="pinned compiler not installed",
)


@needs_compiler
@pytest.mark.parametrize("entry", MANIFEST["fixtures"], ids=lambda e: e["file"])
def test_fixture(entry):
    result = check_fixture(entry, MANIFEST["compiler"], FIXTURES)
    assert result.ok, "; ".join(result.problems)


@needs_compiler
def test_harness_cli_is_green():
    proc = subprocess.run(
        [sys.executable, str(MARKS_DIR / "run_fixtures.py")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "FAIL" not in proc.stdout


def lint_json(*args: str) -> tuple[int, dict]:
    proc = subprocess.run(
        [sys.executable, "-m", "stl_sentry", "--format", "json", *args],
        capture_output=True,
        text=True,
    )
    return proc.returncode, json.loads(proc.stdout)


def test_linter_agrees_with_the_header_fixtures():
    """The same sources that drive the compile-time checks are what the
    linter diagnoses statically; run it over the fixture corpus."""
    code, doc = lint_json(str(FIXTURES))
    by_file: dict[str, list[dict]] = {}
    for d in doc["diagnostics"]:
        by_file.setdefault(Path(d["file"]).name, []).append(d)

    unmarked = by_file["vec_bool_unmarked.cpp"]
    assert [d["rule"] for d in unmarked] == ["VEC_BOOL"]
    assert not unmarked[0]["suppressed"]

    marked = by_file["vec_bool_marked.cpp"]
    assert [d["rule"] for d in marked] == ["VEC_BOOL", "VEC_BOOL"]
    assert all(d["suppressed"] and d["mechanism"] == "template-tag" for d in marked)

    blocked = by_file["coap_blocked.cpp"]
    assert [(d["rule"], d["severity"]) for d in blocked] == [("COAP", "error")]

    deprecated = by_file["deprecated_use.cpp"]
    assert [(d["rule"], d["severity"]) for d in deprecated] == [("DEPRECATED", "warning")]

    assert "vec_bool_int_ok.cpp" not in by_file
    assert "coap_reference_param_ok.cpp" not in by_file

    assert doc["summary"]["errors"] == 1
    assert doc["summary"]["warnings"] == 2
    assert doc["summary"]["suppressed"] == 2
    assert code == 2
