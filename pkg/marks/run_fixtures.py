#!/usr/bin/env python3
"""Compile-fixture harness for the stl_sentry marks header.

Each manifest entry names a fixture, whether it must compile, and which
substrings the captured compiler stderr must (or must not) contain.  Prints
one PASS/FAIL line per fixture; exit status 0 only when everything holds.

Usage:
    python3 run_fixtures.py [--manifest fixtures/manifest.json]
"""

from __future__ import annotations

import argparse
import json
import shutil
import subprocess
import sys
from dataclasses import dataclass
from pathlib import Path

HERE = Path(__file__).parent
INCLUDE_DIR = HERE / "include"


@dataclass
class FixtureResult:
    name: str
    ok: bool
    problems: list[str]


def load_manifest(path: Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def compiler_version(command: str) -> str:
    out = subprocess.run(
        [command, "--version"], capture_output=True, text=True, check=True
    )
    return out.stdout.splitlines()[0]


def compile_fixture(command: str, std: str, flags: list[str], source: Path) -> tuple[int, str]:
    cmd = [
        command,
        f"-std={std}",
        *flags,
        "-I",
        str(INCLUDE_DIR),
        "-c",
        str(source),
        "-o",
        "/dev/null" if sys.platform != "win32" else "NUL",
    ]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    return proc.returncode, proc.stderr


def check_fixture(entry: dict, compiler: dict, base: Path) -> FixtureResult:
    source = base / entry["file"]
    returncode, stderr = compile_fixture(
        compiler["command"], compiler["std"], compiler.get("flags", []), source
    )
    problems: list[str] = []
    compiled = returncode == 0
    if compiled != entry["expect_compile"]:
        expected = "compile" if entry["expect_compile"] else "fail to compile"
        problems.append(f"expected to {expected}, exit status {returncode}")
    for needle in entry.get("require", []):
        if needle not in stderr:
            problems.append(f"stderr is missing {needle!r}")
    for needle in entry.get("forbid", []):
        if needle in stderr:
            problems.append(f"stderr unexpectedly contains {needle!r}")
    return FixtureResult(entry["file"], not problems, problems)


def run_all(manifest_path: Path) -> int:
    manifest = load_manifest(manifest_path)
    compiler = manifest["compiler"]
    if shutil.which(compiler["command"]) is None:
        print(f"SKIP: compiler '{compiler['command']}' not found")
        return 0
    print(f"compiler: {compiler_version(compiler['command'])}")
    print(f"dialect: -std={compiler['std']} {' '.join(compiler.get('flags', []))}")
    failures = 0
    for entry in manifest["fixtures"]:
        result = check_fixture(entry, compiler, manifest_path.parent)
        status = "PASS" if result.ok else "FAIL"
        print(f"{status}: {result.name}")
        for problem in result.problems:
            print(f"      {problem}")
        failures += 0 if result.ok else 1
    print(f"{len(manifest['fixtures']) - failures}/{len(manifest['fixtures'])} fixtures passed")
    return 1 if failures else 0


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument(
        "--manifest",
        type=Path,
        default=HERE / "fixtures" / "manifest.json",
    )
    args = parser.parse_args()
    return run_all(args.manifest)


if __name__ == "__main__":
    raise SystemExit(main())
