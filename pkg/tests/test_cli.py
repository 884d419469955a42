from __future__ import annotations

import json
import os

import pytest

from stl_sentry.cli import UsageError, collect_files, main, parse_args
from stl_sentry.config import ConfigError, RuleConfig, load_config, parse_config_document

from conftest import FIXTURES


def test_single_path_default_config():
    parsed = parse_args(["a.cpp"])
    assert parsed.paths == ("a.cpp",)
    assert parsed.config == RuleConfig()
    assert parsed.output_format == "text"


def test_json_format_and_directory():
    parsed = parse_args(["--format", "json", "src/"])
    assert parsed.output_format == "json"
    assert parsed.paths == ("src/",)


def test_unknown_format_is_usage_error():
    with pytest.raises(UsageError):
        parse_args(["--format", "yaml", "a.cpp"])


def test_unknown_flag_and_missing_value():
    with pytest.raises(UsageError):
        parse_args(["--wat", "a.cpp"])
    with pytest.raises(UsageError):
        parse_args(["--config"])


def test_no_inputs_is_usage_error():
    with pytest.raises(UsageError):
        parse_args([])


def test_flag_switches():
    parsed = parse_args(["--deny-warnings", "--show-suppressed", "--no-unqualified", "a.cpp"])
    assert parsed.config.deny_warnings
    assert parsed.config.show_suppressed
    assert not parsed.config.match_unqualified


# -- config file --------------------------------------------------------------


def test_config_deprecated_seed(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text('{"deprecated": ["Foo"]}')
    cfg = load_config(str(path))
    assert cfg.deprecated_names == ("Foo",)


def test_config_empty_is_defaults(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text("{}")
    assert load_config(str(path)) == RuleConfig()


def test_config_severity_note_is_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config_document({"rules": {"COAP": {"severity": "note"}}})
    assert "severity" in str(exc.value)


def test_config_unknown_keys_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config_document({"extra": 1})
    assert "'extra'" in str(exc.value)
    with pytest.raises(ConfigError):
        parse_config_document({"rules": {"NOPE": {}}})
    with pytest.raises(ConfigError):
        parse_config_document({"containers": [{"name": "x"}]})
    with pytest.raises(ConfigError):
        parse_config_document({"containers": [{"name": "x", "element_positions": [-1]}]})


def test_config_full_document():
    cfg = parse_config_document(
        {
            "rules": {"VEC_BOOL": {"enabled": False}, "COAP": {"severity": "error"}},
            "deprecated": ["Foo", "Bar"],
            "containers": [{"name": "my::small_vector", "element_positions": [0]}],
            "match_unqualified": False,
        }
    )
    assert "VEC_BOOL" not in cfg.enabled
    assert cfg.extra_containers == (("my::small_vector", (0,)),)
    assert not cfg.match_unqualified


def test_malformed_config_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    with pytest.raises(ConfigError) as exc:
        load_config(str(path))
    assert "line 1" in str(exc.value)


def test_missing_config_file():
    with pytest.raises(ConfigError):
        load_config("/does/not/exist.json")


def test_env_var_names_default_config(tmp_path, monkeypatch):
    path = tmp_path / "cfg.json"
    path.write_text('{"match_unqualified": false}')
    monkeypatch.setenv("STL_SENTRY_CONFIG", str(path))
    parsed = parse_args(["a.cpp"])
    assert not parsed.config.match_unqualified


def test_cli_flag_overrides_config_value(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text('{"match_unqualified": true}')
    parsed = parse_args(["--config", str(path), "--no-unqualified", "a.cpp"])
    assert not parsed.config.match_unqualified
    parsed = parse_args(["--config", str(path), "a.cpp"])
    assert parsed.config.match_unqualified


# -- file collection ----------------------------------------------------------


def test_directory_recursion_and_extensions(tmp_path):
    (tmp_path / "sub").mkdir()
    (tmp_path / "a.cpp").write_text("int a;")
    (tmp_path / "sub" / "b.hpp").write_text("int b;")
    (tmp_path / "sub" / "c.txt").write_text("not source")
    files = collect_files((str(tmp_path),))
    names = [os.path.basename(f) for f in files]
    assert names == ["a.cpp", "b.hpp"]


def test_symlinked_directories_followed_one_level(tmp_path):
    real = tmp_path / "real"
    real.mkdir()
    (real / "x.cpp").write_text("int x;")
    deeper = real / "deeper"
    deeper.mkdir()
    (deeper / "y.cpp").write_text("int y;")
    scanned = tmp_path / "scanned"
    scanned.mkdir()
    (scanned / "link").symlink_to(real, target_is_directory=True)
    files = collect_files((str(scanned),))
    names = sorted(os.path.basename(f) for f in files)
    # one hop through the symlink is followed; its real subdirectory too
    assert names == ["x.cpp", "y.cpp"]
    # a symlink inside a symlinked tree is not followed
    (real / "loop").symlink_to(tmp_path / "scanned", target_is_directory=True)
    files = collect_files((str(scanned),))
    assert sorted(os.path.basename(f) for f in files) == ["x.cpp", "y.cpp"]


def test_missing_path_is_usage_error():
    with pytest.raises(UsageError):
        collect_files(("/definitely/not/here.cpp",))


# -- end-to-end exit codes ----------------------------------------------------


def test_exit_codes_on_fixtures(capsys):
    clean = str(FIXTURES / "vector_int_ok.cpp")
    warn = str(FIXTURES / "vector_bool_usage.cpp")
    err = str(FIXTURES / "coap_sort.cpp")
    assert main([clean]) == 0
    assert main([warn]) == 0
    assert main(["--deny-warnings", warn]) == 1
    assert main([err]) == 2
    assert main(["--format", "yaml", warn]) == 3
    capsys.readouterr()


def test_main_json_output(capsys):
    warn = str(FIXTURES / "vector_bool_usage.cpp")
    code = main(["--format", "json", warn])
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert code == 0
    assert doc["summary"]["warnings"] == 1
    assert doc["diagnostics"][0]["rule"] == "VEC_BOOL"


def test_main_show_suppressed(capsys):
    marked = str(FIXTURES / "marked_vector.cpp")
    assert main([marked]) == 0
    out = capsys.readouterr().out
    assert "suppressed:" not in out
    assert main(["--show-suppressed", marked]) == 0
    out = capsys.readouterr().out
    assert out.count("suppressed:") == 2


def test_list_rules(capsys):
    assert main(["--list-rules"]) == 0
    out = capsys.readouterr().out
    for rule in ("VEC_BOOL", "COAP", "DEPRECATED"):
        assert rule in out


def test_config_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rules": {"COAP": {"severity": "note"}}}')
    warn = str(FIXTURES / "vector_bool_usage.cpp")
    assert main(["--config", str(bad), warn]) == 3
    assert "severity" in capsys.readouterr().err
